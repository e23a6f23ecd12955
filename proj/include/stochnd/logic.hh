/** @file logic.hh
 *  @brief Semantics of the two-level logic over effectivity functions,
 *         logical equivalence and distinguishing formulas.
 *
 *  s ⊨ <>ψ  iff some generator of p(s) consists of measures satisfying ψ;
 *  s ⊨ []ψ  iff every generator of p(s) has a member satisfying ψ;
 *  μ ⊨ [φ ⋈ q] iff μ(⟦φ⟧) ⋈ q.
 */
#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "stochnd/effectivity.hh"
#include "stochnd/formula.hh"

namespace stochnd {

/// ⟦φ⟧, always a union of atoms.
StateSet eval_state(const EffFn& p, const StateFormula& f);
bool eval_measure(const EffFn& p, const MeasureFormula& g, const SubProb& mu);

/// One stage of the refinement behind logical_equivalence.
struct RefinementLevel {
    /// Blocks of the σ-algebra generated by the family.
    Partition blocks;
    /// Conjunction-closed formulas with pairwise distinct extensions,
    /// starting with T.
    std::vector<std::pair<StateFormula, StateSet>> family;
};

/// Levels until the partition is stable; the last one is the fixpoint.
std::vector<RefinementLevel> logical_equivalence_trace(const EffFn& p);

Relation logical_equivalence(const EffFn& p);

struct Equivalent {};

struct Distinction {
    StateFormula formula;
    /// The one state of the pair that satisfies the formula.
    StateId satisfied_by;
};

/// Throws InternalInvariantViolation if a synthesized formula fails to
/// split the pair it was built for.
std::variant<Equivalent, Distinction> distinguish(const EffFn& p, StateId s, StateId t);

}  // namespace stochnd
