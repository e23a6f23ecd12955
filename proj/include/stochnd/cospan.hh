/** @file cospan.hh
 *  @brief Behavioural equivalence through a mediating effectivity
 *         function, and the span of bisimilarity built from it.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stochnd/effectivity.hh"

namespace stochnd {

/// P --f--> M <--g-- Q
struct Cospan {
    EffFn p;
    EffFn q;
    EffFn m;
    MeasurableMap f;
    MeasurableMap g;
};

enum class CospanIssueKind { NotSurjective, MorphismViolation, NotFinitelySupported, SupportMismatch };

std::string_view issue_name(CospanIssueKind kind);

struct CospanIssue {
    CospanIssueKind kind;
    /// "f", "g" or "m".
    std::string leg;
    /// Offending state, named in the space the leg refers to.
    std::string state;
    /// For SupportMismatch, the partner state in q.
    std::optional<std::string> partner;
};

struct CospanReport {
    std::vector<CospanIssue> issues;
    bool valid() const { return issues.empty(); }
};

/// Checks both legs for surjectivity and the morphism property. When p and
/// q are finitely supported it also checks that m is, and that matched
/// states push their supports to the same set. Throws SpaceMismatch when
/// the legs do not fit the systems.
CospanReport verify_cospan(const Cospan& c);

struct SpanResult {
    /// Pairs (s,t) with f(s) = g(t), named "(s,t)"; one atom per atom of U.
    Space w;
    EffFn tau;
    /// p restricted to Σ_f, the preimages of the atoms of U.
    EffFn p_f;
    EffFn q_g;
    MeasurableMap pi_s;  // W -> (S, Σ_f)
    MeasurableMap pi_t;  // W -> (T, Σ_g)
};

/// Throws NotFinitelySupported, Error(InvalidModel) carrying the first
/// issue when verify_cospan fails, InternalInvariantViolation if one of
/// the projection squares does not commute.
SpanResult build_span(const Cospan& c);

/// K_n(s) runs through the support of p(s), repeating cyclically at states
/// with smaller supports; n ranges up to the largest support.
/// Throws NotFinitelySupported, EmptySupport.
std::vector<std::vector<SubProb>> support_relations(const EffFn& p);

}  // namespace stochnd
