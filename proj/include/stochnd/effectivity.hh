/** @file effectivity.hh
 *  @brief Finitary stochastic effectivity functions.
 *
 *  An EffFn assigns every state an UpperSet of measure sets over its own
 *  space: the sets of outcomes Angel can force from that state. Values
 *  are constant on atoms, which is what measurability amounts to on a
 *  finite space.
 */
#pragma once

#include <vector>

#include "stochnd/upperset.hh"

namespace stochnd {

class EffFn {
  public:
    /// One portfolio per state. Throws SpaceMismatch on foreign upper sets,
    /// NotMeasurable if two states of one atom get different portfolios.
    EffFn(Space space, std::vector<UpperSet> portfolio);

    const Space& space() const { return space_; }
    const UpperSet& operator()(StateId s) const { return portfolio_.at(s); }
    const std::vector<UpperSet>& portfolio() const { return portfolio_; }

    /// Every portfolio has exactly one generator.
    bool is_finitely_supported() const;

    friend bool operator==(const EffFn& a, const EffFn& b) {
        return a.space_ == b.space_ && a.portfolio_ == b.portfolio_;
    }

  private:
    Space space_;
    std::vector<UpperSet> portfolio_;
};

/// For every (s,t) in rel and every generator G of p(s) some generator H of
/// p(t) has each of its members agreeing mod rel with a member of G.
/// Throws NonSymmetricRelation, SpaceMismatch.
bool is_ef_state_bisim(const EffFn& p, const Relation& rel);

/// Largest state bisimulation, computed by partition refinement.
Relation greatest_ef_bisim(const EffFn& p);

/// q(f(s)) is the upper closure of the pushed generators of p(s).
/// Throws SpaceMismatch.
bool is_ef_morphism(const MeasurableMap& f, const EffFn& p, const EffFn& q);

/// p(s) is the upper closure of the preimages of the generators of
/// q(f(s)). Throws NotSurjective, SpaceMismatch.
bool is_strong_morphism(const MeasurableMap& f, const EffFn& p, const EffFn& q);

/// The space of equivalence classes of alpha. States are named "{a,b}"
/// after their members; atoms are the images of the unions of classes
/// that atoms of the base space force together.
/// Throws NotAnEquivalence.
MeasurableMap quotient_map(const Relation& alpha);

struct Quotient {
    EffFn system;
    MeasurableMap eta;
};

/// Throws CongruenceError naming two representatives of one class whose
/// pushed portfolios differ, NotAnEquivalence.
Quotient quotient(const EffFn& p, const Relation& alpha);

/// s ↦ the generators of p(s) restricted to the coarser σ-algebra.
std::vector<UpperSet> restricted_portfolio(const EffFn& p, const Space& coarser);

/// The restricted portfolio is constant on every coarser atom.
/// Throws IncompatiblePartition.
bool is_subsystem(const EffFn& p, const Space& coarser);

/// P_𝒞 on the coarser space. Throws IncompatiblePartition, also when the
/// coarser space is not a subsystem.
EffFn subsystem(const EffFn& p, const Space& coarser);

EffFn dual_ef(const EffFn& p);

struct EffSum {
    EffFn system;
    DirectSum sum;
};

/// Both portfolios embedded into the direct sum space.
EffSum sum_ef(const EffFn& p, const EffFn& q);

/// s ↦ 𝔉{k(s)}. Throws SpaceMismatch.
EffFn from_markov_kernel(const Space& space, const std::vector<SubProb>& k);

}  // namespace stochnd
