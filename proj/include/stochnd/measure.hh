#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stochnd/rational.hh"
#include "stochnd/space.hh"

namespace stochnd {

/// Exact subprobability measure, stored as one mass per atom.
class SubProb {
  public:
    /// Throws InvalidMeasure on negative masses or total mass above 1,
    /// SpaceMismatch when the vector length differs from the atom count.
    SubProb(Space space, std::vector<Rational> atom_mass);

    static SubProb zero(const Space& space);
    /// Point mass on the atom holding `s`.
    static SubProb point(const Space& space, StateId s);
    /// Sums per-state masses into atoms.
    static SubProb from_states(const Space& space,
                               const std::vector<std::pair<StateId, Rational>>& masses);

    const Space& space() const { return space_; }
    const Rational& mass(AtomId a) const { return mass_.at(a); }
    const std::vector<Rational>& masses() const { return mass_; }
    Rational total() const;

    friend bool operator==(const SubProb& a, const SubProb& b) {
        return a.mass_ == b.mass_ && a.space_ == b.space_;
    }
    friend bool operator!=(const SubProb& a, const SubProb& b) { return !(a == b); }
    /// Lexicographic on atom masses. Only meaningful within one space.
    friend bool operator<(const SubProb& a, const SubProb& b) { return a.mass_ < b.mass_; }

  private:
    Space space_;
    std::vector<Rational> mass_;
};

/// μ(set). Throws NotMeasurableSet unless the set is a union of atoms.
Rational evaluate(const SubProb& mu, const StateSet& set);

/// (𝔖f)(μ), the image measure. Throws SpaceMismatch.
SubProb pushforward(const MeasurableMap& f, const SubProb& mu);

/// Restriction of μ to a coarser σ-algebra on the same carrier.
/// Throws IncompatiblePartition.
SubProb restrict(const SubProb& mu, const Space& coarser);

/// μ ≡_R ν: equal mass on every block of sigma_r(rel).
bool agree_mod(const Relation& rel, const SubProb& mu, const SubProb& nu);

/// The measure on preimage_space(f) whose pushforward along f is ν.
/// Throws NotSurjective.
SubProb invariant_measure_transport(const MeasurableMap& f, const SubProb& nu);

/// The set (𝔖f)⁻¹[{ν}] is empty, a single measure, or infinite.
enum class PreimageKind { Empty, Unique, Infinite };

struct Preimage {
    PreimageKind kind;
    std::optional<SubProb> measure;  // set iff kind == Unique
};

/// Empty when ν charges an atom outside the image of f; infinite when it
/// charges an atom whose fiber holds two or more domain atoms.
Preimage measure_preimage(const MeasurableMap& f, const SubProb& nu);

}  // namespace stochnd
