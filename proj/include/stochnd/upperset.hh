/** @file upperset.hh
 *  @brief Finite sets of measures and finitary upper-closed families.
 *
 *  An UpperSet stands for the family of all measurable sets of measures
 *  that contain at least one generator. Generators are kept as a
 *  canonical antichain under inclusion, so two UpperSets denote the same
 *  family iff their generator lists are identical. Two degenerate values
 *  matter: no generators at all is the empty family, and the single
 *  empty generator is the family of every set.
 */
#pragma once

#include <vector>

#include "stochnd/measure.hh"

namespace stochnd {

class MeasureSet {
  public:
    explicit MeasureSet(Space space) : space_(std::move(space)) {}
    /// Sorts and deduplicates; throws SpaceMismatch on foreign members.
    MeasureSet(Space space, std::vector<SubProb> members);

    const Space& space() const { return space_; }
    const std::vector<SubProb>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(const SubProb& mu) const;
    /// other ⊆ *this
    bool includes(const MeasureSet& other) const;
    /// Nonempty intersection.
    bool hits(const MeasureSet& other) const;
    MeasureSet with(const SubProb& mu) const;
    MeasureSet unite(const MeasureSet& other) const;

    friend bool operator==(const MeasureSet& a, const MeasureSet& b) {
        return a.members_ == b.members_ && a.space_ == b.space_;
    }
    friend bool operator<(const MeasureSet& a, const MeasureSet& b) {
        return a.members_ < b.members_;
    }

  private:
    Space space_;
    std::vector<SubProb> members_;
};

/// Image of a measure set under 𝔖f.
MeasureSet push_set(const MeasurableMap& f, const MeasureSet& set);
/// Pointwise restriction to a coarser σ-algebra.
MeasureSet restrict_set(const MeasureSet& set, const Space& coarser);

class UpperSet {
  public:
    static UpperSet empty(const Space& space) { return UpperSet(space, {}); }
    static UpperSet full(const Space& space) { return UpperSet(space, {MeasureSet(space)}); }

    const Space& space() const { return space_; }
    const std::vector<MeasureSet>& generators() const { return gens_; }
    bool is_empty() const { return gens_.empty(); }
    bool is_full() const { return gens_.size() == 1 && gens_.front().empty(); }

    friend UpperSet canonicalize(const Space& space, std::vector<MeasureSet> gens);
    friend bool operator==(const UpperSet& a, const UpperSet& b) {
        return a.gens_ == b.gens_ && a.space_ == b.space_;
    }

  private:
    UpperSet(Space space, std::vector<MeasureSet> gens)
        : space_(std::move(space)), gens_(std::move(gens)) {}

    Space space_;
    std::vector<MeasureSet> gens_;
};

/// Drops duplicates and any generator that contains another one; orders
/// the survivors. Throws SpaceMismatch.
UpperSet canonicalize(const Space& space, std::vector<MeasureSet> gens);

/// 𝔉W = {U : W ⊆ U}
UpperSet filter_of(const MeasureSet& w);

bool contains(const UpperSet& u, const MeasureSet& a);

UpperSet unite(const UpperSet& u, const UpperSet& v);
UpperSet intersect(const UpperSet& u, const UpperSet& v);

/// ∂u = {D : Dᶜ ∉ u}; generated by the minimal hitting sets of u's
/// generators.
UpperSet dual(const UpperSet& u);

bool equals(const UpperSet& u, const UpperSet& v);

/// Canonical antichain of the pushed generators.
UpperSet push_upper(const MeasurableMap& f, const UpperSet& u);
/// Canonical antichain of the restricted generators.
UpperSet restrict_upper(const UpperSet& u, const Space& coarser);

}  // namespace stochnd
