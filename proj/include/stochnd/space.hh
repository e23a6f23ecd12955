/** @file space.hh
 *  @brief Finite measurable spaces, measurable maps and binary relations.
 *
 *  A finite σ-algebra is atomic, so a Space stores it as the partition of
 *  its carrier into atoms. States are addressed by their index in the
 *  carrier order; names are only used for input and output. Every
 *  canonical form in the library (sorted blocks, sorted pairs, ordered
 *  measure sets) is expressed in terms of these indices.
 */
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stochnd {

using StateId = std::size_t;
using AtomId = std::size_t;
using Block = std::vector<StateId>;
using Partition = std::vector<Block>;
/// Membership mask over the carrier of a space.
using StateSet = std::vector<bool>;

/// Sorts every block and orders blocks by their smallest element.
Partition canonical_partition(Partition blocks);

class Space {
  public:
    /// One singleton atom per state.
    static Space discrete(std::vector<std::string> states);
    /// Throws InvalidPartition unless `atoms` covers the carrier exactly
    /// with nonempty, pairwise disjoint blocks.
    static Space with_atoms(std::vector<std::string> states, Partition atoms);

    std::size_t size() const { return data_->states.size(); }
    std::size_t atom_count() const { return data_->atoms.size(); }
    const std::vector<std::string>& states() const { return data_->states; }
    const std::string& name(StateId s) const { return data_->states.at(s); }
    std::optional<StateId> find(std::string_view name) const;
    /// Throws ForeignState for unknown names.
    StateId index(std::string_view name) const;

    const Partition& atoms() const { return data_->atoms; }
    const Block& atom(AtomId a) const { return data_->atoms.at(a); }
    AtomId atom_of(StateId s) const { return data_->atom_of.at(s); }
    bool is_discrete() const { return atom_count() == size(); }

    bool same_carrier(const Space& other) const;
    /// True iff `coarser` has this carrier and each of its atoms is a union
    /// of atoms of this space.
    bool refined_by_this(const Space& coarser) const;
    /// Same carrier, new atoms (validated as in with_atoms).
    Space coarsen(Partition atoms) const;

    /// True iff the set is a union of atoms.
    bool is_measurable(const StateSet& set) const;
    StateSet full_set() const { return StateSet(size(), true); }

    friend bool operator==(const Space& a, const Space& b);

  private:
    struct Data {
        std::vector<std::string> states;
        Partition atoms;
        std::vector<AtomId> atom_of;
    };
    explicit Space(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

    std::shared_ptr<const Data> data_;
};

/// Throws SpaceMismatch when the spaces differ.
void require_same_space(const Space& a, const Space& b, std::string_view what);

class MeasurableMap {
  public:
    /// Throws NotMeasurable if the preimage of some codomain atom is not a
    /// union of domain atoms, ForeignState on an out-of-range target.
    MeasurableMap(Space domain, Space codomain, std::vector<StateId> assignment);

    static MeasurableMap identity(const Space& space);

    const Space& domain() const { return domain_; }
    const Space& codomain() const { return codomain_; }
    StateId operator()(StateId s) const { return assignment_.at(s); }
    const std::vector<StateId>& assignment() const { return assignment_; }
    /// Every domain atom lands inside exactly one codomain atom.
    AtomId image_atom(AtomId domain_atom) const { return atom_image_.at(domain_atom); }

    bool is_surjective() const;
    /// Domain atoms whose image lies in the given codomain atom.
    std::vector<AtomId> atom_fiber(AtomId codomain_atom) const;

    friend bool operator==(const MeasurableMap& a, const MeasurableMap& b);

  private:
    Space domain_;
    Space codomain_;
    std::vector<StateId> assignment_;
    std::vector<AtomId> atom_image_;
};

/// g ∘ f
MeasurableMap compose(const MeasurableMap& g, const MeasurableMap& f);

class Relation {
  public:
    using Pair = std::pair<StateId, StateId>;

    /// Throws ForeignState if a pair leaves the carrier.
    Relation(Space base, std::vector<Pair> pairs);

    static Relation empty(const Space& base) { return Relation(base, {}); }
    static Relation identity(const Space& base);
    static Relation full(const Space& base);
    /// The equivalence whose classes are the given blocks.
    static Relation from_partition(const Space& base, const Partition& blocks);

    const Space& base() const { return base_; }
    const std::vector<Pair>& pairs() const { return pairs_; }
    bool contains(StateId s, StateId t) const;
    std::size_t size() const { return pairs_.size(); }

    bool is_symmetric() const;
    bool is_reflexive() const;
    bool is_transitive() const;
    bool is_equivalence() const { return is_reflexive() && is_symmetric() && is_transitive(); }

    Relation converse() const;
    Relation unite(const Relation& other) const;
    /// Classes of an equivalence in canonical order; throws NotAnEquivalence.
    Partition classes() const;

    friend bool operator==(const Relation& a, const Relation& b);

  private:
    Space base_;
    std::vector<Pair> pairs_;  // sorted, unique
};

/// The coarser space over rel.base() whose atoms are the smallest R-closed
/// unions of base atoms. Throws NonSymmetricRelation.
Space sigma_r(const Relation& rel);

/// {(s,s') : f(s) = f(s')}
Relation kernel_of(const MeasurableMap& f);

struct DirectSum {
    Space space;
    MeasurableMap left;   // a -> a ⊕ b, states tagged "L:"
    MeasurableMap right;  // b -> a ⊕ b, states tagged "R:"
};

DirectSum direct_sum(const Space& a, const Space& b);

/// Domain carrier with the atoms f⁻¹[B] for each codomain atom B hit by f.
Space preimage_space(const MeasurableMap& f);

struct FinalSurjection {
    /// sigma_r(kernel_of(f)) is mapped bijectively onto the codomain atoms.
    bool is_final = false;
    /// (f⁻¹[B], B) for every codomain atom B, in codomain atom order.
    std::vector<std::pair<Block, Block>> pairing;
};

/// Throws NotSurjective.
FinalSurjection is_final_surjection(const MeasurableMap& f);

}  // namespace stochnd
