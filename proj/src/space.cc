#include "stochnd/space.hh"

#include <algorithm>
#include <numeric>

#include "stochnd/error.hh"

namespace stochnd {

namespace {

// Union-find over a fixed index range.
class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void merge(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

  private:
    std::vector<std::size_t> parent_;
};

}  // namespace

Partition canonical_partition(Partition blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& x, const Block& y) { return x.front() < y.front(); });
    return blocks;
}

Space Space::discrete(std::vector<std::string> states) {
    Partition atoms;
    atoms.reserve(states.size());
    for (StateId s = 0; s < states.size(); ++s) atoms.push_back({s});
    return with_atoms(std::move(states), std::move(atoms));
}

Space Space::with_atoms(std::vector<std::string> states, Partition atoms) {
    {
        auto sorted = states;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(Errc::InvalidPartition, "duplicate state name");
    }
    const std::size_t n = states.size();
    std::vector<AtomId> atom_of(n, n);
    for (const auto& block : atoms) {
        if (block.empty()) throw Error(Errc::InvalidPartition, "empty atom");
    }
    atoms = canonical_partition(std::move(atoms));
    for (AtomId a = 0; a < atoms.size(); ++a) {
        for (StateId s : atoms[a]) {
            if (s >= n) throw Error(Errc::InvalidPartition, "atom mentions a foreign state");
            if (atom_of[s] != n)
                throw Error(Errc::InvalidPartition, "atoms overlap at state " + states[s]);
            atom_of[s] = a;
        }
    }
    for (StateId s = 0; s < n; ++s)
        if (atom_of[s] == n)
            throw Error(Errc::InvalidPartition, "atoms do not cover state " + states[s]);
    auto d = std::make_shared<Data>();
    d->states = std::move(states);
    d->atoms = std::move(atoms);
    d->atom_of = std::move(atom_of);
    return Space(std::move(d));
}

std::optional<StateId> Space::find(std::string_view name) const {
    const auto& st = data_->states;
    auto it = std::find(st.begin(), st.end(), name);
    if (it == st.end()) return std::nullopt;
    return static_cast<StateId>(it - st.begin());
}

StateId Space::index(std::string_view name) const {
    if (auto s = find(name)) return *s;
    throw Error(Errc::ForeignState, "unknown state '" + std::string(name) + "'");
}

bool Space::same_carrier(const Space& other) const {
    return data_ == other.data_ || data_->states == other.data_->states;
}

bool Space::refined_by_this(const Space& coarser) const {
    if (!same_carrier(coarser)) return false;
    for (const auto& block : atoms()) {
        AtomId target = coarser.atom_of(block.front());
        for (StateId s : block)
            if (coarser.atom_of(s) != target) return false;
    }
    return true;
}

Space Space::coarsen(Partition atoms) const {
    return with_atoms(states(), std::move(atoms));
}

bool Space::is_measurable(const StateSet& set) const {
    if (set.size() != size()) return false;
    for (const auto& block : atoms())
        for (StateId s : block)
            if (set[s] != set[block.front()]) return false;
    return true;
}

bool operator==(const Space& a, const Space& b) {
    return a.data_ == b.data_ ||
           (a.data_->states == b.data_->states && a.data_->atoms == b.data_->atoms);
}

void require_same_space(const Space& a, const Space& b, std::string_view what) {
    if (!(a == b)) throw Error(Errc::SpaceMismatch, "space mismatch in " + std::string(what));
}

// --- MeasurableMap --------------------------------------------------------

MeasurableMap::MeasurableMap(Space domain, Space codomain, std::vector<StateId> assignment)
    : domain_(std::move(domain)), codomain_(std::move(codomain)),
      assignment_(std::move(assignment)) {
    if (assignment_.size() != domain_.size())
        throw Error(Errc::InvalidModel, "map is not total on its domain");
    for (StateId t : assignment_)
        if (t >= codomain_.size()) throw Error(Errc::ForeignState, "map target outside codomain");
    atom_image_.resize(domain_.atom_count());
    for (AtomId a = 0; a < domain_.atom_count(); ++a) {
        const auto& block = domain_.atom(a);
        AtomId target = codomain_.atom_of(assignment_[block.front()]);
        for (StateId s : block)
            if (codomain_.atom_of(assignment_[s]) != target)
                throw Error(Errc::NotMeasurable,
                            "map is not measurable: atom of " + domain_.name(block.front()) +
                                " is split by a codomain atom");
        atom_image_[a] = target;
    }
}

MeasurableMap MeasurableMap::identity(const Space& space) {
    std::vector<StateId> id(space.size());
    std::iota(id.begin(), id.end(), 0);
    return MeasurableMap(space, space, std::move(id));
}

bool MeasurableMap::is_surjective() const {
    std::vector<bool> hit(codomain_.size(), false);
    for (StateId t : assignment_) hit[t] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<AtomId> MeasurableMap::atom_fiber(AtomId codomain_atom) const {
    std::vector<AtomId> out;
    for (AtomId a = 0; a < atom_image_.size(); ++a)
        if (atom_image_[a] == codomain_atom) out.push_back(a);
    return out;
}

bool operator==(const MeasurableMap& a, const MeasurableMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ &&
           a.assignment_ == b.assignment_;
}

MeasurableMap compose(const MeasurableMap& g, const MeasurableMap& f) {
    require_same_space(f.codomain(), g.domain(), "compose");
    std::vector<StateId> out(f.domain().size());
    for (StateId s = 0; s < out.size(); ++s) out[s] = g(f(s));
    return MeasurableMap(f.domain(), g.codomain(), std::move(out));
}

// --- Relation -------------------------------------------------------------

Relation::Relation(Space base, std::vector<Pair> pairs)
    : base_(std::move(base)), pairs_(std::move(pairs)) {
    for (const auto& [s, t] : pairs_)
        if (s >= base_.size() || t >= base_.size())
            throw Error(Errc::ForeignState, "relation pair leaves the carrier");
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

Relation Relation::identity(const Space& base) {
    std::vector<Pair> p;
    for (StateId s = 0; s < base.size(); ++s) p.emplace_back(s, s);
    return Relation(base, std::move(p));
}

Relation Relation::full(const Space& base) {
    std::vector<Pair> p;
    for (StateId s = 0; s < base.size(); ++s)
        for (StateId t = 0; t < base.size(); ++t) p.emplace_back(s, t);
    return Relation(base, std::move(p));
}

Relation Relation::from_partition(const Space& base, const Partition& blocks) {
    std::vector<Pair> p;
    for (const auto& b : blocks)
        for (StateId s : b)
            for (StateId t : b) p.emplace_back(s, t);
    return Relation(base, std::move(p));
}

bool Relation::contains(StateId s, StateId t) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{s, t});
}

bool Relation::is_symmetric() const {
    return std::all_of(pairs_.begin(), pairs_.end(),
                       [&](const Pair& p) { return contains(p.second, p.first); });
}

bool Relation::is_reflexive() const {
    for (StateId s = 0; s < base_.size(); ++s)
        if (!contains(s, s)) return false;
    return true;
}

bool Relation::is_transitive() const {
    for (const auto& [a, b] : pairs_) {
        auto lo = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{b, 0});
        for (auto it = lo; it != pairs_.end() && it->first == b; ++it)
            if (!contains(a, it->second)) return false;
    }
    return true;
}

Relation Relation::converse() const {
    std::vector<Pair> p;
    p.reserve(pairs_.size());
    for (const auto& [s, t] : pairs_) p.emplace_back(t, s);
    return Relation(base_, std::move(p));
}

Relation Relation::unite(const Relation& other) const {
    require_same_space(base_, other.base_, "relation union");
    auto p = pairs_;
    p.insert(p.end(), other.pairs_.begin(), other.pairs_.end());
    return Relation(base_, std::move(p));
}

Partition Relation::classes() const {
    if (!is_equivalence()) throw Error(Errc::NotAnEquivalence, "relation is not an equivalence");
    std::vector<bool> seen(base_.size(), false);
    Partition out;
    for (StateId s = 0; s < base_.size(); ++s) {
        if (seen[s]) continue;
        Block b;
        for (StateId t = s; t < base_.size(); ++t)
            if (contains(s, t)) {
                b.push_back(t);
                seen[t] = true;
            }
        out.push_back(std::move(b));
    }
    return out;
}

bool operator==(const Relation& a, const Relation& b) {
    return a.base_ == b.base_ && a.pairs_ == b.pairs_;
}

// --- Operations -----------------------------------------------------------

Space sigma_r(const Relation& rel) {
    if (!rel.is_symmetric())
        throw Error(Errc::NonSymmetricRelation, "sigma_r requires a symmetric relation");
    const Space& base = rel.base();
    // For symmetric R, the R-closed atom unions are exactly the unions of
    // connected components of the atom graph with an edge for every pair.
    DisjointSets ds(base.atom_count());
    for (const auto& [s, t] : rel.pairs()) ds.merge(base.atom_of(s), base.atom_of(t));
    std::vector<Block> by_root(base.atom_count());
    for (StateId s = 0; s < base.size(); ++s) by_root[ds.find(base.atom_of(s))].push_back(s);
    Partition blocks;
    for (auto& b : by_root)
        if (!b.empty()) blocks.push_back(std::move(b));
    return base.coarsen(std::move(blocks));
}

Relation kernel_of(const MeasurableMap& f) {
    std::vector<Relation::Pair> p;
    const std::size_t n = f.domain().size();
    for (StateId s = 0; s < n; ++s)
        for (StateId t = 0; t < n; ++t)
            if (f(s) == f(t)) p.emplace_back(s, t);
    return Relation(f.domain(), std::move(p));
}

DirectSum direct_sum(const Space& a, const Space& b) {
    std::vector<std::string> names;
    names.reserve(a.size() + b.size());
    for (const auto& n : a.states()) names.push_back("L:" + n);
    for (const auto& n : b.states()) names.push_back("R:" + n);
    Partition atoms = a.atoms();
    for (const auto& blk : b.atoms()) {
        Block shifted;
        for (StateId s : blk) shifted.push_back(s + a.size());
        atoms.push_back(std::move(shifted));
    }
    Space sum = Space::with_atoms(std::move(names), std::move(atoms));
    std::vector<StateId> left(a.size()), right(b.size());
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), a.size());
    return DirectSum{sum, MeasurableMap(a, sum, std::move(left)),
                     MeasurableMap(b, sum, std::move(right))};
}

Space preimage_space(const MeasurableMap& f) {
    const Space& cod = f.codomain();
    std::vector<Block> blocks(cod.atom_count());
    for (StateId s = 0; s < f.domain().size(); ++s) blocks[cod.atom_of(f(s))].push_back(s);
    Partition nonempty;
    for (auto& b : blocks)
        if (!b.empty()) nonempty.push_back(std::move(b));
    return f.domain().coarsen(std::move(nonempty));
}

FinalSurjection is_final_surjection(const MeasurableMap& f) {
    if (!f.is_surjective()) throw Error(Errc::NotSurjective, "map is not surjective");
    const Space& cod = f.codomain();
    FinalSurjection out;
    for (AtomId b = 0; b < cod.atom_count(); ++b) {
        Block pre;
        for (StateId s = 0; s < f.domain().size(); ++s)
            if (cod.atom_of(f(s)) == b) pre.push_back(s);
        out.pairing.emplace_back(std::move(pre), cod.atom(b));
    }
    // block ↦ f[block] must hit each codomain atom exactly, and distinct
    // invariant blocks must land on distinct atoms.
    Space invariant = sigma_r(kernel_of(f));
    std::vector<bool> used(cod.atom_count(), false);
    out.is_final = invariant.atom_count() == cod.atom_count();
    for (const auto& block : invariant.atoms()) {
        if (!out.is_final) break;
        StateSet image(cod.size(), false);
        for (StateId s : block) image[f(s)] = true;
        AtomId b = cod.atom_of(f(block.front()));
        const Block& atom = cod.atom(b);
        std::size_t hits = static_cast<std::size_t>(std::count(image.begin(), image.end(), true));
        bool exact = hits == atom.size() &&
                     std::all_of(atom.begin(), atom.end(), [&](StateId t) { return image[t]; });
        if (!exact || used[b]) out.is_final = false;
        used[b] = true;
    }
    return out;
}

}  // namespace stochnd
