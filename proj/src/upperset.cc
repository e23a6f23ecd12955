#include "stochnd/upperset.hh"

#include <algorithm>

#include "stochnd/error.hh"

namespace stochnd {

MeasureSet::MeasureSet(Space space, std::vector<SubProb> members)
    : space_(std::move(space)), members_(std::move(members)) {
    for (const auto& m : members_) require_same_space(space_, m.space(), "measure set");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool MeasureSet::contains(const SubProb& mu) const {
    return std::binary_search(members_.begin(), members_.end(), mu);
}

bool MeasureSet::includes(const MeasureSet& other) const {
    return std::includes(members_.begin(), members_.end(), other.members_.begin(),
                         other.members_.end());
}

bool MeasureSet::hits(const MeasureSet& other) const {
    auto a = members_.begin();
    auto b = other.members_.begin();
    while (a != members_.end() && b != other.members_.end()) {
        if (*a < *b)
            ++a;
        else if (*b < *a)
            ++b;
        else
            return true;
    }
    return false;
}

MeasureSet MeasureSet::with(const SubProb& mu) const {
    auto m = members_;
    m.push_back(mu);
    return MeasureSet(space_, std::move(m));
}

MeasureSet MeasureSet::unite(const MeasureSet& other) const {
    require_same_space(space_, other.space_, "measure set union");
    std::vector<SubProb> m;
    m.reserve(members_.size() + other.members_.size());
    std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                   other.members_.end(), std::back_inserter(m));
    MeasureSet out(space_);
    out.members_ = std::move(m);
    return out;
}

MeasureSet push_set(const MeasurableMap& f, const MeasureSet& set) {
    require_same_space(f.domain(), set.space(), "push_set");
    std::vector<SubProb> out;
    out.reserve(set.size());
    for (const auto& mu : set.members()) out.push_back(pushforward(f, mu));
    return MeasureSet(f.codomain(), std::move(out));
}

MeasureSet restrict_set(const MeasureSet& set, const Space& coarser) {
    std::vector<SubProb> out;
    out.reserve(set.size());
    for (const auto& mu : set.members()) out.push_back(restrict(mu, coarser));
    return MeasureSet(coarser, std::move(out));
}

UpperSet canonicalize(const Space& space, std::vector<MeasureSet> gens) {
    for (const auto& g : gens) require_same_space(space, g.space(), "canonicalize");
    // Smaller generators first: a generator can only be made redundant by
    // one of no greater size.
    std::sort(gens.begin(), gens.end(), [](const MeasureSet& a, const MeasureSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<MeasureSet> kept;
    for (auto& g : gens) {
        bool redundant = std::any_of(kept.begin(), kept.end(),
                                     [&](const MeasureSet& k) { return g.includes(k); });
        if (!redundant) kept.push_back(std::move(g));
    }
    std::sort(kept.begin(), kept.end());
    return UpperSet(space, std::move(kept));
}

UpperSet filter_of(const MeasureSet& w) { return canonicalize(w.space(), {w}); }

bool contains(const UpperSet& u, const MeasureSet& a) {
    require_same_space(u.space(), a.space(), "contains");
    return std::any_of(u.generators().begin(), u.generators().end(),
                       [&](const MeasureSet& g) { return a.includes(g); });
}

UpperSet unite(const UpperSet& u, const UpperSet& v) {
    require_same_space(u.space(), v.space(), "union");
    auto gens = u.generators();
    gens.insert(gens.end(), v.generators().begin(), v.generators().end());
    return canonicalize(u.space(), std::move(gens));
}

UpperSet intersect(const UpperSet& u, const UpperSet& v) {
    require_same_space(u.space(), v.space(), "intersect");
    std::vector<MeasureSet> gens;
    for (const auto& g : u.generators())
        for (const auto& h : v.generators()) gens.push_back(g.unite(h));
    return canonicalize(u.space(), std::move(gens));
}

UpperSet dual(const UpperSet& u) {
    // Berge's incremental transversal construction: extend every partial
    // hitting set by one member of each generator it misses, minimizing
    // after each generator. The result equals the canonicalized family of
    // all choice-function images.
    std::vector<MeasureSet> partial{MeasureSet(u.space())};
    for (const auto& g : u.generators()) {
        std::vector<MeasureSet> next;
        for (const auto& h : partial) {
            if (h.hits(g)) {
                next.push_back(h);
                continue;
            }
            for (const auto& mu : g.members()) next.push_back(h.with(mu));
        }
        partial = canonicalize(u.space(), std::move(next)).generators();
    }
    return canonicalize(u.space(), std::move(partial));
}

bool equals(const UpperSet& u, const UpperSet& v) {
    require_same_space(u.space(), v.space(), "equals");
    return u == v;
}

UpperSet push_upper(const MeasurableMap& f, const UpperSet& u) {
    std::vector<MeasureSet> gens;
    gens.reserve(u.generators().size());
    for (const auto& g : u.generators()) gens.push_back(push_set(f, g));
    return canonicalize(f.codomain(), std::move(gens));
}

UpperSet restrict_upper(const UpperSet& u, const Space& coarser) {
    std::vector<MeasureSet> gens;
    gens.reserve(u.generators().size());
    for (const auto& g : u.generators()) gens.push_back(restrict_set(g, coarser));
    return canonicalize(coarser, std::move(gens));
}

}  // namespace stochnd
