#include "stochnd/effectivity.hh"

#include <algorithm>
#include <numeric>
#include <optional>

#include "refine.hh"
#include "stochnd/error.hh"

namespace stochnd {

EffFn::EffFn(Space space, std::vector<UpperSet> portfolio)
    : space_(std::move(space)), portfolio_(std::move(portfolio)) {
    if (portfolio_.size() != space_.size())
        throw Error(Errc::SpaceMismatch, "effectivity function needs one portfolio per state");
    for (const auto& u : portfolio_) require_same_space(space_, u.space(), "effectivity function");
    for (const auto& atom : space_.atoms())
        for (StateId s : atom)
            if (!(portfolio_[s] == portfolio_[atom.front()]))
                throw Error(Errc::NotMeasurable, "portfolio differs inside the atom of " +
                                                     space_.name(s));
}

bool EffFn::is_finitely_supported() const {
    return std::all_of(portfolio_.begin(), portfolio_.end(),
                       [](const UpperSet& u) { return u.generators().size() == 1; });
}

namespace {

// closure(u) ⊆ closure(v) for upper sets given by canonical generators.
bool covered_by(const UpperSet& u, const UpperSet& v) {
    return std::all_of(u.generators().begin(), u.generators().end(),
                       [&](const MeasureSet& g) { return contains(v, g); });
}

}  // namespace

bool is_ef_state_bisim(const EffFn& p, const Relation& rel) {
    require_same_space(p.space(), rel.base(), "is_ef_state_bisim");
    if (!rel.is_symmetric())
        throw Error(Errc::NonSymmetricRelation, "state bisimulations must be symmetric");
    Space closed = sigma_r(rel);
    std::vector<UpperSet> r = restricted_portfolio(p, closed);
    // ∀G ∃H: every ν ∈ H matches some μ ∈ G, i.e. the restriction of H is
    // included in that of G. Symmetry supplies the other direction.
    for (const auto& [s, t] : rel.pairs())
        if (!covered_by(r[s], r[t])) return false;
    return true;
}

Relation greatest_ef_bisim(const EffFn& p) {
    const Space& sp = p.space();
    Partition blocks;
    if (sp.size() > 0) {
        Block all(sp.size());
        std::iota(all.begin(), all.end(), 0);
        blocks.push_back(std::move(all));
    }
    for (;;) {
        Space closed = detail::closure_space(sp, blocks);
        Partition next = detail::split_blocks(blocks, restricted_portfolio(p, closed));
        if (next.size() == blocks.size()) break;
        blocks = std::move(next);
    }
    return Relation::from_partition(sp, blocks);
}

bool is_ef_morphism(const MeasurableMap& f, const EffFn& p, const EffFn& q) {
    require_same_space(f.domain(), p.space(), "is_ef_morphism");
    require_same_space(f.codomain(), q.space(), "is_ef_morphism");
    for (StateId s = 0; s < p.space().size(); ++s)
        if (!(q(f(s)) == push_upper(f, p(s)))) return false;
    return true;
}

bool is_strong_morphism(const MeasurableMap& f, const EffFn& p, const EffFn& q) {
    require_same_space(f.domain(), p.space(), "is_strong_morphism");
    require_same_space(f.codomain(), q.space(), "is_strong_morphism");
    if (!f.is_surjective()) throw Error(Errc::NotSurjective, "map is not surjective");
    for (StateId s = 0; s < p.space().size(); ++s) {
        const auto& gs = p(s).generators();
        const auto& hs = q(f(s)).generators();
        // Every (𝔖f)⁻¹[H] lies in p(s).
        for (const auto& h : hs) {
            bool found = std::any_of(gs.begin(), gs.end(), [&](const MeasureSet& g) {
                return std::all_of(g.members().begin(), g.members().end(),
                                   [&](const SubProb& mu) { return h.contains(pushforward(f, mu)); });
            });
            if (!found) return false;
        }
        // Every G contains some (𝔖f)⁻¹[H]; that preimage must be finite.
        for (const auto& g : gs) {
            bool found = std::any_of(hs.begin(), hs.end(), [&](const MeasureSet& h) {
                return std::all_of(h.members().begin(), h.members().end(), [&](const SubProb& nu) {
                    Preimage pre = measure_preimage(f, nu);
                    if (pre.kind == PreimageKind::Empty) return true;
                    return pre.kind == PreimageKind::Unique && g.contains(*pre.measure);
                });
            });
            if (!found) return false;
        }
    }
    return true;
}

MeasurableMap quotient_map(const Relation& alpha) {
    const Space& base = alpha.base();
    Partition classes = alpha.classes();
    std::vector<StateId> cls(base.size());
    std::vector<std::string> names;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        std::string name = "{";
        for (std::size_t i = 0; i < classes[c].size(); ++i) {
            if (i > 0) name += ",";
            name += base.name(classes[c][i]);
            cls[classes[c][i]] = c;
        }
        names.push_back(name + "}");
    }
    Space closed = sigma_r(alpha);
    Partition atoms;
    for (const auto& block : closed.atoms()) {
        Block a;
        for (StateId s : block) a.push_back(cls[s]);
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        atoms.push_back(std::move(a));
    }
    Space target = Space::with_atoms(std::move(names), std::move(atoms));
    return MeasurableMap(base, target, std::move(cls));
}

Quotient quotient(const EffFn& p, const Relation& alpha) {
    require_same_space(p.space(), alpha.base(), "quotient");
    MeasurableMap eta = quotient_map(alpha);
    const Space& target = eta.codomain();
    std::vector<std::optional<UpperSet>> cand(target.size());
    std::vector<StateId> rep(target.size());
    for (StateId s = 0; s < p.space().size(); ++s) {
        UpperSet pushed = push_upper(eta, p(s));
        StateId c = eta(s);
        if (!cand[c]) {
            cand[c] = std::move(pushed);
            rep[c] = s;
        } else if (!(*cand[c] == pushed)) {
            throw CongruenceError(p.space().name(rep[c]), p.space().name(s));
        }
    }
    std::vector<UpperSet> portfolio;
    portfolio.reserve(target.size());
    for (auto& c : cand) portfolio.push_back(std::move(*c));
    return Quotient{EffFn(target, std::move(portfolio)), eta};
}

std::vector<UpperSet> restricted_portfolio(const EffFn& p, const Space& coarser) {
    if (!p.space().refined_by_this(coarser))
        throw Error(Errc::IncompatiblePartition,
                    "partition atoms are not unions of the model's atoms");
    std::vector<UpperSet> out;
    out.reserve(p.space().size());
    for (StateId s = 0; s < p.space().size(); ++s) out.push_back(restrict_upper(p(s), coarser));
    return out;
}

bool is_subsystem(const EffFn& p, const Space& coarser) {
    std::vector<UpperSet> r = restricted_portfolio(p, coarser);
    for (const auto& atom : coarser.atoms())
        for (StateId s : atom)
            if (!(r[s] == r[atom.front()])) return false;
    return true;
}

EffFn subsystem(const EffFn& p, const Space& coarser) {
    if (!is_subsystem(p, coarser))
        throw Error(Errc::IncompatiblePartition, "partition is not a subsystem");
    return EffFn(coarser, restricted_portfolio(p, coarser));
}

EffFn dual_ef(const EffFn& p) {
    std::vector<UpperSet> out;
    out.reserve(p.space().size());
    for (const auto& u : p.portfolio()) out.push_back(dual(u));
    return EffFn(p.space(), std::move(out));
}

EffSum sum_ef(const EffFn& p, const EffFn& q) {
    DirectSum ds = direct_sum(p.space(), q.space());
    std::vector<std::optional<UpperSet>> slot(ds.space.size());
    for (StateId s = 0; s < p.space().size(); ++s) slot[ds.left(s)] = push_upper(ds.left, p(s));
    for (StateId t = 0; t < q.space().size(); ++t) slot[ds.right(t)] = push_upper(ds.right, q(t));
    std::vector<UpperSet> portfolio;
    portfolio.reserve(slot.size());
    for (auto& u : slot) portfolio.push_back(std::move(*u));
    return EffSum{EffFn(ds.space, std::move(portfolio)), std::move(ds)};
}

EffFn from_markov_kernel(const Space& space, const std::vector<SubProb>& k) {
    if (k.size() != space.size())
        throw Error(Errc::SpaceMismatch, "Markov kernel needs one measure per state");
    std::vector<UpperSet> out;
    out.reserve(k.size());
    for (const auto& mu : k) out.push_back(filter_of(MeasureSet(space, {mu})));
    return EffFn(space, std::move(out));
}

}  // namespace stochnd
