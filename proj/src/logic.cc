#include "stochnd/logic.hh"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "refine.hh"
#include "stochnd/error.hh"

namespace stochnd {

namespace {

class Evaluator {
  public:
    explicit Evaluator(const EffFn& p) : p_(p) {}

    const StateSet& state(const StateFormula& f) {
        auto it = cache_.find(f.get());
        if (it != cache_.end()) return it->second.second;
        StateSet out = compute(f);
        return cache_.emplace(f.get(), std::make_pair(f, std::move(out))).first->second.second;
    }

    bool measure(const MeasureFormula& g, const SubProb& mu) {
        switch (g->kind) {
            case MeasureNode::Kind::And:
                return measure(g->left, mu) && measure(g->right, mu);
            case MeasureNode::Kind::Or:
                return measure(g->left, mu) || measure(g->right, mu);
            case MeasureNode::Kind::Threshold: {
                Rational v = evaluate(mu, state(g->arg));
                return g->cmp == Cmp::LT ? v < g->q : v > g->q;
            }
        }
        return false;
    }

  private:
    StateSet compute(const StateFormula& f) {
        const Space& sp = p_.space();
        switch (f->kind) {
            case StateNode::Kind::Top:
                return sp.full_set();
            case StateNode::Kind::And: {
                StateSet a = state(f->left);
                const StateSet& b = state(f->right);
                for (StateId s = 0; s < sp.size(); ++s) a[s] = a[s] && b[s];
                return a;
            }
            case StateNode::Kind::Diamond:
            case StateNode::Kind::Box:
                break;
        }
        bool dia = f->kind == StateNode::Kind::Diamond;
        StateSet out(sp.size(), false);
        // Portfolios are constant on atoms, so one representative decides.
        for (const auto& atom : sp.atoms()) {
            const auto& gens = p_(atom.front()).generators();
            auto sat = [&](const SubProb& mu) { return measure(f->body, mu); };
            bool v = dia ? std::any_of(gens.begin(), gens.end(),
                                       [&](const MeasureSet& g) {
                                           return std::all_of(g.members().begin(),
                                                              g.members().end(), sat);
                                       })
                         : std::all_of(gens.begin(), gens.end(), [&](const MeasureSet& g) {
                               return std::any_of(g.members().begin(), g.members().end(), sat);
                           });
            for (StateId s : atom) out[s] = v;
        }
        return out;
    }

    const EffFn& p_;
    std::unordered_map<const StateNode*, std::pair<StateFormula, StateSet>> cache_;
};

using Family = std::vector<std::pair<StateFormula, StateSet>>;

StateSet intersect_sets(const StateSet& a, const StateSet& b) {
    StateSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    return out;
}

// Adds formulas and closes the family under conjunction, keeping the first
// formula found for every extension.
void close_family(Family& family, std::vector<std::pair<StateFormula, StateSet>> fresh) {
    std::deque<std::size_t> queue;
    auto add = [&](StateFormula f, StateSet e) {
        for (const auto& [g, ext] : family)
            if (ext == e) return;
        family.emplace_back(std::move(f), std::move(e));
        queue.push_back(family.size() - 1);
    };
    for (auto& [f, e] : fresh) add(std::move(f), std::move(e));
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (j == i) continue;
            StateSet e = intersect_sets(family[i].second, family[j].second);
            add(conj(family[j].first, family[i].first), std::move(e));
        }
    }
}

Partition blocks_of(const Family& family, std::size_t n) {
    std::vector<std::vector<bool>> sig(n);
    for (StateId s = 0; s < n; ++s)
        for (const auto& [f, e] : family) sig[s].push_back(e[s]);
    Partition all;
    if (n > 0) {
        Block b(n);
        std::iota(b.begin(), b.end(), 0);
        all.push_back(std::move(b));
    }
    return detail::split_blocks(all, sig);
}

std::vector<UpperSet> signatures(const EffFn& p, const Partition& blocks) {
    return restricted_portfolio(p, detail::closure_space(p.space(), blocks));
}

// The □⋁⋀ formula separating two states whose restricted portfolios
// differ at this level. The result holds at exactly one of them.
Distinction synthesize(const EffFn& p, const RefinementLevel& level, StateId s, StateId t) {
    Space closed = detail::closure_space(p.space(), level.blocks);
    auto find_witness = [&](StateId a, StateId b) -> const MeasureSet* {
        for (const auto& g : p(a).generators()) {
            MeasureSet rg = restrict_set(g, closed);
            bool every_b_escapes = std::all_of(
                p(b).generators().begin(), p(b).generators().end(), [&](const MeasureSet& h) {
                    return !rg.includes(restrict_set(h, closed));
                });
            if (every_b_escapes) return &g;
        }
        return nullptr;
    };
    StateId a = s, b = t;
    const MeasureSet* a0 = find_witness(s, t);
    if (!a0) {
        std::swap(a, b);
        a0 = find_witness(a, b);
    }
    if (!a0)
        throw Error(Errc::InternalInvariantViolation, "no transfer violation between " +
                                                          p.space().name(s) + " and " +
                                                          p.space().name(t));
    MeasureSet ra0 = restrict_set(*a0, closed);
    MeasureFormula disj;
    for (const auto& h : p(b).generators()) {
        const SubProb* nu = nullptr;
        for (const auto& cand : h.members())
            if (!ra0.contains(restrict(cand, closed))) {
                nu = &cand;
                break;
            }
        if (!nu) throw Error(Errc::InternalInvariantViolation, "no escaping witness measure");
        MeasureFormula conj_i;
        for (const auto& mu : a0->members()) {
            bool found = false;
            for (const auto& [phi, ext] : level.family) {
                Rational x = evaluate(mu, ext);
                Rational y = evaluate(*nu, ext);
                if (x == y) continue;
                Rational q = (x + y) / 2;
                q.canonicalize();
                MeasureFormula test = threshold(phi, y > x ? Cmp::GT : Cmp::LT, q);
                conj_i = conj_i ? mconj(conj_i, test) : test;
                found = true;
                break;
            }
            if (!found)
                throw Error(Errc::InternalInvariantViolation,
                            "formula family does not separate two measures");
        }
        if (!conj_i) conj_i = always();
        disj = disj ? mdisj(disj, conj_i) : conj_i;
    }
    if (!disj) disj = never();
    return Distinction{box(disj), b};
}

}  // namespace

StateSet eval_state(const EffFn& p, const StateFormula& f) { return Evaluator(p).state(f); }

bool eval_measure(const EffFn& p, const MeasureFormula& g, const SubProb& mu) {
    require_same_space(p.space(), mu.space(), "eval_measure");
    return Evaluator(p).measure(g, mu);
}

std::vector<RefinementLevel> logical_equivalence_trace(const EffFn& p) {
    const std::size_t n = p.space().size();
    Evaluator ev(p);
    std::vector<RefinementLevel> trace;
    RefinementLevel level;
    level.family.emplace_back(top(), p.space().full_set());
    level.blocks = blocks_of(level.family, n);
    for (;;) {
        std::vector<UpperSet> sig = signatures(p, level.blocks);
        std::vector<std::pair<StateId, StateId>> pairs;
        for (const auto& block : level.blocks) {
            std::vector<StateId> reps;
            for (StateId s : block) {
                bool seen = std::any_of(reps.begin(), reps.end(),
                                        [&](StateId r) { return sig[r] == sig[s]; });
                if (!seen) reps.push_back(s);
            }
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j) pairs.emplace_back(reps[i], reps[j]);
        }
        trace.push_back(level);
        if (pairs.empty()) break;
        std::vector<std::pair<StateFormula, StateSet>> fresh;
        for (const auto& [s, t] : pairs) {
            Distinction d = synthesize(p, level, s, t);
            StateSet ext = ev.state(d.formula);
            StateId other = d.satisfied_by == s ? t : s;
            if (!ext[d.satisfied_by] || ext[other])
                throw Error(Errc::InternalInvariantViolation,
                            "synthesized formula does not split " + p.space().name(s) + " and " +
                                p.space().name(t));
            fresh.emplace_back(d.formula, std::move(ext));
        }
        RefinementLevel next;
        next.family = level.family;
        close_family(next.family, std::move(fresh));
        next.blocks = blocks_of(next.family, n);
        level = std::move(next);
    }
    return trace;
}

Relation logical_equivalence(const EffFn& p) {
    return Relation::from_partition(p.space(), logical_equivalence_trace(p).back().blocks);
}

std::variant<Equivalent, Distinction> distinguish(const EffFn& p, StateId s, StateId t) {
    const Space& sp = p.space();
    if (s >= sp.size() || t >= sp.size())
        throw Error(Errc::ForeignState, "state outside the model");
    auto trace = logical_equivalence_trace(p);
    auto together = [&](const Partition& blocks) {
        return std::any_of(blocks.begin(), blocks.end(), [&](const Block& b) {
            return std::find(b.begin(), b.end(), s) != b.end() &&
                   std::find(b.begin(), b.end(), t) != b.end();
        });
    };
    if (together(trace.back().blocks)) return Equivalent{};
    std::size_t n = 0;
    while (together(trace[n + 1].blocks)) ++n;
    const RefinementLevel& level = trace[n];
    std::vector<UpperSet> sig = signatures(p, level.blocks);
    Distinction d;
    if (!(sig[s] == sig[t])) {
        d = synthesize(p, level, s, t);
    } else {
        // Split only as a side effect of closing the family; some member of
        // the next family separates the pair.
        for (const auto& [phi, ext] : trace[n + 1].family)
            if (ext[s] != ext[t]) {
                d = Distinction{phi, ext[s] ? s : t};
                break;
            }
    }
    if (!d.formula) throw Error(Errc::InternalInvariantViolation, "pair split without a witness");
    StateSet ext = eval_state(p, d.formula);
    StateId other = d.satisfied_by == s ? t : s;
    if (!ext[d.satisfied_by] || ext[other])
        throw Error(Errc::InternalInvariantViolation, "distinguishing formula not confirmed");
    return d;
}

}  // namespace stochnd
