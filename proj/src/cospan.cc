#include "stochnd/cospan.hh"

#include <algorithm>

#include "stochnd/error.hh"

namespace stochnd {

std::string_view issue_name(CospanIssueKind kind) {
    switch (kind) {
        case CospanIssueKind::NotSurjective: return "NotSurjective";
        case CospanIssueKind::MorphismViolation: return "MorphismViolation";
        case CospanIssueKind::NotFinitelySupported: return "NotFinitelySupported";
        case CospanIssueKind::SupportMismatch: return "SupportMismatch";
    }
    return "?";
}

namespace {

void check_leg(const MeasurableMap& f, const EffFn& p, const EffFn& m, const std::string& leg,
               CospanReport& report) {
    std::vector<bool> hit(m.space().size(), false);
    for (StateId s = 0; s < p.space().size(); ++s) hit[f(s)] = true;
    for (StateId u = 0; u < m.space().size(); ++u)
        if (!hit[u])
            report.issues.push_back(
                {CospanIssueKind::NotSurjective, leg, m.space().name(u), std::nullopt});
    for (StateId s = 0; s < p.space().size(); ++s)
        if (!(m(f(s)) == push_upper(f, p(s))))
            report.issues.push_back(
                {CospanIssueKind::MorphismViolation, leg, p.space().name(s), std::nullopt});
}

const MeasureSet& support(const EffFn& p, StateId s) { return p(s).generators().front(); }

}  // namespace

CospanReport verify_cospan(const Cospan& c) {
    require_same_space(c.f.domain(), c.p.space(), "cospan leg f");
    require_same_space(c.g.domain(), c.q.space(), "cospan leg g");
    require_same_space(c.f.codomain(), c.m.space(), "cospan leg f");
    require_same_space(c.g.codomain(), c.m.space(), "cospan leg g");
    CospanReport report;
    check_leg(c.f, c.p, c.m, "f", report);
    check_leg(c.g, c.q, c.m, "g", report);
    if (c.p.is_finitely_supported() && c.q.is_finitely_supported()) {
        for (StateId u = 0; u < c.m.space().size(); ++u)
            if (c.m(u).generators().size() != 1)
                report.issues.push_back({CospanIssueKind::NotFinitelySupported, "m",
                                         c.m.space().name(u), std::nullopt});
        for (StateId s = 0; s < c.p.space().size(); ++s)
            for (StateId t = 0; t < c.q.space().size(); ++t) {
                if (c.f(s) != c.g(t)) continue;
                if (!(push_set(c.f, support(c.p, s)) == push_set(c.g, support(c.q, t))))
                    report.issues.push_back({CospanIssueKind::SupportMismatch, "f",
                                             c.p.space().name(s), c.q.space().name(t)});
            }
    }
    return report;
}

SpanResult build_span(const Cospan& c) {
    if (!c.p.is_finitely_supported() || !c.q.is_finitely_supported())
        throw Error(Errc::NotFinitelySupported, "span construction needs finitely supported systems");
    CospanReport report = verify_cospan(c);
    if (!report.valid()) {
        const CospanIssue& i = report.issues.front();
        throw Error(Errc::InvalidModel, "invalid cospan: " + std::string(issue_name(i.kind)) +
                                            " at " + i.state + " (" + i.leg + ")");
    }
    const Space& u = c.m.space();
    std::vector<std::string> names;
    std::vector<StateId> first, second;
    Partition atoms(u.atom_count());
    for (StateId s = 0; s < c.p.space().size(); ++s)
        for (StateId t = 0; t < c.q.space().size(); ++t) {
            if (c.f(s) != c.g(t)) continue;
            atoms[u.atom_of(c.f(s))].push_back(names.size());
            names.push_back("(" + c.p.space().name(s) + "," + c.q.space().name(t) + ")");
            first.push_back(s);
            second.push_back(t);
        }
    Space w = Space::with_atoms(std::move(names), atoms);
    std::vector<AtomId> w_atom(u.atom_count());
    for (AtomId a = 0; a < u.atom_count(); ++a) w_atom[a] = w.atom_of(atoms[a].front());

    Space sigma_f = preimage_space(c.f);
    Space sigma_g = preimage_space(c.g);
    auto quotiented = [](const EffFn& sys, const Space& sigma) {
        if (!is_subsystem(sys, sigma))
            throw Error(Errc::InternalInvariantViolation, "preimage σ-algebra is not a subsystem");
        return subsystem(sys, sigma);
    };
    EffFn p_f = quotiented(c.p, sigma_f);
    EffFn q_g = quotiented(c.q, sigma_g);
    MeasurableMap pi_s(w, sigma_f, first);
    MeasurableMap pi_t(w, sigma_g, second);

    // τ(s,t) = 𝔉 of 𝔖f[𝒦(s)], carried over by the bijection between the
    // atoms of U and those of W.
    std::vector<UpperSet> tau;
    tau.reserve(w.size());
    for (StateId x = 0; x < w.size(); ++x) {
        std::vector<SubProb> moved;
        for (const auto& mu : support(c.p, first[x]).members()) {
            SubProb pushed = pushforward(c.f, mu);
            std::vector<Rational> mass(w.atom_count(), Rational(0));
            for (AtomId a = 0; a < u.atom_count(); ++a) mass[w_atom[a]] = pushed.mass(a);
            moved.emplace_back(w, std::move(mass));
        }
        tau.push_back(filter_of(MeasureSet(w, std::move(moved))));
    }
    EffFn tau_fn(w, std::move(tau));
    if (!is_ef_morphism(pi_s, tau_fn, p_f) || !is_ef_morphism(pi_t, tau_fn, q_g))
        throw Error(Errc::InternalInvariantViolation, "a projection square does not commute");
    return SpanResult{w, std::move(tau_fn), std::move(p_f), std::move(q_g), std::move(pi_s),
                      std::move(pi_t)};
}

std::vector<std::vector<SubProb>> support_relations(const EffFn& p) {
    if (!p.is_finitely_supported())
        throw Error(Errc::NotFinitelySupported, "every portfolio must have a single generator");
    std::size_t n = 0;
    for (StateId s = 0; s < p.space().size(); ++s) {
        std::size_t k = support(p, s).size();
        if (k == 0)
            throw Error(Errc::EmptySupport, "empty support at " + p.space().name(s));
        n = std::max(n, k);
    }
    std::vector<std::vector<SubProb>> out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (StateId s = 0; s < p.space().size(); ++s) {
            const auto& members = support(p, s).members();
            out[i].push_back(members[i % members.size()]);
        }
    return out;
}

}  // namespace stochnd
