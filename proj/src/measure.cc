#include "stochnd/measure.hh"

#include "stochnd/error.hh"

namespace stochnd {

SubProb::SubProb(Space space, std::vector<Rational> atom_mass)
    : space_(std::move(space)), mass_(std::move(atom_mass)) {
    if (mass_.size() != space_.atom_count())
        throw Error(Errc::SpaceMismatch, "measure has the wrong number of atoms");
    Rational sum = 0;
    for (const auto& m : mass_) {
        if (sgn(m) < 0) throw Error(Errc::InvalidMeasure, "negative mass");
        sum += m;
    }
    if (sum > 1) throw Error(Errc::InvalidMeasure, "mass exceeds 1");
}

SubProb SubProb::zero(const Space& space) {
    return SubProb(space, std::vector<Rational>(space.atom_count(), Rational(0)));
}

SubProb SubProb::point(const Space& space, StateId s) {
    std::vector<Rational> m(space.atom_count(), Rational(0));
    m.at(space.atom_of(s)) = 1;
    return SubProb(space, std::move(m));
}

SubProb SubProb::from_states(const Space& space,
                             const std::vector<std::pair<StateId, Rational>>& masses) {
    std::vector<Rational> m(space.atom_count(), Rational(0));
    for (const auto& [s, q] : masses) {
        if (s >= space.size()) throw Error(Errc::ForeignState, "measure mentions a foreign state");
        if (sgn(q) < 0) throw Error(Errc::InvalidMeasure, "negative mass");
        m[space.atom_of(s)] += q;
    }
    return SubProb(space, std::move(m));
}

Rational SubProb::total() const {
    Rational sum = 0;
    for (const auto& m : mass_) sum += m;
    return sum;
}

Rational evaluate(const SubProb& mu, const StateSet& set) {
    const Space& sp = mu.space();
    if (!sp.is_measurable(set))
        throw Error(Errc::NotMeasurableSet, "set is not a union of atoms");
    Rational sum = 0;
    for (AtomId a = 0; a < sp.atom_count(); ++a)
        if (set[sp.atom(a).front()]) sum += mu.mass(a);
    return sum;
}

SubProb pushforward(const MeasurableMap& f, const SubProb& mu) {
    require_same_space(f.domain(), mu.space(), "pushforward");
    std::vector<Rational> m(f.codomain().atom_count(), Rational(0));
    for (AtomId a = 0; a < f.domain().atom_count(); ++a) m[f.image_atom(a)] += mu.mass(a);
    return SubProb(f.codomain(), std::move(m));
}

SubProb restrict(const SubProb& mu, const Space& coarser) {
    const Space& fine = mu.space();
    if (!fine.refined_by_this(coarser))
        throw Error(Errc::IncompatiblePartition,
                    "target atoms are not unions of the measure's atoms");
    std::vector<Rational> m(coarser.atom_count(), Rational(0));
    for (AtomId a = 0; a < fine.atom_count(); ++a)
        m[coarser.atom_of(fine.atom(a).front())] += mu.mass(a);
    return SubProb(coarser, std::move(m));
}

bool agree_mod(const Relation& rel, const SubProb& mu, const SubProb& nu) {
    require_same_space(rel.base(), mu.space(), "agree_mod");
    require_same_space(rel.base(), nu.space(), "agree_mod");
    Space closed = sigma_r(rel);
    return restrict(mu, closed).masses() == restrict(nu, closed).masses();
}

SubProb invariant_measure_transport(const MeasurableMap& f, const SubProb& nu) {
    if (!f.is_surjective()) throw Error(Errc::NotSurjective, "map is not surjective");
    require_same_space(f.codomain(), nu.space(), "invariant_measure_transport");
    // For surjective f, each block of preimage_space(f) is f⁻¹[B] for exactly
    // one codomain atom B.
    Space target = preimage_space(f);
    std::vector<Rational> m(target.atom_count(), Rational(0));
    for (AtomId b = 0; b < target.atom_count(); ++b) {
        StateId rep = target.atom(b).front();
        m[b] = nu.mass(f.codomain().atom_of(f(rep)));
    }
    return SubProb(target, std::move(m));
}

Preimage measure_preimage(const MeasurableMap& f, const SubProb& nu) {
    require_same_space(f.codomain(), nu.space(), "measure_preimage");
    const Space& cod = f.codomain();
    std::vector<std::vector<AtomId>> fibers(cod.atom_count());
    for (AtomId a = 0; a < f.domain().atom_count(); ++a) fibers[f.image_atom(a)].push_back(a);
    bool infinite = false;
    for (AtomId b = 0; b < cod.atom_count(); ++b) {
        if (sgn(nu.mass(b)) == 0) continue;
        if (fibers[b].empty()) return {PreimageKind::Empty, std::nullopt};
        if (fibers[b].size() > 1) infinite = true;
    }
    if (infinite) return {PreimageKind::Infinite, std::nullopt};
    std::vector<Rational> m(f.domain().atom_count(), Rational(0));
    for (AtomId b = 0; b < cod.atom_count(); ++b)
        if (sgn(nu.mass(b)) != 0) m[fibers[b].front()] = nu.mass(b);
    return {PreimageKind::Unique, SubProb(f.domain(), std::move(m))};
}

}  // namespace stochnd
