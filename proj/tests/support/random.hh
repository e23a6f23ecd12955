// Random instances for property tests. Everything is drawn from a seeded
// std::mt19937_64, so failures reproduce from the printed seed.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stochnd/formula.hh"
#include "stochnd/nlmp.hh"

namespace stochnd::testing {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [lo, hi].
    std::size_t range(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(eng_); }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[range(0, v.size() - 1)];
    }
    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

inline std::vector<std::string> names(std::size_t n, const std::string& prefix = "s") {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

/// Random partition of {0..n-1} into at most `max_blocks` blocks.
inline Partition random_partition(Rng& rng, std::size_t n, std::size_t max_blocks) {
    if (n == 0) return {};
    std::size_t k = rng.range(1, std::min(n, max_blocks));
    std::vector<Block> blocks(k);
    std::vector<StateId> order(n);
    for (StateId s = 0; s < n; ++s) order[s] = s;
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (std::size_t i = 0; i < k; ++i) blocks[i].push_back(order[i]);
    for (std::size_t i = k; i < n; ++i) blocks[rng.range(0, k - 1)].push_back(order[i]);
    return canonical_partition(std::move(blocks));
}

/// Discrete, or with probability `coarse` a random atom partition.
inline Space random_space(Rng& rng, std::size_t n, double coarse = 0.0,
                          const std::string& prefix = "s") {
    if (n > 1 && rng.chance(coarse))
        return Space::with_atoms(names(n, prefix), random_partition(rng, n, n - 1));
    return Space::discrete(names(n, prefix));
}

/// Masses are multiples of 1/d with d ≤ max_den; total ≤ 1.
inline SubProb random_measure(Rng& rng, const Space& sp, std::size_t max_den = 8) {
    std::size_t d = rng.range(1, max_den);
    std::size_t units = rng.range(0, d);
    std::vector<Rational> mass(sp.atom_count(), Rational(0));
    for (std::size_t u = 0; u < units; ++u) mass[rng.range(0, sp.atom_count() - 1)] += Rational(1, d);
    for (auto& m : mass) m.canonicalize();
    return SubProb(sp, std::move(mass));
}

inline std::vector<SubProb> random_pool(Rng& rng, const Space& sp, std::size_t k,
                                        std::size_t max_den = 8) {
    std::vector<SubProb> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(random_measure(rng, sp, max_den));
    return out;
}

inline MeasureSet random_subset(Rng& rng, const Space& sp, const std::vector<SubProb>& pool,
                                std::size_t min_members, std::size_t max_members) {
    std::size_t k = rng.range(min_members, max_members);
    std::vector<SubProb> m;
    for (std::size_t i = 0; i < k; ++i) m.push_back(rng.pick(pool));
    return MeasureSet(sp, std::move(m));
}

inline UpperSet random_upper(Rng& rng, const Space& sp, const std::vector<SubProb>& pool,
                             std::size_t max_gens = 3, std::size_t max_members = 3) {
    std::size_t k = rng.range(0, max_gens);
    std::vector<MeasureSet> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(random_subset(rng, sp, pool, 0, max_members));
    return canonicalize(sp, std::move(gens));
}

struct EfShape {
    std::size_t max_gens = 3;
    std::size_t max_members = 3;
    std::size_t pool = 4;
    std::size_t max_den = 8;
    bool finitely_supported = false;
    /// Smallest support size when finitely supported.
    std::size_t min_members = 0;
};

// Values are drawn per atom so that they are constant on atoms.
template <class F>
auto per_atom(const Space& sp, F&& draw) {
    std::vector<decltype(draw())> by_atom;
    for (AtomId a = 0; a < sp.atom_count(); ++a) by_atom.push_back(draw());
    std::vector<decltype(draw())> out;
    for (StateId s = 0; s < sp.size(); ++s) out.push_back(by_atom[sp.atom_of(s)]);
    return out;
}

inline EffFn random_ef(Rng& rng, const Space& sp, const EfShape& shape = {}) {
    auto pool = random_pool(rng, sp, shape.pool, shape.max_den);
    return EffFn(sp, per_atom(sp, [&] {
                     if (shape.finitely_supported)
                         return filter_of(
                             random_subset(rng, sp, pool, shape.min_members, shape.max_members));
                     return random_upper(rng, sp, pool, shape.max_gens, shape.max_members);
                 }));
}

inline Kernel random_kernel(Rng& rng, const Space& sp, std::size_t pool_size = 4,
                            std::size_t max_members = 3, std::size_t max_den = 8) {
    auto pool = random_pool(rng, sp, pool_size, max_den);
    return Kernel(sp, per_atom(sp, [&] { return random_subset(rng, sp, pool, 0, max_members); }));
}

/// A measurable surjection onto a discrete or coarse codomain with at most
/// as many atoms as the domain.
inline MeasurableMap random_surjection(Rng& rng, const Space& dom, double coarse = 0.0,
                                       const std::string& prefix = "t") {
    std::size_t k = rng.range(1, dom.atom_count());
    std::vector<std::size_t> image(dom.atom_count());
    for (AtomId a = 0; a < dom.atom_count(); ++a) image[a] = a < k ? a : rng.range(0, k - 1);
    std::shuffle(image.begin(), image.end(), rng.engine());
    std::vector<StateId> assignment(dom.size());
    for (StateId s = 0; s < dom.size(); ++s) assignment[s] = image[dom.atom_of(s)];
    Space target = random_space(rng, k, coarse, prefix);
    return MeasurableMap(dom, target, std::move(assignment));
}

inline Relation random_symmetric(Rng& rng, const Space& sp, double density = 0.3) {
    std::vector<Relation::Pair> pairs;
    for (StateId s = 0; s < sp.size(); ++s)
        for (StateId t = s; t < sp.size(); ++t)
            if (rng.chance(density)) {
                pairs.emplace_back(s, t);
                pairs.emplace_back(t, s);
            }
    return Relation(sp, std::move(pairs));
}

/// Every symmetric relation on the carrier (2^(n(n+1)/2) of them).
inline std::vector<Relation> all_symmetric(const Space& sp) {
    std::vector<Relation::Pair> slots;
    for (StateId s = 0; s < sp.size(); ++s)
        for (StateId t = s; t < sp.size(); ++t) slots.emplace_back(s, t);
    std::vector<Relation> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<Relation::Pair> pairs;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1) {
                pairs.push_back(slots[i]);
                pairs.emplace_back(slots[i].second, slots[i].first);
            }
        out.emplace_back(sp, std::move(pairs));
    }
    return out;
}

inline Rational random_threshold(Rng& rng, std::size_t max_den = 8) {
    std::size_t d = rng.range(1, max_den);
    Rational q(mpz_class(static_cast<unsigned long>(rng.range(0, d - 1))),
               mpz_class(static_cast<unsigned long>(d)));
    q.canonicalize();
    return q;
}

inline MeasureFormula random_measure_formula(Rng& rng, std::size_t depth, std::size_t max_den);

inline StateFormula random_formula(Rng& rng, std::size_t depth, std::size_t max_den = 8) {
    std::size_t choice = depth == 0 ? 0 : rng.range(0, 3);
    switch (choice) {
        case 0:
            return top();
        case 1:
            return conj(random_formula(rng, depth - 1, max_den), random_formula(rng, depth - 1, max_den));
        case 2:
            return diamond(random_measure_formula(rng, depth - 1, max_den));
        default:
            return box(random_measure_formula(rng, depth - 1, max_den));
    }
}

inline MeasureFormula random_measure_formula(Rng& rng, std::size_t depth, std::size_t max_den) {
    std::size_t choice = depth == 0 ? 0 : rng.range(0, 2);
    switch (choice) {
        case 1:
            return mconj(random_measure_formula(rng, depth - 1, max_den),
                         random_measure_formula(rng, depth - 1, max_den));
        case 2:
            return mdisj(random_measure_formula(rng, depth - 1, max_den),
                         random_measure_formula(rng, depth - 1, max_den));
        default:
            return threshold(random_formula(rng, depth == 0 ? 0 : depth - 1, max_den),
                             rng.chance(0.5) ? Cmp::LT : Cmp::GT, random_threshold(rng, max_den));
    }
}

}  // namespace stochnd::testing
