#include <catch2/catch_amalgamated.hpp>

#include "stochnd/error.hh"
#include "stochnd/effectivity.hh"
#include "stochnd/nlmp.hh"
#include "support/models.hh"
#include "support/oracles.hh"
#include "support/random.hh"

using namespace stochnd;
using namespace stochnd::models;

namespace {

EffFn ef_a() { return filter_generate(kappa_a()); }

EffFn points(const Space& sp, std::vector<StateId> target) {
    std::vector<UpperSet> u;
    for (StateId s : target) u.push_back(filter_of(set(sp, {delta(sp, s)})));
    return EffFn(sp, std::move(u));
}

}  // namespace

TEST_CASE("ef state bisimulation examples") {
    Space sp = s3();
    CHECK(is_ef_state_bisim(ef_a(), swap(sp, 0, 1)));
    CHECK(is_ef_state_bisim(ef_a(), Relation::empty(sp)));
    CHECK_FALSE(is_ef_state_bisim(points(sp, {0, 2, 2}), swap(sp, 0, 1)));
    try {
        is_ef_state_bisim(ef_a(), Relation(sp, {{0, 1}}));
        FAIL("accepted a non-symmetric relation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonSymmetricRelation);
    }
}

TEST_CASE("greatest ef bisimulation examples") {
    Space sp = s3();
    Relation g = greatest_ef_bisim(ef_a());
    CHECK(g.classes() == Partition{{0, 1}, {2}});
    auto all = testing::all_symmetric(sp);
    CHECK(oracle::largest_accepted(all, [&](const Relation& r) { return oracle::ef_bisim(ef_a(), r); }) == g);

    UpperSet c = filter_of(set(sp, {measure(sp, {{1, "1/2"}})}));
    CHECK(greatest_ef_bisim(EffFn(sp, {c, c, c})) == Relation::full(sp));

    // s0 loops, s1 moves to s2, s2 is dead.
    EffFn p(sp, {points(sp, {0, 2, 2}).portfolio()[0], points(sp, {0, 2, 2}).portfolio()[1],
                 filter_of(set(sp, {SubProb::zero(sp)}))});
    CHECK(greatest_ef_bisim(p) == Relation::identity(sp));
    CHECK(oracle::largest_accepted(all, [&](const Relation& r) { return oracle::ef_bisim(p, r); }) ==
          Relation::identity(sp));
}

TEST_CASE("ef bisimulation matches the set-level definition") {
    testing::Rng rng(41);
    testing::EfShape shape;
    shape.pool = 3;
    shape.max_gens = 2;
    shape.max_members = 2;
    shape.max_den = 3;
    for (int i = 0; i < 40; ++i) {
        Space sp = testing::random_space(rng, rng.range(1, 3), 0.3);
        EffFn p = testing::random_ef(rng, sp, shape);
        Relation g = greatest_ef_bisim(p);
        auto all = testing::all_symmetric(sp);
        INFO("case " << i);
        for (const auto& r : all) CHECK(is_ef_state_bisim(p, r) == oracle::ef_bisim(p, r));
        CHECK(g.is_equivalence());
        CHECK(oracle::largest_accepted(all, [&](const Relation& r) { return oracle::ef_bisim(p, r); }) == g);
    }
}

TEST_CASE("ef morphisms") {
    Space sp = s3();
    Space t = t2();
    CHECK(is_ef_morphism(MeasurableMap::identity(sp), ef_a(), ef_a()));
    CHECK(is_strong_morphism(MeasurableMap::identity(sp), ef_a(), ef_a()));

    Quotient qa = quotient(ef_a(), greatest_ef_bisim(ef_a()));
    CHECK(qa.system.space().size() == 2);
    CHECK(is_ef_morphism(qa.eta, ef_a(), qa.system));

    auto f = f3to2(sp, t);
    EffFn q = filter_generate(Kernel(t, {set(t, {delta(t, 1)}), set(t, {SubProb::zero(t)})}));
    CHECK(is_ef_morphism(f, ef_a(), q));
    CHECK(is_strong_morphism(f, ef_a(), q));
    EffFn bent(t, {filter_of(set(t, {measure(t, {{1, "7/8"}})})), q(1)});
    CHECK_FALSE(is_ef_morphism(f, ef_a(), bent));

    Space two = Space::discrete({"s0", "s1"});
    Space one = Space::discrete({"t"});
    EffFn p = points(two, {0, 1});
    EffFn pt = points(one, {0});
    CHECK_FALSE(is_strong_morphism(MeasurableMap(two, one, {0, 0}), p, pt));
    CHECK_THROWS_AS(is_strong_morphism(MeasurableMap(sp, t, {0, 0, 0}), ef_a(), q), Error);
}

TEST_CASE("quotients") {
    Space sp = s3();
    Quotient id = quotient(ef_a(), Relation::identity(sp));
    CHECK(id.system.space().size() == 3);
    CHECK(id.system.space().name(0) == "{s0}");
    Quotient two = quotient(ef_a(), greatest_ef_bisim(ef_a()));
    CHECK(two.system.space().states() == std::vector<std::string>{"{s0,s1}", "{s2}"});
    try {
        quotient(ef_a(), Relation::from_partition(sp, {{0, 2}, {1}}));
        FAIL("accepted a non-congruence");
    } catch (const CongruenceError& e) {
        CHECK(e.first() == "s0");
        CHECK(e.second() == "s2");
    }
    CHECK_THROWS_AS(quotient(ef_a(), swap(sp, 0, 1)), Error);
}

TEST_CASE("subsystems") {
    Space sp = s3();
    CHECK(is_subsystem(ef_a(), sp));
    CHECK(is_subsystem(ef_a(), sp.coarsen({{0, 1}, {2}})));
    CHECK_FALSE(is_subsystem(ef_a(), sp.coarsen({{0, 2}, {1}})));
    EffFn sub = subsystem(ef_a(), sp.coarsen({{0, 1}, {2}}));
    CHECK(sub.space().atom_count() == 2);
    CHECK_THROWS_AS(subsystem(ef_a(), sp.coarsen({{0, 2}, {1}})), Error);

    Space t = t2();
    auto f = f3to2(sp, t);
    CHECK(is_subsystem(ef_a(), preimage_space(f)));
}

TEST_CASE("duals, sums and markov kernels") {
    Space sp = s3();
    CHECK(dual_ef(ef_a()) == angelize(kappa_a()));
    CHECK(dual_ef(dual_ef(ef_a())) == ef_a());

    EffSum s = sum_ef(ef_a(), ef_a());
    CHECK(s.system.space().size() == 6);
    CHECK(s.system(3) == push_upper(s.sum.right, ef_a()(0)));

    EffFn m = from_markov_kernel(sp, {delta(sp, 0), delta(sp, 1), delta(sp, 2)});
    for (StateId x = 0; x < 3; ++x) {
        REQUIRE(m(x).generators().size() == 1);
        CHECK(m(x).generators().front() == set(sp, {delta(sp, x)}));
    }
    CHECK(m.is_finitely_supported());
}

TEST_CASE("filters preserve and reflect bisimulations") {
    testing::Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        Space sp = testing::random_space(rng, rng.range(1, 3), 0.3);
        Kernel k = testing::random_kernel(rng, sp, 3, 3, 4);
        EffFn f = filter_generate(k);
        for (const auto& r : testing::all_symmetric(sp)) CHECK(is_state_bisim(k, r) == is_ef_state_bisim(f, r));
    }
}
