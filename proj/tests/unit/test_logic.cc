#include <catch2/catch_amalgamated.hpp>

#include <variant>

#include "stochnd/error.hh"
#include "stochnd/logic.hh"
#include "stochnd/nlmp.hh"
#include "support/models.hh"
#include "support/random.hh"

using namespace stochnd;
using namespace stochnd::models;

namespace {

EffFn ef_a() { return filter_generate(kappa_a()); }

std::size_t error_position(std::string_view text) {
    try {
        parse_formula(text);
    } catch (const SyntaxError& e) {
        return e.position();
    }
    return std::string_view::npos;
}

}  // namespace

TEST_CASE("parsing") {
    auto f = parse_formula("<>[T > 1/2]");
    REQUIRE(f->kind == StateNode::Kind::Diamond);
    REQUIRE(f->body->kind == MeasureNode::Kind::Threshold);
    CHECK(f->body->arg->kind == StateNode::Kind::Top);
    CHECK(f->body->cmp == Cmp::GT);
    CHECK(f->body->q == Rational(1, 2));
    CHECK(equal(parse_formula("T & T"), conj(top(), top())));
    CHECK(to_string(parse_formula("  T&T&T ")) == "T & T & T");
    CHECK(to_string(parse_formula("T & (T & T)")) == "T & (T & T)");
    CHECK(to_string(parse_formula("[]([T < 0] | [T > 0] & [T > 1/3])")) ==
          "[]([T < 0] | [T > 0] & [T > 1/3])");
    CHECK(to_string(parse_formula("<>(([T < 2/4]))")) == "<>[T < 1/2]");
    CHECK(to_string(parse_formula("(<>[T > 0])")) == "<>[T > 0]");
}

TEST_CASE("parse errors") {
    CHECK(error_position("") == 0);
    CHECK(error_position("T &") == 3);
    CHECK(error_position("<>[T = 1/2]") == 5);
    CHECK(error_position("T T") == 2);
    try {
        parse_formula("<>[T > 1]");
        FAIL("accepted threshold 1");
    } catch (const SyntaxError& e) {
        CHECK(e.code() == Errc::ThresholdOutOfRange);
    }
    CHECK_THROWS_AS(threshold(top(), Cmp::GT, 1), Error);
}

TEST_CASE("print and parse round-trip") {
    testing::Rng rng(2024);
    for (int i = 0; i < 500; ++i) {
        StateFormula f = testing::random_formula(rng, rng.range(0, 4));
        std::string text = to_string(f);
        INFO(text);
        StateFormula g = parse_formula(text);
        CHECK(equal(f, g));
        CHECK(to_string(g) == text);
    }
}

TEST_CASE("evaluation") {
    Space sp = s3();
    EffFn p = ef_a();
    CHECK(eval_state(p, top()) == sp.full_set());
    CHECK(eval_state(p, parse_formula("<>[T > 1/2]")) == StateSet{true, true, false});
    CHECK(eval_state(p, parse_formula("[][T > 1/2]")) == StateSet{true, true, false});
    CHECK(eval_state(p, parse_formula("<>[T < 1/2]")) == StateSet{false, false, true});
    CHECK(eval_state(p, parse_formula("<>[<>[T > 1/2] > 1/2]")) == StateSet{false, false, false});
    CHECK(eval_state(p, parse_formula("<>[<>[T < 1/2] > 1/2]")) == StateSet{true, true, false});
    CHECK(eval_measure(p, parse_formula("<>[T > 0]")->body, delta(sp, 0)));

    UpperSet full = UpperSet::full(sp);
    UpperSet none = UpperSet::empty(sp);
    EffFn q(sp, {full, none, filter_of(set(sp, {delta(sp, 0), SubProb::zero(sp)}))});
    for (const auto& psi : {never(), always(), parse_formula("<>[T > 1/2]")->body}) {
        auto d = eval_state(q, diamond(psi));
        auto b = eval_state(q, box(psi));
        CHECK(d[0]);
        CHECK_FALSE(b[0]);
        CHECK_FALSE(d[1]);
        CHECK(b[1]);
    }
    CHECK(eval_state(q, parse_formula("<>[T > 1/2]"))[2] == false);
    CHECK(eval_state(q, parse_formula("[][T > 1/2]"))[2] == true);
}

TEST_CASE("logical equivalence examples") {
    Space sp = s3();
    CHECK(logical_equivalence(ef_a()).classes() == Partition{{0, 1}, {2}});
    UpperSet c = filter_of(set(sp, {measure(sp, {{0, "1/4"}})}));
    CHECK(logical_equivalence(EffFn(sp, {c, c, c})).classes() == Partition{{0, 1, 2}});

    auto trace = logical_equivalence_trace(ef_a());
    REQUIRE(!trace.empty());
    CHECK(trace.front().blocks == Partition{{0, 1, 2}});
    CHECK(to_string(trace.front().family.front().first) == "T");
}

TEST_CASE("distinguishing formulas") {
    Space sp = s3();
    Kernel k(sp, {set(sp, {delta(sp, 2)}), set(sp, {delta(sp, 2)}), set(sp, {SubProb::zero(sp)})});
    EffFn p = filter_generate(k);
    auto r = distinguish(p, 0, 2);
    REQUIRE(std::holds_alternative<Distinction>(r));
    const auto& d = std::get<Distinction>(r);
    StateSet ext = eval_state(p, d.formula);
    CHECK(ext[d.satisfied_by]);
    CHECK(ext[0] != ext[2]);
    CHECK(std::holds_alternative<Equivalent>(distinguish(ef_a(), 0, 1)));
}

TEST_CASE("logical equivalence coincides with bisimilarity") {
    testing::Rng rng(77);
    for (int i = 0; i < 150; ++i) {
        Space sp = testing::random_space(rng, rng.range(1, 4), 0.3);
        EffFn p = testing::random_ef(rng, sp);
        Relation l = logical_equivalence(p);
        INFO("case " << i);
        REQUIRE(l == greatest_ef_bisim(p));
        auto trace = logical_equivalence_trace(p);
        for (const auto& level : trace)
            for (const auto& [f, ext] : level.family) CHECK(eval_state(p, f) == ext);
        for (StateId s = 0; s < sp.size(); ++s)
            for (StateId t = s + 1; t < sp.size(); ++t) {
                auto r = distinguish(p, s, t);
                CHECK(std::holds_alternative<Equivalent>(r) == l.contains(s, t));
                if (auto* d = std::get_if<Distinction>(&r)) {
                    StateSet ext = eval_state(p, d->formula);
                    CHECK(ext[d->satisfied_by]);
                    CHECK(ext[s] != ext[t]);
                }
            }
        for (int j = 0; j < 20; ++j) {
            StateSet ext = eval_state(p, testing::random_formula(rng, 3));
            for (const auto& [s, t] : l.pairs()) CHECK(ext[s] == ext[t]);
        }
    }
}
