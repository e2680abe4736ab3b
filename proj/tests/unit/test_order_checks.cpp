#include "error.hpp"
#include "generators.hpp"
#include "order_checks.hpp"

#include <doctest.h>

using namespace majz;

namespace {

Real r(double v) { return Real(v, kDefaultPrecision); }

Real p(const char* text) { return Real::parse(text, kDefaultPrecision); }

Real brute_hockey(const Ell1Seq& s, const Real& t) {
    Real sum(0L, 128);
    for (const Real& x : s.prefix()) {
        if (x > t) {
            sum += x - t;
        }
    }
    return sum;
}

}  // namespace

TEST_CASE("counting_function") {
    const CountingFunction a = counting_function(Ell1Seq::of({0.5, 0.5}), 100, 128);
    REQUIRE(a.step.breakpoints.size() == 1);
    CHECK(a.step.breakpoints[0] == r(0.5));
    CHECK(a.step(r(0.25)) == 2);
    CHECK(a.step(r(0.5)) == 2);
    CHECK(a.step(r(0.6)) == 0);

    const CountingFunction b = counting_function(Ell1Seq::of({0.7, 0.2, 0.1}), 100, 128);
    CHECK(b.step(r(0.2)) == 2);
    CHECK(b.step(r(0.05)) == 3);

    const CountingFunction g = counting_function(Ell1Seq::geometric({}, 0.4, 0.5), 3, 128);
    REQUIRE(g.step.breakpoints.size() == 3);
    CHECK(g.step.breakpoints[0] == r(0.1));
    CHECK(g.step.breakpoints[2] == r(0.4));
    CHECK(g.step(r(0.4)) == 1);
    CHECK(g.step(r(0.2)) == 2);
    CHECK(g.step(r(0.1)) == 3);
    CHECK(g.exact_above == r(0.05));
    CHECK(g.remainder_mass == r(0.1));
}

TEST_CASE("hockey_stick pointwise") {
    CHECK(hockey_stick(Ell1Seq::of({0.5, 0.5}), r(0.25), 128) == r(0.5));
    CHECK(hockey_stick(Ell1Seq::of({0.5, 0.5}), r(0.5), 128).is_zero());
    CHECK(hockey_stick(Ell1Seq::of({0.5, 0.5}), r(3.0), 128).is_zero());

    // (0.7 - 0.15) + (0.2 - 0.15) by direct summation
    const Ell1Seq s({p("0.7"), p("0.2"), p("0.1")});
    const Real t = p("0.15");
    CHECK(abs(hockey_stick(s, t, 128) - p("0.6")) < epsilon_pow2(120, 128));
    CHECK(abs(hockey_stick(s, t, 128) - brute_hockey(s, t)) < epsilon_pow2(120, 128));

    CHECK_THROWS_AS(hockey_stick(s, r(0.0), 128), Error);
    CHECK_THROWS_AS(hockey_stick(s, r(-1.0), 128), Error);

    // geometric: 0.5, 0.25, 0.125, ... above t = 0.2 -> 0.3 + 0.05
    CHECK(abs(hockey_stick(Ell1Seq::geometric({}, 0.5, 0.5), p("0.2"), 128) - p("0.35")) <
          epsilon_pow2(120, 128));
}

TEST_CASE("hockey_stick_fn") {
    const HockeyStickFn h = hockey_stick_fn(Ell1Seq::of({0.5, 0.5}), 128);
    CHECK(h.fn(r(0.0)) == r(1.0));
    CHECK(h.fn(r(0.25)) == r(0.5));
    CHECK(h.fn(r(0.75)).is_zero());
    CHECK(h.fn.slopes.front() == r(-2.0));

    const HockeyStickFn one = hockey_stick_fn(Ell1Seq::of({1.0}), 128);
    CHECK(one.fn(r(0.375)) == r(0.625));

    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const SeqPair sp = random_pair(rng, 12, true, 128);
        const HockeyStickFn f = hockey_stick_fn(sp.a, 128);
        CHECK(f.fn(r(0.0)) == total_mass(sp.a, 128));
        for (int j = 0; j < 100; ++j) {
            const Real t(rng.uniform() * 0.6 + 1e-9, 128);
            CHECK(f.fn(t) == hockey_stick(sp.a, t, 128));
        }
    }
}

TEST_CASE("integrate_above matches hockey_stick") {
    const Ell1Seq s = Ell1Seq::of({0.375, 0.25, 0.25, 0.125});
    const CountingFunction a = counting_function(s, 10, 128);
    for (double t : {0.01, 0.125, 0.2, 0.25, 0.3, 0.5}) {
        CHECK(integrate_above(a.step, r(t)) == hockey_stick(s, r(t), 128));
    }
}

TEST_CASE("majorize_partial_sums") {
    CHECK(majorize_partial_sums(Ell1Seq::of({0.5, 0.5}), Ell1Seq::of({1.0})).is_holds());

    const Verdict v = majorize_partial_sums(Ell1Seq::of({0.5, 0.25, 0.25}), Ell1Seq({p("0.4"), p("0.3"), p("0.3")}));
    REQUIRE(v.is_fails());
    const auto& w = std::get<IndexWitness>(*v.witness());
    CHECK(w.k == 1);
    CHECK(w.sum_a == r(0.5));

    const Ell1Seq s({p("0.7"), p("0.2"), p("0.1")});
    CHECK(majorize_partial_sums(s, s).is_holds());

    const Verdict mass = majorize_partial_sums(Ell1Seq::of({0.5}), Ell1Seq::of({1.0}));
    REQUIRE(mass.is_fails());
    CHECK(std::holds_alternative<MassWitness>(*mass.witness()));
}

TEST_CASE("majorize_hockey_stick") {
    CHECK(majorize_hockey_stick(Ell1Seq::of({0.5, 0.5}), Ell1Seq::of({1.0})).is_holds());

    const Ell1Seq a = Ell1Seq::of({0.5, 0.25, 0.25});
    const Ell1Seq b({p("0.4"), p("0.3"), p("0.3")});
    const Verdict v = majorize_hockey_stick(a, b);
    REQUIRE(v.is_fails());
    const auto& w = std::get<ThresholdWitness>(*v.witness());
    CHECK(w.value.sign() < 0);
    CHECK(w.t >= r(0.25));
    CHECK(w.t <= r(0.5));
    CHECK(hockey_stick(b, w.t, 128) - hockey_stick(a, w.t, 128) == w.value);

    CHECK(majorize_hockey_stick(a, a).is_holds());
    CHECK(hockey_stick_min(a, a, 128).is_zero());
}

TEST_CASE("zero sequences and unequal masses") {
    CHECK(majorize_partial_sums(Ell1Seq{}, Ell1Seq{}).is_holds());
    CHECK(majorize_hockey_stick(Ell1Seq{}, Ell1Seq{}).is_holds());
    CHECK(majorize_partial_sums(Ell1Seq{}, Ell1Seq::of({0.5})).is_fails());
    CHECK(majorize_hockey_stick(Ell1Seq::of({0.5}), Ell1Seq{}).is_fails());
}

TEST_CASE("tailed comparisons") {
    const Ell1Seq g = Ell1Seq::geometric({}, 0.5, 0.5);
    CHECK(majorize_partial_sums(g, Ell1Seq::of({1.0})).is_holds());
    CHECK(majorize_partial_sums(Ell1Seq::of({1.0}), g).is_fails());
    CHECK(majorize_hockey_stick(g, Ell1Seq::of({1.0})).is_holds());
    CHECK(majorize_hockey_stick(Ell1Seq::of({1.0}), g).is_fails());
    CHECK(!majorize_partial_sums(g, g).is_fails());
}

TEST_CASE("tie policy on the mass band") {
    const Real tiny = epsilon_pow2(125, 128);
    const Ell1Seq a({r(0.5) + tiny, r(0.5)});
    const Ell1Seq b = Ell1Seq::of({1.0});
    OrderOptions strict;
    strict.ties = TiePolicy::Strict;
    CHECK(majorize_partial_sums(a, b).is_holds());
    CHECK(majorize_partial_sums(a, b, strict).is_inconclusive());
}

TEST_CASE("partial order sanity") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const SeqPair sp = t_transform_pair(rng, 8, 128);
        CHECK(majorize_partial_sums(sp.a, sp.a).is_holds());
        CHECK(majorize_partial_sums(sp.a, sp.b).is_holds());
        CHECK(majorize_hockey_stick(sp.a, sp.b).is_holds());
        const std::size_t d = sp.b.support_size();
        std::vector<Real> uniform(d, Real(1L, 128) / static_cast<long>(d));
        CHECK(!majorize_partial_sums(Ell1Seq(uniform), sp.b).is_fails());
    }
}
