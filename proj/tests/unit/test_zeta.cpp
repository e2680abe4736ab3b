#include "error.hpp"
#include "generators.hpp"
#include "zeta.hpp"

#include <doctest.h>

#include <cmath>

using namespace majz;

namespace {

Real r(double v, unsigned prec = kDefaultPrecision) { return Real(v, prec); }

Real p(const char* text) { return Real::parse(text, kDefaultPrecision); }

ZetaPair uniform_vs_point() { return {Ell1Seq::of({0.5, 0.5}), Ell1Seq::of({1.0})}; }

ZetaPair failing_pair() { return {Ell1Seq::of({0.5, 0.25, 0.25}), Ell1Seq({p("0.4"), p("0.3"), p("0.3")})}; }

double rel(const Real& got, const Real& want) {
    const Real diff = abs(got - want);
    return want.is_zero() ? diff.to_double() : (diff / abs(want)).to_double();
}

// k-th derivative by central differences of the order-0 values.
template <class F>
Real central_difference(F&& value, const Real& s, int k, const Real& h) {
    auto at = [&](long m) { return value(s + h * m); };
    switch (k) {
        case 1:
            return (at(1) - at(-1)) / (h * 2L);
        case 2:
            return (at(1) - at(0) * 2L + at(-1)) / (h * h);
        default:
            return (at(2) - at(1) * 2L + at(-1) * 2L - at(-2)) / (h * h * h * 2L);
    }
}

}  // namespace

TEST_CASE("power_sum") {
    const TaylorJet one = power_sum(Ell1Seq::of({1.0}), r(2.5), 4, 128);
    CHECK(one.value() == r(1.0));
    for (std::size_t k = 1; k <= 4; ++k) {
        CHECK(one[k].is_zero());
    }

    const TaylorJet half = power_sum(Ell1Seq::of({0.5, 0.5}), r(2.0), 2, 128);
    CHECK(half.value() == r(0.5));
    const Real ln2 = log(r(2.0));
    CHECK(rel(half.derivative(1), -(ln2 * r(0.5))) < 1e-35);
    CHECK(std::abs(half.derivative(1).to_double() + 0.3466) < 1e-4);

    CHECK_THROWS_AS(power_sum(Ell1Seq::of({0.5}), r(1.0), 1, 128), Error);
    CHECK_THROWS_AS(power_sum(Ell1Seq::of({0.5}), r(0.5), 1, 128), Error);

    // zeros contribute nothing
    const TaylorJet z = power_sum(Ell1Seq::of({0.5, 0.0, 0.5, 0.0}), r(3.0), 3, 128);
    const TaylorJet nz = power_sum(Ell1Seq::of({0.5, 0.5}), r(3.0), 3, 128);
    for (std::size_t k = 0; k <= 3; ++k) {
        CHECK(z[k] == nz[k]);
    }
}

TEST_CASE("power_sum geometric closed form") {
    // sum (0.5 * 0.5^k)^s = 0.5^s / (1 - 0.5^s); at s = 2: 0.25 / 0.75
    const TaylorJet g = power_sum(Ell1Seq::geometric({}, 0.5, 0.5), r(2.0), 2, 128);
    CHECK(rel(g.value(), r(1.0) / r(3.0)) < 1e-35);

    const TruncatedPowerSum t = power_sum_truncated(Ell1Seq::geometric({}, 0.5, 0.5), r(2.0), 2, 200, 128);
    for (std::size_t k = 0; k <= 2; ++k) {
        CHECK(abs(t.jet[k] - g[k]) <= t.remainder_bound[k] + epsilon_pow2(120, 128));
    }
}

TEST_CASE("power_sum derivatives against finite differences") {
    const Ell1Seq s({p("0.4"), p("0.3"), p("0.2"), p("0.1")});
    const Ell1Seq g = Ell1Seq::geometric({0.25}, 0.3, 0.6);
    const Real h = epsilon_pow2(20, 128);
    for (const Ell1Seq* seq : {&s, &g}) {
        for (double sv : {1.2, 2.0, 7.5}) {
            const Real s0 = r(sv);
            const TaylorJet jet = power_sum(*seq, s0, 3, 128);
            auto value = [&](const Real& x) { return power_sum(*seq, x, 0, 128).value(); };
            for (int k = 1; k <= 3; ++k) {
                CHECK(rel(central_difference(value, s0, k, h), jet.derivative(k)) < 1e-6);
            }
        }
    }
}

TEST_CASE("zeta_jet") {
    const ZetaPair up = uniform_vs_point();
    CHECK(zeta_jet(up, r(2.0), 0, 128).value() == r(0.5));
    const Real s = r(3.7);
    CHECK(rel(zeta_jet(up, s, 0, 128).value(), r(1.0) - pow(r(2.0), r(1.0) - s)) < 1e-35);

    const ZetaPair same{up.a, up.a};
    const TaylorJet z = zeta_jet(same, r(2.0), 5, 128);
    for (std::size_t k = 0; k <= 5; ++k) {
        CHECK(z[k].is_zero());
    }

    const Real near_one = r(1.0) + epsilon_pow2(20, 128);
    CHECK(abs(zeta_jet(up, near_one, 0, 128).value()) <= r(1e-5));
    CHECK(abs(zeta_jet(failing_pair(), near_one, 0, 128).value()) <= r(1e-5));
}

TEST_CASE("zeta_at_one") {
    CHECK(zeta_at_one(uniform_vs_point()).is_holds());
    const Verdict v = zeta_at_one({Ell1Seq::of({0.5}), Ell1Seq::of({1.0})});
    REQUIRE(v.is_fails());
    const auto& w = std::get<MassWitness>(*v.witness());
    CHECK(w.mass_b - w.mass_a == r(0.5));
    CHECK(zeta_at_one({Ell1Seq::geometric({}, 0.5, 0.5), Ell1Seq::of({1.0})}).is_holds());
}

TEST_CASE("f_jet") {
    const ZetaPair up = uniform_vs_point();
    CHECK(rel(f_jet(up, r(2.0), 0).value(), r(0.25)) < 1e-35);

    const ZetaPair same{up.b, up.b};
    const TaylorJet z = f_jet(same, r(1.5), 4);
    for (std::size_t k = 0; k <= 4; ++k) {
        CHECK(z[k].is_zero());
    }

    CHECK_THROWS_AS(f_jet(up, r(1.0), 2), Error);

    const Real h = epsilon_pow2(20, 128);
    auto value = [&](const Real& x) { return f_jet(up, x, 0).value(); };
    const TaylorJet jet = f_jet(up, r(2.0), 3);
    for (int k = 1; k <= 3; ++k) {
        CHECK(rel(central_difference(value, r(2.0), k, h), jet.derivative(k)) < 1e-6);
    }
}

TEST_CASE("stable f matches the quotient route") {
    const ZetaPair pairs[] = {uniform_vs_point(), failing_pair(),
                              {Ell1Seq::of({0.5, 0.25}), Ell1Seq::geometric({}, 0.25, 0.75)}};
    for (const ZetaPair& pair : pairs) {
        for (double sv : {1.01, 1.3, 2.0, 10.0, 60.0}) {
            const TaylorJet st = f_jet(pair, r(sv, 256), 6, ZetaOptions{256});
            const TaylorJet qu = f_jet_quotient(pair, r(sv, 256), 6, 256);
            for (std::size_t k = 0; k <= 6; ++k) {
                const Real scale = max(abs(qu[k]), epsilon_pow2(150, 256));
                CHECK((abs(st[k] - qu[k]) / scale).to_double() < 1e-20);
            }
        }
    }
}

TEST_CASE("cm_test") {
    const CMReport ok = cm_test(uniform_vs_point());
    CHECK(ok.verdict.is_holds());
    CHECK(ok.orders_checked == 24);
    CHECK(ok.grid.size() == 64);
    CHECK(ok.precondition_met);

    CMConfig keep;
    keep.keep_samples = true;
    const Ell1Seq s = Ell1Seq::of({0.7, 0.2, 0.1});
    const CMReport same = cm_test({s, s}, keep);
    CHECK(same.verdict.is_holds());
    REQUIRE(same.samples.size() == 64 * 25);
    for (const CMSample& smp : same.samples) {
        CHECK(smp.value.is_zero());
    }

    const CMReport perm = cm_test({s, Ell1Seq::of({0.1, 0.7, 0.2})}, keep);
    CHECK(perm.verdict.is_holds());
    for (const CMSample& smp : perm.samples) {
        CHECK(abs(smp.value) <= smp.bound);
    }

    const CMReport bad = cm_test(failing_pair());
    REQUIRE(bad.verdict.is_fails());
    const auto& w = std::get<DerivativeWitness>(*bad.verdict.witness());
    CHECK(w.value.sign() < 0);
    const ZetaOptions twice{256};
    const SignedDerivatives again =
        CmEvaluator(failing_pair(), twice).signed_derivatives(Real::with_precision(w.s, 256), w.n);
    CHECK(again.values[w.n].sign() < 0);

    const CMReport unequal = cm_test({Ell1Seq::of({0.5}), Ell1Seq::of({1.0})});
    CHECK(!unequal.precondition_met);
}

TEST_CASE("cm_test is independent of thread count") {
    CMConfig one;
    CMConfig four;
    four.threads = 4;
    const CMReport a = cm_test(failing_pair(), one);
    const CMReport b = cm_test(failing_pair(), four);
    REQUIRE(a.verdict.is_fails());
    REQUIRE(b.verdict.is_fails());
    const auto& wa = std::get<DerivativeWitness>(*a.verdict.witness());
    const auto& wb = std::get<DerivativeWitness>(*b.verdict.witness());
    CHECK(wa.n == wb.n);
    CHECK(wa.s == wb.s);
    CHECK(wa.value == wb.value);
}

TEST_CASE("cm_refute_adaptive") {
    const CMReport bad = cm_refute_adaptive(failing_pair());
    CHECK(bad.verdict.is_fails());
    REQUIRE(bad.hockey_stick_witness.has_value());
    CHECK(bad.hockey_stick_witness->value.sign() < 0);

    const CMReport ok = cm_refute_adaptive(uniform_vs_point());
    CHECK(!ok.verdict.is_fails());

    const CMReport perm = cm_refute_adaptive({Ell1Seq::of({0.6, 0.4}), Ell1Seq::of({0.4, 0.6})});
    CHECK(!perm.verdict.is_fails());
}

TEST_CASE("stieltjes identity") {
    const IdentityCheck a = stieltjes_identity_check(Ell1Seq::of({0.5, 0.5}), r(2.0), 128);
    CHECK(a.residual <= epsilon_pow2(100, 128));
    CHECK(rel(a.rhs, r(0.5)) < 1e-35);

    const IdentityCheck b = stieltjes_identity_check(Ell1Seq::of({1.0}), r(3.0), 128);
    CHECK(b.residual.is_zero());
    CHECK(b.lhs == r(1.0));

    CHECK(stieltjes_sum(Ell1Seq::of({0.5, 0.5}), r(2.0), 128) == r(-0.5));

    CHECK_THROWS_AS(stieltjes_identity_check(Ell1Seq::of({1.0}), r(1.0), 128), Error);
    CHECK_THROWS_AS(stieltjes_identity_check(Ell1Seq::geometric({}, 0.5, 0.5), r(2.0), 128), Error);
}

TEST_CASE("mellin identity") {
    const IdentityCheck a = mellin_identity_check(uniform_vs_point(), r(2.0));
    CHECK(a.residual <= epsilon_pow2(100, 128));
    CHECK(rel(a.rhs, r(0.5)) < 1e-35);

    const IdentityCheck z = mellin_identity_check({Ell1Seq::of({0.5, 0.5}), Ell1Seq::of({0.5, 0.5})}, r(2.0));
    CHECK(z.lhs.is_zero());
    CHECK(z.rhs.is_zero());

    CHECK_THROWS_AS(mellin_identity_check({Ell1Seq::of({0.5}), Ell1Seq::of({1.0})}, r(2.0)), Error);
    CHECK_THROWS_AS(mellin_identity_check(uniform_vs_point(), r(1.0)), Error);

    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const SeqPair sp = random_pair(rng, 12, true, 128);
        for (double sv : {1.5, 2.0, 5.0}) {
            const IdentityCheck c = mellin_identity_check({sp.a, sp.b}, r(sv));
            CHECK(c.relative() <= epsilon_pow2(108, 128));
        }
    }
}

TEST_CASE("zeta_positivity") {
    const std::vector<Real> grid = SGrid{}.build(128);
    CHECK(zeta_positivity(uniform_vs_point(), grid).is_holds());
    const Verdict flip = zeta_positivity({Ell1Seq::of({1.0}), Ell1Seq::of({0.5, 0.5})}, grid);
    REQUIRE(flip.is_fails());
    CHECK(std::get<PointWitness>(*flip.witness()).value.sign() < 0);
    CHECK(zeta_positivity({Ell1Seq::of({1.0}), Ell1Seq::of({1.0})}, grid).is_inconclusive());
}

TEST_CASE("permutation and zero padding invariance") {
    const ZetaPair base = failing_pair();
    const ZetaPair moved{Ell1Seq::of({0.25, 0.0, 0.5, 0.25, 0.0}), Ell1Seq({p("0.3"), p("0.4"), Real(0L, 128), p("0.3")})};
    for (double sv : {1.1, 3.0}) {
        const TaylorJet x = f_jet(base, r(sv), 5);
        const TaylorJet y = f_jet(moved, r(sv), 5);
        for (std::size_t k = 0; k <= 5; ++k) {
            CHECK(abs(x[k] - y[k]) <= epsilon_pow2(100, 128) * max(abs(x[k]), r(1.0)));
        }
    }
    const CMReport a = cm_test(base);
    const CMReport b = cm_test(moved);
    CHECK(a.verdict.kind() == b.verdict.kind());
}
