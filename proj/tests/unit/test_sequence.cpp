#include "error.hpp"
#include "sequence.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace majz;

namespace {

Real r(double v) { return Real(v, kDefaultPrecision); }

Real p(const char* text) { return Real::parse(text, kDefaultPrecision); }

}  // namespace

TEST_CASE("validate") {
    CHECK(validate(Ell1Seq::of({0.5, 0.5})).is_holds());

    const Verdict neg = validate(Ell1Seq::of({0.5, -0.1}));
    REQUIRE(neg.is_fails());
    const auto& w = std::get<InvariantWitness>(*neg.witness());
    CHECK(w.index == 1);

    CHECK(validate(Ell1Seq::geometric({}, 0.5, 1.0)).is_fails());
    CHECK(validate(Ell1Seq::geometric({}, 0.5, 0.0)).is_fails());
    CHECK(validate(Ell1Seq::geometric({}, -0.5, 0.5)).is_fails());
    CHECK(validate(Ell1Seq::geometric({0.1}, 0.5, 0.5)).is_holds());
    CHECK(validate(Ell1Seq{}).is_holds());
}

TEST_CASE("total_mass") {
    CHECK(total_mass(Ell1Seq::of({0.5, 0.5}), 128) == r(1.0));
    CHECK(total_mass(Ell1Seq::geometric({}, 0.5, 0.5), 128) == r(1.0));

    const Ell1Seq s({p("0.1"), p("0.2"), p("0.3")});
    CHECK(abs(total_mass(s, 128) - p("0.6")) < epsilon_pow2(120, 128));
    CHECK(total_mass(Ell1Seq{}, 128).is_zero());
}

TEST_CASE("k_largest") {
    auto a = k_largest(Ell1Seq::of({0.5, 0.5}), 3, 128);
    REQUIRE(a.size() == 3);
    CHECK(a[0] == r(0.5));
    CHECK(a[1] == r(0.5));
    CHECK(a[2].is_zero());

    auto b = k_largest(Ell1Seq::geometric({0.3}, 0.4, 0.5), 3, 128);
    CHECK(b[0] == r(0.4));
    CHECK(b[1] == r(0.3));
    CHECK(b[2] == r(0.2));

    auto c = k_largest(Ell1Seq::of({0.7, 0.2, 0.1}), 1, 128);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == r(0.7));
}

TEST_CASE("k_largest prefers prefix on ties and is permutation invariant") {
    auto t = k_largest(Ell1Seq::geometric({0.2, 0.05}, 0.4, 0.5), 5, 128);
    CHECK(t[0] == r(0.4));
    CHECK(t[1] == r(0.2));
    CHECK(t[2] == r(0.2));
    CHECK(t[3] == r(0.1));
    CHECK(t[4] == r(0.05));

    std::mt19937_64 gen(7);
    std::vector<double> v{0.3, 0.01, 0.2, 0.2, 0.15, 0.09, 0.05};
    const auto ref = k_largest(Ell1Seq::geometric({0.3, 0.01, 0.2, 0.2, 0.15, 0.09, 0.05}, 0.1, 0.3), 12, 128);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(v.begin(), v.end(), gen);
        std::vector<Real> pre;
        for (double x : v) {
            pre.emplace_back(x, 128);
        }
        const auto got = k_largest(Ell1Seq(pre, GeometricTail{r(0.1), r(0.3)}), 12, 128);
        for (std::size_t k = 0; k < ref.size(); ++k) {
            CHECK(got[k] == ref[k]);
        }
    }
}

TEST_CASE("tensor") {
    const Ell1Seq t = tensor(Ell1Seq::of({0.5, 0.5}), Ell1Seq({p("0.6"), p("0.4")}), 128);
    REQUIRE(t.prefix().size() == 4);
    CHECK(abs(t.prefix()[0] - p("0.3")) < epsilon_pow2(120, 128));
    CHECK(abs(t.prefix()[3] - p("0.2")) < epsilon_pow2(120, 128));

    const Ell1Seq x({p("0.4"), p("0.4"), p("0.1"), p("0.1")});
    const Ell1Seq id = tensor(x, Ell1Seq::of({1.0}), 128);
    REQUIRE(id.prefix().size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(id.prefix()[i] == x.prefix()[i]);
    }

    const Ell1Seq e = tensor(x, Ell1Seq({p("0.6"), p("0.4")}), 128);
    CHECK(e.prefix().size() == 8);
    CHECK(abs(total_mass(e, 128) - r(1.0)) < epsilon_pow2(120, 128));

    CHECK_THROWS_AS(tensor(Ell1Seq::geometric({}, 0.5, 0.5), x, 128), Error);
    CHECK_THROWS_AS(tensor(x, Ell1Seq::geometric({}, 0.5, 0.5), 128), Error);
}

TEST_CASE("geometric tail split") {
    const GeometricTail g{p("0.3"), p("0.7")};
    for (std::size_t m : {0u, 1u, 5u, 40u}) {
        Real sum(0L, 128);
        for (std::size_t j = 0; j < m; ++j) {
            sum += tail_term(g, j, 128);
        }
        sum += tail_remainder(g, m, 128);
        CHECK(abs(sum - total_mass(Ell1Seq({}, g), 128)) < epsilon_pow2(118, 128));
    }
}

TEST_CASE("descending enumerator yields zeros after the support") {
    DescendingEnumerator e(Ell1Seq::of({0.25, 0.5}), 128);
    CHECK(e.next() == r(0.5));
    CHECK(e.next() == r(0.25));
    CHECK(e.next().is_zero());
    CHECK(e.position() == 3);
}
