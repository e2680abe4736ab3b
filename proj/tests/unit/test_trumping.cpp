#include "error.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "trumping.hpp"

#include <doctest.h>

using namespace majz;

namespace {

Real p(const char* text) { return Real::parse(text, kDefaultPrecision); }

Ell1Seq fixture_x() { return Ell1Seq({p("0.4"), p("0.4"), p("0.1"), p("0.1")}); }
Ell1Seq fixture_y() { return Ell1Seq({p("0.5"), p("0.25"), p("0.25")}); }

}  // namespace

TEST_CASE("catalysis fixture by direct partial sums") {
    // x: 0.4, 0.8, 0.9, 1.0 against y: 0.5, 0.75, 1.0 -> k = 2 fails
    const Verdict plain = majorize_partial_sums(fixture_x(), fixture_y());
    REQUIRE(plain.is_fails());
    CHECK(std::get<IndexWitness>(*plain.witness()).k == 2);

    const Ell1Seq c({p("0.6"), p("0.4")});
    const Ell1Seq xc = tensor(fixture_x(), c, 128);
    const Ell1Seq yc = tensor(fixture_y(), c, 128);
    const auto ka = k_largest(xc, 8, 128);
    const auto kb = k_largest(yc, 8, 128);
    Real sa(0L, 128);
    Real sb(0L, 128);
    for (std::size_t k = 0; k < 8; ++k) {
        sa += ka[k];
        sb += kb[k];
        CHECK(sa <= sb + epsilon_pow2(120, 128));
    }
    CHECK(trump_check(fixture_x(), fixture_y(), c).is_holds());
    CHECK(trump_check(fixture_x(), fixture_y(), Ell1Seq::of({1.0})).is_fails());
}

TEST_CASE("trump_check rejects bad catalysts") {
    CHECK_THROWS_AS(trump_check(fixture_x(), fixture_y(), Ell1Seq::of({0.6, 0.0, 0.4})), Error);
    CHECK_THROWS_AS(trump_check(fixture_x(), fixture_y(), Ell1Seq{}), Error);
    CHECK_THROWS_AS(trump_check(fixture_x(), fixture_y(), Ell1Seq::geometric({}, 0.5, 0.5)), Error);
}

TEST_CASE("identity catalyst, monotonicity and scale invariance") {
    Rng rng(9);
    for (int i = 0; i < 40; ++i) {
        const SeqPair sp = random_pair(rng, 6, i % 2 == 0, 128);
        CHECK(trump_check(sp.a, sp.b, Ell1Seq::of({1.0})).kind() == majorize_partial_sums(sp.a, sp.b).kind());

        const SeqPair tp = t_transform_pair(rng, 6, 128);
        const Ell1Seq c = dyadic_sequence(random_composition(rng, 3, 1024), 128);
        CHECK(trump_check(tp.a, tp.b, c).is_holds());

        const Ell1Seq c2 = scaled(c, Real(0.375, 128), 128);
        CHECK(trump_check(sp.a, sp.b, c).kind() == trump_check(sp.a, sp.b, c2).kind());
    }
}

TEST_CASE("simplex_compositions") {
    const auto two = simplex_compositions(2, 20);
    REQUIRE(two.size() == 10);
    CHECK(two[0] == std::vector<long>{10, 10});
    CHECK(two[1] == std::vector<long>{11, 9});
    CHECK(two[2] == std::vector<long>{12, 8});
    CHECK(two.back() == std::vector<long>{19, 1});
    const auto three = simplex_compositions(3, 6);
    CHECK(three.size() == 3);  // 2+2+2, 3+2+1, 4+1+1
}

TEST_CASE("catalyst_search") {
    const TrumpReport r = catalyst_search(fixture_x(), fixture_y());
    REQUIRE(r.verdict.is_holds());
    REQUIRE(r.catalyst.has_value());
    CHECK(r.catalyst->prefix()[0] == p("0.6"));
    CHECK(r.catalyst->prefix()[1] == p("0.4"));
    CHECK(r.candidates_tried == 4);
    CHECK(majorize_partial_sums(tensor(fixture_x(), *r.catalyst, 128), tensor(fixture_y(), *r.catalyst, 128))
              .is_holds());

    CatalystSearchConfig par;
    par.threads = 4;
    CHECK(dump(to_json(catalyst_search(fixture_x(), fixture_y(), par))) == dump(to_json(r)));

    const TrumpReport mass = catalyst_search(Ell1Seq::of({0.5}), Ell1Seq::of({1.0}));
    CHECK(mass.verdict.is_fails());

    const TrumpReport trivial = catalyst_search(Ell1Seq::of({0.5, 0.5}), Ell1Seq::of({1.0}));
    CHECK(trivial.verdict.is_holds());
    CHECK(trivial.candidates_tried == 1);
    REQUIRE(trivial.catalyst.has_value());
    CHECK(trivial.catalyst->prefix().size() == 1);

    CatalystSearchConfig none;
    none.budget = 0;
    CHECK(catalyst_search(fixture_x(), fixture_y(), none).verdict.is_inconclusive());

    CatalystSearchConfig small;
    small.budget = 3;
    const TrumpReport cut = catalyst_search(fixture_x(), fixture_y(), small);
    CHECK(cut.verdict.is_inconclusive());
    CHECK(cut.candidates_tried == 3);
    CHECK(cut.closest.has_value());
}

TEST_CASE("conjecture_probe") {
    const EvidenceRecord up = conjecture_probe({Ell1Seq::of({0.5, 0.5}), Ell1Seq::of({1.0})});
    REQUIRE(up.positivity.has_value());
    CHECK(up.positivity->is_holds());
    REQUIRE(up.search.has_value());
    CHECK(up.search->candidates_tried == 1);
    REQUIRE(up.product_cm.has_value());
    CHECK(up.product_cm->verdict.is_holds());

    const EvidenceRecord cat = conjecture_probe({fixture_x(), fixture_y()});
    REQUIRE(cat.search.has_value());
    CHECK(cat.search->verdict.is_holds());
    REQUIRE(cat.product_cm.has_value());
    CHECK(!cat.product_cm->verdict.is_fails());
    CHECK(!cat.candidate_counterexample);

    // uniform (1/3, 1/3, 1/3) against (0.5, 0.5, 0): zeta(s) = 2^(1-s) - 3^(1-s) > 0,
    // reversed pair flips the sign everywhere
    const Ell1Seq third({Real(1L, 128) / 3L, Real(1L, 128) / 3L, Real(1L, 128) / 3L});
    const EvidenceRecord flip = conjecture_probe({Ell1Seq::of({0.5, 0.5}), third});
    REQUIRE(flip.positivity.has_value());
    CHECK(flip.positivity->is_fails());
    CHECK(!flip.search.has_value());
    CHECK(flip.note.find("conjecture hypothesis unmet") != std::string::npos);
}
