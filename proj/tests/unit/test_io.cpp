#include "error.hpp"
#include "io.hpp"
#include "selftest.hpp"

#include <doctest.h>

#include <string>

using namespace majz;

namespace {

std::string parse_error(const std::string& text, bool positive = false) {
    try {
        parse_sequence(text, 128, positive);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parse sequences") {
    const Ell1Seq a = parse_sequence(R"({"prefix": [0.5, "0.25", 0.25]})", 128);
    REQUIRE(a.prefix().size() == 3);
    CHECK(a.finitely_supported());
    CHECK(a.prefix()[1] == Real(0.25, 128));

    const Ell1Seq g = parse_sequence(R"({"prefix": [], "tail": {"kind": "geometric", "first": "0.5", "ratio": 0.5}})", 128);
    REQUIRE(g.geometric_tail() != nullptr);
    CHECK(total_mass(g, 128) == Real(1.0, 128));

    // decimal text is parsed at full precision, not through a double
    const Ell1Seq t = parse_sequence(R"({"prefix": [0.1]})", 256);
    CHECK(t.prefix()[0] == Real::parse("0.1", 256));
    CHECK(t.prefix()[0] != Real(0.1, 256));
}

TEST_CASE("parse errors carry the location") {
    CHECK(parse_error(R"({"prefix": [0.5, -0.1]})").find("/prefix/1") != std::string::npos);
    CHECK(parse_error(R"({"prefix": [0.5, 0.5)").size() > 0);
    CHECK(parse_error(R"({"prefix": [0.5], "extra": 1})").find("extra") != std::string::npos);
    CHECK(parse_error(R"({"prefix": [0.5], "tail": {"kind": "harmonic"}})").find("/tail/kind") !=
          std::string::npos);
    CHECK(parse_error(R"({"prefix": [], "tail": {"kind": "geometric", "first": 0.5, "ratio": 1}})").find("ratio") !=
          std::string::npos);
    CHECK(parse_error(R"({"prefix": ["abc"]})").find("/prefix/0") != std::string::npos);
    CHECK(parse_error(R"({"prefix": [0.5, 0]})", true).find("/prefix/1") != std::string::npos);
    CHECK(parse_error(R"([0.5])").size() > 0);
    CHECK(parse_error(R"({"tail": {"kind": "zero"}})").find("prefix") != std::string::npos);
}

TEST_CASE("json output is stable") {
    const Ell1Seq a = parse_sequence(R"({"prefix": ["0.1", 0.7]})", 128);
    const Json j = to_json(a);
    CHECK(j["prefix"][0] == "0.1");
    CHECK(j["prefix"][1] == "0.7");
    CHECK(j["tail"]["kind"] == "zero");
    CHECK(parse_sequence(j.dump(), 128).prefix()[0] == a.prefix()[0]);

    const Json v = to_json(majorize_partial_sums(Ell1Seq::of({0.5, 0.25, 0.25}), Ell1Seq::of({0.375, 0.375, 0.25})));
    CHECK(v["verdict"] == "fails");
    CHECK(v["witness"]["k"] == 1);
    CHECK(dump(v) == dump(v));
}

TEST_CASE("zeta table csv") {
    const ZetaPair up{Ell1Seq::of({0.5, 0.5}), Ell1Seq::of({1.0})};
    SGrid g{2.0, 8.0, 3};
    const std::string csv = zeta_table_csv(up, g, 128);
    CHECK(csv.rfind("s,zeta,f,f1,f2,f3\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) {
        lines += c == '\n';
    }
    CHECK(lines == 4);
    // rows at s = 2, 4, 8: zeta = 1 - 2^(1-s)
    CHECK(csv.find("\n2,0.5,0.25,") != std::string::npos);
    CHECK(csv.find("\n4,0.875,") != std::string::npos);
    CHECK(csv.find("\n8,0.9921875,") != std::string::npos);
}

TEST_CASE("selftest") {
    SelftestConfig c;
    c.cases = 20;
    const SelftestReport r = run_selftest(c);
    CHECK(r.passed());
    for (const SuiteResult& s : r.suites) {
        INFO(s.name << ": " << s.first_failure);
        CHECK(s.failures == 0);
    }

    SelftestConfig zero;
    zero.cases = 0;
    const SelftestReport z = run_selftest(zero);
    CHECK(z.passed());
    for (const SuiteResult& s : z.suites) {
        CHECK(s.cases == 0);
    }

    SelftestConfig par = c;
    par.threads = 4;
    CHECK(dump(to_json(run_selftest(par))) == dump(to_json(r)));

    CHECK(case_seed(1, 2, 3) == case_seed(1, 2, 3));
    CHECK(case_seed(1, 2, 3) != case_seed(1, 3, 2));
    CHECK(case_seed(1, 2, 3) != case_seed(2, 2, 3));
}
