// Exercises libmajorize through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <majorize/majorize.h>

#include <cstring>
#include <string>

namespace {

struct Fixture {
    mj_context* ctx = nullptr;
    Fixture() { REQUIRE(mj_context_new(&ctx) == MJ_OK); }
    ~Fixture() { mj_context_free(ctx); }

    mj_sequence* seq(const char* json, int positive = 0) const {
        mj_sequence* s = nullptr;
        REQUIRE(mj_sequence_parse(ctx, json, positive, &s) == MJ_OK);
        return s;
    }
};

}  // namespace

TEST_CASE("version and defaults") {
    CHECK(std::strlen(mj_version()) > 0);
    mj_context* ctx = nullptr;
    CHECK(mj_context_new(nullptr) == MJ_ERR_INVALID_ARGUMENT);
    REQUIRE(mj_context_new(&ctx) == MJ_OK);
    CHECK(mj_context_set_precision(ctx, 52) == MJ_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(mj_last_error()) > 0);
    CHECK(mj_context_set_precision(ctx, 256) == MJ_OK);
    CHECK(mj_context_set_cm_grid(ctx, 1.0, 10.0, 8) == MJ_ERR_INVALID_ARGUMENT);
    CHECK(mj_context_set_cm_grid(ctx, 2.0, 1.5, 8) == MJ_ERR_INVALID_ARGUMENT);
    CHECK(mj_context_set_cm_grid(ctx, 1.5, 10.0, 0) == MJ_ERR_INVALID_ARGUMENT);
    CHECK(mj_context_set_search(ctx, 1, 2, 20, 0, 10) == MJ_ERR_INVALID_ARGUMENT);
    CHECK(mj_context_set_search(ctx, 2, 2, 1, 0, 10) == MJ_ERR_INVALID_ARGUMENT);
    mj_context_free(ctx);
    mj_context_free(nullptr);
    mj_sequence_free(nullptr);
    mj_report_free(nullptr);
}

TEST_CASE("sequence parsing") {
    Fixture f;
    mj_sequence* s = f.seq(R"({"prefix": ["0.25", 0.75]})");
    char buf[64];
    REQUIRE(mj_sequence_mass(f.ctx, s, buf, sizeof buf) == MJ_OK);
    CHECK(std::string(buf) == "1");
    CHECK(mj_sequence_mass(f.ctx, s, buf, 1) == MJ_ERR_INVALID_ARGUMENT);
    mj_sequence_free(s);

    mj_sequence* bad = nullptr;
    CHECK(mj_sequence_parse(f.ctx, "{\"prefix\": [", 0, &bad) == MJ_ERR_PARSE);
    CHECK(bad == nullptr);
    CHECK(mj_sequence_parse(f.ctx, R"({"prefix": [0.5, -1]})", 0, &bad) == MJ_ERR_PARSE);
    CHECK(std::string(mj_last_error()).find("/prefix/1") != std::string::npos);
    CHECK(mj_sequence_load(f.ctx, "/nonexistent/file.json", 0, &bad) == MJ_ERR_IO);

    REQUIRE(mj_context_set_require_normalized(f.ctx, 1) == MJ_OK);
    mj_sequence* half = f.seq(R"({"prefix": [0.5]})");
    mj_sequence* one = f.seq(R"({"prefix": [1]})");
    mj_report* r = nullptr;
    CHECK(mj_check(f.ctx, half, one, &r) == MJ_ERR_INVALID_ARGUMENT);
    CHECK(std::string(mj_last_error()).find("not 1") != std::string::npos);
    CHECK(r == nullptr);
    mj_sequence_free(half);
    mj_sequence_free(one);
}

TEST_CASE("check") {
    Fixture f;
    mj_sequence* a = f.seq(R"({"prefix": [0.5, 0.5]})");
    mj_sequence* b = f.seq(R"({"prefix": [1.0]})");
    mj_report* r = nullptr;
    REQUIRE(mj_check(f.ctx, a, b, &r) == MJ_OK);
    CHECK(mj_report_verdict(r) == MJ_HOLDS);
    CHECK(mj_report_exit_code(r) == 0);
    const std::string json = mj_report_json(r);
    CHECK(json.find("\"command\": \"check\"") != std::string::npos);
    CHECK(json.find("\"seed\"") != std::string::npos);
    const std::string line = mj_report_json_line(r);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(std::string(mj_report_text(r)).find("overall: holds") != std::string::npos);
    mj_report_free(r);

    mj_sequence* c = f.seq(R"({"prefix": [0.5, 0.25, 0.25]})");
    mj_sequence* d = f.seq(R"({"prefix": ["0.4", "0.3", "0.3"]})");
    REQUIRE(mj_check(f.ctx, c, d, &r) == MJ_OK);
    CHECK(mj_report_verdict(r) == MJ_FAILS);
    CHECK(mj_report_exit_code(r) == 1);
    mj_report_free(r);

    CHECK(mj_check(f.ctx, nullptr, d, &r) == MJ_ERR_INVALID_ARGUMENT);
    mj_sequence_free(a);
    mj_sequence_free(b);
    mj_sequence_free(c);
    mj_sequence_free(d);
}

TEST_CASE("zeta table") {
    Fixture f;
    mj_sequence* a = f.seq(R"({"prefix": [0.5, 0.5]})");
    mj_sequence* b = f.seq(R"({"prefix": [1.0]})");
    mj_report* r = nullptr;
    REQUIRE(mj_zeta_table(f.ctx, a, b, 5, &r) == MJ_OK);
    const std::string csv = mj_report_csv(r);
    CHECK(csv.rfind("s,zeta,f,f1,f2,f3\n", 0) == 0);
    std::size_t rows = 0;
    for (char ch : csv) {
        rows += ch == '\n';
    }
    CHECK(rows == 6);
    mj_report_free(r);
    mj_sequence_free(a);
    mj_sequence_free(b);
}

TEST_CASE("trump and probe") {
    Fixture f;
    mj_sequence* x = f.seq(R"({"prefix": [0.4, 0.4, 0.1, 0.1]})");
    mj_sequence* y = f.seq(R"({"prefix": [0.5, 0.25, 0.25]})");
    mj_sequence* c = f.seq(R"({"prefix": [0.6, 0.4]})", 1);
    mj_report* r = nullptr;
    REQUIRE(mj_trump(f.ctx, x, y, c, &r) == MJ_OK);
    CHECK(mj_report_exit_code(r) == 0);
    CHECK(std::string(mj_report_json(r)).find("\"0.6\"") != std::string::npos);
    mj_report_free(r);

    REQUIRE(mj_trump(f.ctx, x, y, nullptr, &r) == MJ_OK);
    CHECK(mj_report_verdict(r) == MJ_HOLDS);
    mj_report_free(r);

    REQUIRE(mj_context_set_search(f.ctx, 2, 2, 20, 0, 0) == MJ_OK);
    REQUIRE(mj_trump(f.ctx, x, y, nullptr, &r) == MJ_OK);
    CHECK(mj_report_exit_code(r) == 2);
    mj_report_free(r);

    REQUIRE(mj_context_set_search(f.ctx, 2, 2, 20, 0, 1000) == MJ_OK);
    REQUIRE(mj_probe(f.ctx, x, y, &r) == MJ_OK);
    CHECK(mj_report_exit_code(r) == 0);
    mj_report_free(r);

    mj_sequence* zero = f.seq(R"({"prefix": [0.5, 0, 0.5]})");
    CHECK(mj_trump(f.ctx, x, y, zero, &r) == MJ_ERR_INVALID_ARGUMENT);
    mj_sequence_free(zero);
    mj_sequence_free(x);
    mj_sequence_free(y);
    mj_sequence_free(c);
}

TEST_CASE("selftest") {
    Fixture f;
    mj_report* r = nullptr;
    REQUIRE(mj_selftest(f.ctx, 0, &r) == MJ_OK);
    CHECK(mj_report_exit_code(r) == 0);
    mj_report_free(r);
}
