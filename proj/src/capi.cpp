#include "majorize/majorize.h"

#include "error.hpp"
#include "io.hpp"
#include "order_checks.hpp"
#include "selftest.hpp"
#include "trumping.hpp"
#include "zeta.hpp"

#include <cstring>
#include <sstream>
#include <string>

using namespace majz;

struct mj_context {
    unsigned precision = kDefaultPrecision;
    TiePolicy ties = TiePolicy::AsEqual;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    CMConfig cm;
    RefuteBudget refute;
    CatalystSearchConfig search;
    bool require_normalized = false;

    [[nodiscard]] OrderOptions order() const {
        OrderOptions o;
        o.precision_bits = precision;
        o.ties = ties;
        return o;
    }
    [[nodiscard]] ZetaOptions zeta() const {
        ZetaOptions o;
        o.precision_bits = precision;
        o.ties = ties;
        return o;
    }
    [[nodiscard]] CMConfig cm_config() const {
        CMConfig c = cm;
        c.precision_bits = precision;
        c.ties = ties;
        c.threads = threads;
        return c;
    }
    [[nodiscard]] RefuteBudget refute_budget() const {
        RefuteBudget b = refute;
        b.ties = ties;
        b.threads = threads;
        b.max_precision = std::max(b.max_precision, precision);
        return b;
    }
    [[nodiscard]] CatalystSearchConfig search_config() const {
        CatalystSearchConfig c = search;
        c.precision_bits = precision;
        c.ties = ties;
        c.threads = threads;
        return c;
    }
};

struct mj_sequence {
    Ell1Seq seq;
};

struct mj_report {
    mj_verdict verdict = MJ_HOLDS;
    int exit_code = 0;
    std::string json;
    std::string json_line;
    std::string text;
    std::string csv;
};

namespace {

thread_local std::string last_error;

mj_status fail(mj_status code, const std::string& message) {
    last_error = message;
    return code;
}

mj_status status_of(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidArgument:
        return MJ_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse:
        return MJ_ERR_PARSE;
    case ErrorCode::Unsupported:
        return MJ_ERR_UNSUPPORTED;
    case ErrorCode::Io:
        return MJ_ERR_IO;
    }
    return MJ_ERR_INTERNAL;
}

template <class F>
mj_status guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail(MJ_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MJ_ERR_INTERNAL, "unknown failure");
    }
}

mj_verdict verdict_of(const Verdict& v) {
    switch (v.kind()) {
    case VerdictKind::Holds:
        return MJ_HOLDS;
    case VerdictKind::Fails:
        return MJ_FAILS;
    case VerdictKind::Inconclusive:
        return MJ_INCONCLUSIVE;
    }
    return MJ_INCONCLUSIVE;
}

const char* verdict_name(mj_verdict v) {
    switch (v) {
    case MJ_HOLDS:
        return "holds";
    case MJ_FAILS:
        return "fails";
    case MJ_INCONCLUSIVE:
        return "inconclusive";
    case MJ_DISAGREEMENT:
        return "disagreement";
    }
    return "unknown";
}

mj_report* finish(mj_verdict verdict, Json json, std::string text, std::string csv = {}) {
    auto* r = new mj_report;
    r->verdict = verdict;
    r->exit_code = static_cast<int>(verdict);
    json["verdict"] = verdict_name(verdict);
    json["exit_code"] = r->exit_code;
    r->json = dump(json);
    r->json_line = json.dump();
    r->text = std::move(text);
    r->csv = std::move(csv);
    return r;
}

Json settings(const mj_context* ctx) {
    return {{"precision_bits", ctx->precision}, {"ties", to_string(ctx->ties)}, {"seed", ctx->seed}};
}

mj_status require_args(const void* a, const void* b, mj_report** out) {
    if (a == nullptr || b == nullptr || out == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return MJ_OK;
}

// Every input must validate; with require_normalized the mass must be 1.
void check_input(const mj_context* ctx, const Ell1Seq& s, const char* name) {
    if (const std::string why = validation_error(s); !why.empty()) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + ": " + why);
    }
    if (ctx->require_normalized) {
        const Real m = total_mass(s, ctx->precision);
        const Tolerance tol{ctx->precision, ctx->ties};
        if (tol.zero(m - Real(1L, ctx->precision), tol.band(Real(1L, ctx->precision), kMassSlackBits)) !=
            Resolution::Satisfied) {
            throw Error(ErrorCode::InvalidArgument, std::string(name) + ": mass " + m.to_string(20) + " is not 1");
        }
    }
}

std::string witness_text(const Verdict& v) {
    std::ostringstream out;
    out << to_string(v.kind());
    if (v.witness()) {
        std::visit(
            [&](const auto& w) {
                using T = std::decay_t<decltype(w)>;
                if constexpr (std::is_same_v<T, IndexWitness>) {
                    out << " (k=" << w.k << ": " << w.sum_a.to_string(12) << " > " << w.sum_b.to_string(12) << ")";
                } else if constexpr (std::is_same_v<T, ThresholdWitness>) {
                    out << " (t=" << w.t.to_string(12) << ", g(t)=" << w.value.to_string(12) << ")";
                } else if constexpr (std::is_same_v<T, DerivativeWitness>) {
                    out << " (n=" << w.n << ", s=" << w.s.to_string(12) << ", (-1)^n f^(n)(s)=" << w.value.to_string(12)
                        << ")";
                } else if constexpr (std::is_same_v<T, PointWitness>) {
                    out << " (s=" << w.s.to_string(12) << ", value=" << w.value.to_string(12) << ")";
                } else if constexpr (std::is_same_v<T, MassWitness>) {
                    out << " (mass a=" << w.mass_a.to_string(20) << ", mass b=" << w.mass_b.to_string(20) << ")";
                } else {
                    out << " (index " << w.index << ": " << w.what << ")";
                }
            },
            *v.witness());
    } else if (!v.reason().empty()) {
        out << " (" << v.reason() << ")";
    }
    return out.str();
}

bool definite(const Verdict& v) { return !v.is_inconclusive(); }

mj_verdict combine(const std::vector<const Verdict*>& vs) {
    bool any_holds = false;
    bool any_fails = false;
    bool any_open = false;
    for (const Verdict* v : vs) {
        any_holds = any_holds || v->is_holds();
        any_fails = any_fails || v->is_fails();
        any_open = any_open || !definite(*v);
    }
    if (any_holds && any_fails) {
        return MJ_DISAGREEMENT;
    }
    if (any_fails) {
        return MJ_FAILS;
    }
    return any_open ? MJ_INCONCLUSIVE : MJ_HOLDS;
}

}  // namespace

extern "C" {

const char* mj_version(void) { return "1.0.0"; }

const char* mj_last_error(void) { return last_error.c_str(); }

mj_status mj_context_new(mj_context** out) {
    if (out == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        *out = new mj_context;
        return MJ_OK;
    });
}

void mj_context_free(mj_context* ctx) { delete ctx; }

mj_status mj_context_set_precision(mj_context* ctx, unsigned bits) {
    if (ctx == nullptr || bits < 53 || bits > 1u << 16) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "precision must be between 53 and 65536 bits");
    }
    ctx->precision = bits;
    return MJ_OK;
}

mj_status mj_context_set_ties(mj_context* ctx, mj_ties ties) {
    if (ctx == nullptr || (ties != MJ_TIES_AS_EQUAL && ties != MJ_TIES_STRICT)) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "unknown tie policy");
    }
    ctx->ties = ties == MJ_TIES_STRICT ? TiePolicy::Strict : TiePolicy::AsEqual;
    return MJ_OK;
}

mj_status mj_context_set_threads(mj_context* ctx, unsigned threads) {
    if (ctx == nullptr || threads == 0) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "threads must be positive");
    }
    ctx->threads = threads;
    return MJ_OK;
}

mj_status mj_context_set_seed(mj_context* ctx, uint64_t seed) {
    if (ctx == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null context");
    }
    ctx->seed = seed;
    return MJ_OK;
}

mj_status mj_context_set_cm_grid(mj_context* ctx, double s_min, double s_max, size_t points) {
    if (ctx == nullptr || !(s_min > 1.0) || !(s_max >= s_min) || points == 0) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "grid requires 1 < s_min <= s_max and at least one point");
    }
    ctx->cm.grid = SGrid{s_min, s_max, points};
    return MJ_OK;
}

mj_status mj_context_set_order_max(mj_context* ctx, size_t order_max) {
    if (ctx == nullptr || order_max > 1000) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "order_max must be at most 1000");
    }
    ctx->cm.order_max = order_max;
    return MJ_OK;
}

mj_status mj_context_set_refute_budget(mj_context* ctx, size_t max_order, double s_min, double s_max,
                                       unsigned max_precision, size_t max_evaluations) {
    if (ctx == nullptr || !(s_min > 1.0) || !(s_max >= s_min) || max_precision < 53 || max_order > 1000) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "invalid refutation budget");
    }
    ctx->refute.max_order = max_order;
    ctx->refute.s_min = s_min;
    ctx->refute.s_max = s_max;
    ctx->refute.max_precision = max_precision;
    ctx->refute.max_evaluations = max_evaluations;
    return MJ_OK;
}

mj_status mj_context_set_search(mj_context* ctx, size_t dim_min, size_t dim_max, size_t resolution,
                                size_t refine_steps, size_t budget) {
    if (ctx == nullptr || dim_min < 2 || dim_max < dim_min || resolution < 2) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "search requires 2 <= dim_min <= dim_max and resolution >= 2");
    }
    ctx->search.dim_min = dim_min;
    ctx->search.dim_max = dim_max;
    ctx->search.resolution = resolution;
    ctx->search.refine_steps = refine_steps;
    ctx->search.budget = budget;
    return MJ_OK;
}

mj_status mj_context_set_keep_samples(mj_context* ctx, int keep) {
    if (ctx == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null context");
    }
    ctx->cm.keep_samples = keep != 0;
    return MJ_OK;
}

mj_status mj_context_set_require_normalized(mj_context* ctx, int require) {
    if (ctx == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null context");
    }
    ctx->require_normalized = require != 0;
    return MJ_OK;
}

mj_status mj_sequence_parse(const mj_context* ctx, const char* json, int positive, mj_sequence** out) {
    if (ctx == nullptr || json == nullptr || out == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        *out = new mj_sequence{parse_sequence(json, ctx->precision, positive != 0)};
        return MJ_OK;
    });
}

mj_status mj_sequence_load(const mj_context* ctx, const char* path, int positive, mj_sequence** out) {
    if (ctx == nullptr || path == nullptr || out == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        *out = new mj_sequence{load_sequence(path, ctx->precision, positive != 0)};
        return MJ_OK;
    });
}

void mj_sequence_free(mj_sequence* seq) { delete seq; }

mj_status mj_sequence_mass(const mj_context* ctx, const mj_sequence* seq, char* buf, size_t len) {
    if (ctx == nullptr || seq == nullptr || buf == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const std::string m = total_mass(seq->seq, ctx->precision).to_string();
        if (m.size() + 1 > len) {
            return fail(MJ_ERR_INVALID_ARGUMENT, "buffer too small");
        }
        std::memcpy(buf, m.c_str(), m.size() + 1);
        return MJ_OK;
    });
}

mj_status mj_check(const mj_context* ctx, const mj_sequence* a, const mj_sequence* b, mj_report** out) {
    if (ctx == nullptr || require_args(a, b, out) != MJ_OK) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        check_input(ctx, a->seq, "a");
        check_input(ctx, b->seq, "b");
        const ZetaPair pair{a->seq, b->seq};
        const Verdict ps = majorize_partial_sums(pair.a, pair.b, ctx->order());
        const Verdict hs = majorize_hockey_stick(pair.a, pair.b, ctx->order());
        const Verdict mass = zeta_at_one(pair, ctx->zeta());

        CMReport cm;
        std::string cm_mode;
        if (mass.is_fails()) {
            cm.verdict = mass;
            cm.precondition_met = false;
            cm.note = "zeta(1) != 0";
            cm_mode = "mass";
        } else if (ps.is_holds() || hs.is_holds()) {
            cm = cm_test(pair, ctx->cm_config());
            cm_mode = "scan";
        } else {
            cm = cm_refute_adaptive(pair, ctx->refute_budget());
            cm_mode = "refute";
        }
        const mj_verdict overall = combine({&ps, &hs, &cm.verdict});

        Json j = settings(ctx);
        j["command"] = "check";
        j["a"] = to_json(pair.a);
        j["b"] = to_json(pair.b);
        j["partial_sums"] = to_json(ps);
        j["hockey_stick"] = to_json(hs);
        Json cmj = to_json(cm);
        cmj["mode"] = cm_mode;
        j["complete_monotonicity"] = cmj;

        std::ostringstream text;
        text << "partial sums:          " << witness_text(ps) << "\n";
        text << "hockey stick:          " << witness_text(hs) << "\n";
        text << "complete monotonicity: " << witness_text(cm.verdict) << "\n";
        if (!cm.note.empty()) {
            text << "  note: " << cm.note << "\n";
        }
        if (cm.hockey_stick_witness) {
            const Real u = -log(cm.hockey_stick_witness->t);
            text << "  g < 0 at t=" << cm.hockey_stick_witness->t.to_string(12) << " (u=-ln t=" << u.to_string(8)
                 << "); the kernel u^n e^{-(s-1)u} peaks at u=n/(s-1)\n";
        }
        text << "overall: " << verdict_name(overall) << " (precision " << ctx->precision << " bits, seed "
             << ctx->seed << ")\n";
        *out = finish(overall, std::move(j), text.str(), ctx->cm.keep_samples ? cm_samples_csv(cm) : std::string());
        return MJ_OK;
    });
}

mj_status mj_zeta_table(const mj_context* ctx, const mj_sequence* a, const mj_sequence* b, size_t samples,
                        mj_report** out) {
    if (ctx == nullptr || require_args(a, b, out) != MJ_OK) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    if (samples == 0) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "samples must be positive");
    }
    return guarded([&] {
        check_input(ctx, a->seq, "a");
        check_input(ctx, b->seq, "b");
        SGrid grid = ctx->cm.grid;
        grid.points = samples;
        const std::string csv = zeta_table_csv({a->seq, b->seq}, grid, ctx->precision);
        Json j = settings(ctx);
        j["command"] = "zeta";
        j["samples"] = samples;
        j["s_min"] = grid.s_min;
        j["s_max"] = grid.s_max;
        j["columns"] = {"s", "zeta", "f", "f1", "f2", "f3"};
        *out = finish(MJ_HOLDS, std::move(j), csv, csv);
        return MJ_OK;
    });
}

mj_status mj_trump(const mj_context* ctx, const mj_sequence* x, const mj_sequence* y, const mj_sequence* catalyst,
                   mj_report** out) {
    if (ctx == nullptr || require_args(x, y, out) != MJ_OK) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        check_input(ctx, x->seq, "x");
        check_input(ctx, y->seq, "y");
        Json j = settings(ctx);
        j["command"] = "trump";
        j["x"] = to_json(x->seq);
        j["y"] = to_json(y->seq);
        std::ostringstream text;
        mj_verdict v;
        if (catalyst != nullptr) {
            check_input(ctx, catalyst->seq, "catalyst");
            const Verdict plain = majorize_partial_sums(x->seq, y->seq, ctx->order());
            const Verdict t = trump_check(x->seq, y->seq, catalyst->seq, ctx->order());
            j["mode"] = "check";
            j["catalyst"] = to_json(catalyst->seq);
            j["plain"] = to_json(plain);
            j["trump"] = to_json(t);
            text << "plain:     " << witness_text(plain) << "\n";
            text << "catalysed: " << witness_text(t) << "\n";
            text << "catalyst:  " << to_json(catalyst->seq)["prefix"].dump() << "\n";
            v = verdict_of(t);
        } else {
            const TrumpReport r = catalyst_search(x->seq, y->seq, ctx->search_config());
            const auto& sc = ctx->search;
            j["mode"] = "search";
            j["search"] = to_json(r);
            j["search_config"] = {{"dim_min", sc.dim_min},
                                  {"dim_max", sc.dim_max},
                                  {"resolution", sc.resolution},
                                  {"refine_steps", sc.refine_steps},
                                  {"budget", sc.budget}};
            text << "plain:      " << witness_text(r.plain) << "\n";
            text << "search:     " << witness_text(r.verdict) << "\n";
            text << "candidates: " << r.candidates_tried << "\n";
            if (r.catalyst) {
                text << "catalyst:   " << to_json(*r.catalyst)["prefix"].dump() << "\n";
            }
            v = verdict_of(r.verdict);
        }
        *out = finish(v, std::move(j), text.str());
        return MJ_OK;
    });
}

mj_status mj_probe(const mj_context* ctx, const mj_sequence* a, const mj_sequence* b, mj_report** out) {
    if (ctx == nullptr || require_args(a, b, out) != MJ_OK) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        check_input(ctx, a->seq, "a");
        check_input(ctx, b->seq, "b");
        ProbeConfig cfg;
        cfg.search = ctx->search_config();
        cfg.positivity_grid = ctx->cm.grid;
        cfg.cm = ctx->cm_config();
        const EvidenceRecord rec = conjecture_probe({a->seq, b->seq}, cfg);
        Json j = settings(ctx);
        j["command"] = "probe-conjecture";
        j["a"] = to_json(a->seq);
        j["b"] = to_json(b->seq);
        j["evidence"] = to_json(rec);
        mj_verdict v = MJ_INCONCLUSIVE;
        if (rec.mass.is_fails() || (rec.positivity && rec.positivity->is_fails())) {
            v = MJ_FAILS;
        } else if (rec.search && rec.search->catalyst) {
            v = MJ_HOLDS;
        }
        std::ostringstream text;
        text << "mass:       " << witness_text(rec.mass) << "\n";
        if (rec.positivity) {
            text << "positivity: " << witness_text(*rec.positivity) << "\n";
        }
        if (rec.search) {
            text << "catalyst:   " << witness_text(rec.search->verdict) << " after " << rec.search->candidates_tried
                 << " candidates\n";
        }
        if (rec.product_cm) {
            text << "product CM: " << witness_text(rec.product_cm->verdict) << "\n";
        }
        text << "note: " << rec.note << "\n";
        if (rec.candidate_counterexample) {
            text << "flagged as a candidate for closer study (search is incomplete)\n";
        }
        *out = finish(v, std::move(j), text.str());
        return MJ_OK;
    });
}

mj_status mj_selftest(const mj_context* ctx, size_t cases, mj_report** out) {
    if (ctx == nullptr || out == nullptr) {
        return fail(MJ_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        SelftestConfig cfg;
        cfg.seed = ctx->seed;
        cfg.cases = cases;
        cfg.threads = ctx->threads;
        cfg.precision_bits = ctx->precision;
        const SelftestReport r = run_selftest(cfg);
        Json j = to_json(r);
        j["command"] = "selftest";
        j["precision_bits"] = ctx->precision;
        std::ostringstream text;
        for (const auto& s : r.suites) {
            text << (s.failures == 0 ? "ok   " : "FAIL ") << s.name << " (" << s.cases << " cases";
            if (s.failures > 0) {
                text << ", " << s.failures << " failed; " << s.first_failure;
            }
            text << ")\n";
        }
        text << (r.passed() ? "all suites passed" : "some suites failed") << " (seed " << r.seed << ")\n";
        *out = finish(r.passed() ? MJ_HOLDS : MJ_FAILS, std::move(j), text.str());
        return MJ_OK;
    });
}

mj_verdict mj_report_verdict(const mj_report* r) { return r == nullptr ? MJ_INCONCLUSIVE : r->verdict; }

int mj_report_exit_code(const mj_report* r) { return r == nullptr ? 2 : r->exit_code; }

const char* mj_report_json(const mj_report* r) { return r == nullptr ? "" : r->json.c_str(); }

const char* mj_report_json_line(const mj_report* r) { return r == nullptr ? "" : r->json_line.c_str(); }

const char* mj_report_text(const mj_report* r) { return r == nullptr ? "" : r->text.c_str(); }

const char* mj_report_csv(const mj_report* r) { return r == nullptr ? "" : r->csv.c_str(); }

void mj_report_free(mj_report* r) { delete r; }

}  // extern "C"
