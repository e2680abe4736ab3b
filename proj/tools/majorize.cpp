// majorize: command-line front end over libmajorize.
//
// Exit codes: 0 holds, 1 fails, 2 inconclusive, 3 disagreement between
// characterizations, 64 bad input (parse, validation, usage), 70 internal.

#include <majorize/majorize.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct Options {
    unsigned precision_bits = 128;
    std::size_t order_max = 24;
    double s_min = 1.001;
    double s_max = 1000.0;
    std::size_t grid_points = 64;
    std::string format = "text";
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string ties = "as-equal";
    bool normalized = false;

    std::size_t refute_order = 64;
    double refute_s_min = 1.0 + 1e-6;
    double refute_s_max = 1e4;
    unsigned refute_precision = 512;
    std::size_t refute_evaluations = 4000;

    std::size_t dim_min = 2;
    std::size_t dim_max = 2;
    double step = 0.05;
    std::size_t refine = 0;
    std::size_t budget = 100000;

    std::string a, b;
    std::string catalyst_file;
    std::string csv_path;
    std::string log_path;
    std::size_t samples = 16;
    std::size_t cases = 200;
};

struct CtxDeleter {
    void operator()(mj_context* c) const { mj_context_free(c); }
};
struct SeqDeleter {
    void operator()(mj_sequence* s) const { mj_sequence_free(s); }
};
struct ReportDeleter {
    void operator()(mj_report* r) const { mj_report_free(r); }
};
using Ctx = std::unique_ptr<mj_context, CtxDeleter>;
using Seq = std::unique_ptr<mj_sequence, SeqDeleter>;
using Report = std::unique_ptr<mj_report, ReportDeleter>;

struct Failure {
    int exit_code;
    std::string message;
};

void check(mj_status st) {
    if (st == MJ_OK) {
        return;
    }
    throw Failure{st == MJ_ERR_INTERNAL ? kExitInternal : kExitUsage, mj_last_error()};
}

Ctx make_context(const Options& o, bool keep_samples) {
    mj_context* raw = nullptr;
    check(mj_context_new(&raw));
    Ctx ctx(raw);
    check(mj_context_set_precision(ctx.get(), o.precision_bits));
    check(mj_context_set_ties(ctx.get(), o.ties == "strict" ? MJ_TIES_STRICT : MJ_TIES_AS_EQUAL));
    check(mj_context_set_threads(ctx.get(), o.threads));
    check(mj_context_set_seed(ctx.get(), o.seed));
    check(mj_context_set_cm_grid(ctx.get(), o.s_min, o.s_max, o.grid_points));
    check(mj_context_set_order_max(ctx.get(), o.order_max));
    check(mj_context_set_refute_budget(ctx.get(), o.refute_order, o.refute_s_min, o.refute_s_max,
                                       o.refute_precision, o.refute_evaluations));
    if (!(o.step > 0.0) || !(o.step <= 0.5)) {
        throw Failure{kExitUsage, "--step must lie in (0, 0.5]"};
    }
    const auto resolution = static_cast<std::size_t>(1.0 / o.step + 0.5);
    check(mj_context_set_search(ctx.get(), o.dim_min, o.dim_max, resolution, o.refine, o.budget));
    check(mj_context_set_keep_samples(ctx.get(), keep_samples ? 1 : 0));
    check(mj_context_set_require_normalized(ctx.get(), o.normalized ? 1 : 0));
    return ctx;
}

Seq load(const Ctx& ctx, const std::string& path, bool positive = false) {
    mj_sequence* raw = nullptr;
    check(mj_sequence_load(ctx.get(), path.c_str(), positive ? 1 : 0, &raw));
    return Seq(raw);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw Failure{kExitUsage, path + ": cannot write"};
    }
}

int emit(const Options& o, const Report& r) {
    if (o.format == "json") {
        std::cout << mj_report_json(r.get());
    } else if (o.format == "csv") {
        std::cout << mj_report_csv(r.get());
    } else {
        std::cout << mj_report_text(r.get());
    }
    return mj_report_exit_code(r.get());
}

void add_shared(CLI::App& app, Options& o) {
    app.add_option("--precision-bits", o.precision_bits, "working precision in bits (>= 53)")->capture_default_str();
    app.add_option("--order-max", o.order_max, "highest derivative order sampled")->capture_default_str();
    app.add_option("--s-min", o.s_min, "lower end of the s grid (> 1)")->capture_default_str();
    app.add_option("--s-max", o.s_max, "upper end of the s grid")->capture_default_str();
    app.add_option("--grid-points", o.grid_points, "number of geometric grid points")->capture_default_str();
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--seed", o.seed, "random seed")->capture_default_str();
    app.add_option("--threads", o.threads, "parallel width")->capture_default_str();
    app.add_option("--ties", o.ties, "treatment of values inside the tolerance band")
        ->check(CLI::IsMember({"as-equal", "strict"}))
        ->capture_default_str();
    app.add_flag("--normalized", o.normalized, "reject inputs whose mass is not 1");
    app.add_option("--refute-order", o.refute_order, "max order for adaptive refutation")->capture_default_str();
    app.add_option("--refute-s-min", o.refute_s_min, "refutation grid lower end")->capture_default_str();
    app.add_option("--refute-s-max", o.refute_s_max, "refutation grid upper end")->capture_default_str();
    app.add_option("--refute-precision", o.refute_precision, "max precision for refutation")->capture_default_str();
    app.add_option("--refute-evaluations", o.refute_evaluations, "max s points for refutation")
        ->capture_default_str();
}

void add_search(CLI::App& app, Options& o) {
    app.add_option("--dim-min", o.dim_min, "smallest catalyst dimension")->capture_default_str();
    app.add_option("--dim-max", o.dim_max, "largest catalyst dimension")->capture_default_str();
    app.add_option("--step", o.step, "simplex grid step")->capture_default_str();
    app.add_option("--refine", o.refine, "local refinement steps")->capture_default_str();
    app.add_option("--budget", o.budget, "maximum number of candidate catalysts")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Majorization of summable sequences: partial sums, hockey-stick sums, complete monotonicity"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    add_shared(app, o);

    auto* check_cmd = app.add_subcommand("check", "decide a < b by all three characterizations");
    check_cmd->add_option("a", o.a, "sequence file")->required();
    check_cmd->add_option("b", o.b, "sequence file")->required();
    check_cmd->add_option("--csv", o.csv_path, "write CM samples (s,n,signed_value,bound) to this file");

    auto* zeta_cmd = app.add_subcommand("zeta", "tabulate zeta, f and f', f'', f''' as CSV");
    zeta_cmd->add_option("a", o.a, "sequence file")->required();
    zeta_cmd->add_option("b", o.b, "sequence file")->required();
    zeta_cmd->add_option("--samples", o.samples, "number of rows")->capture_default_str();
    zeta_cmd->add_option("--csv", o.csv_path, "write the table to this file instead of stdout");

    auto* trump_cmd = app.add_subcommand("trump", "check or search for a catalyst c with x(x)c < y(x)c");
    trump_cmd->add_option("x", o.a, "sequence file")->required();
    trump_cmd->add_option("y", o.b, "sequence file")->required();
    trump_cmd->add_option("--catalyst-file", o.catalyst_file, "catalyst to check instead of searching");
    add_search(*trump_cmd, o);

    auto* probe_cmd = app.add_subcommand("probe-conjecture", "gather evidence on catalysts for positive zeta");
    probe_cmd->add_option("a", o.a, "sequence file")->required();
    probe_cmd->add_option("b", o.b, "sequence file")->required();
    probe_cmd->add_option("--log", o.log_path, "append the evidence record to this JSONL file");
    add_search(*probe_cmd, o);

    auto* self_cmd = app.add_subcommand("selftest", "run the seeded property suites");
    self_cmd->add_option("--cases", o.cases, "cases per suite")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*check_cmd) {
            const Ctx ctx = make_context(o, !o.csv_path.empty() || o.format == "csv");
            const Seq a = load(ctx, o.a);
            const Seq b = load(ctx, o.b);
            mj_report* raw = nullptr;
            check(mj_check(ctx.get(), a.get(), b.get(), &raw));
            const Report r(raw);
            if (!o.csv_path.empty()) {
                write_file(o.csv_path, mj_report_csv(r.get()));
            }
            return emit(o, r);
        }
        if (*zeta_cmd) {
            const Ctx ctx = make_context(o, false);
            const Seq a = load(ctx, o.a);
            const Seq b = load(ctx, o.b);
            mj_report* raw = nullptr;
            check(mj_zeta_table(ctx.get(), a.get(), b.get(), o.samples, &raw));
            const Report r(raw);
            if (!o.csv_path.empty()) {
                write_file(o.csv_path, mj_report_csv(r.get()));
                if (o.format == "json") {
                    std::cout << mj_report_json(r.get());
                }
                return mj_report_exit_code(r.get());
            }
            if (o.format == "json") {
                std::cout << mj_report_json(r.get());
            } else {
                std::cout << mj_report_csv(r.get());
            }
            return mj_report_exit_code(r.get());
        }
        if (*trump_cmd) {
            const Ctx ctx = make_context(o, false);
            const Seq x = load(ctx, o.a);
            const Seq y = load(ctx, o.b);
            Seq c;
            if (!o.catalyst_file.empty()) {
                c = load(ctx, o.catalyst_file, true);
            }
            mj_report* raw = nullptr;
            check(mj_trump(ctx.get(), x.get(), y.get(), c.get(), &raw));
            return emit(o, Report(raw));
        }
        if (*probe_cmd) {
            const Ctx ctx = make_context(o, false);
            const Seq a = load(ctx, o.a);
            const Seq b = load(ctx, o.b);
            mj_report* raw = nullptr;
            check(mj_probe(ctx.get(), a.get(), b.get(), &raw));
            const Report r(raw);
            if (!o.log_path.empty()) {
                std::ofstream log(o.log_path, std::ios::app | std::ios::binary);
                log << mj_report_json_line(r.get()) << '\n';
                if (!log) {
                    throw Failure{kExitUsage, o.log_path + ": cannot append"};
                }
            }
            return emit(o, r);
        }
        if (*self_cmd) {
            const Ctx ctx = make_context(o, false);
            mj_report* raw = nullptr;
            check(mj_selftest(ctx.get(), o.cases, &raw));
            return emit(o, Report(raw));
        }
    } catch (const Failure& f) {
        std::cerr << "majorize: " << f.message << "\n";
        return f.exit_code;
    }
    return kExitUsage;
}
