#include "trumping.hpp"

#include "error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <functional>

namespace majz {

namespace {

void require_catalyst(const Ell1Seq& c) {
    if (!c.finitely_supported()) {
        throw Error(ErrorCode::Unsupported, "catalysts with geometric tails are not supported");
    }
    if (c.prefix().empty()) {
        throw Error(ErrorCode::InvalidArgument, "catalyst is empty");
    }
    for (std::size_t i = 0; i < c.prefix().size(); ++i) {
        if (!(c.prefix()[i] > 0L)) {
            throw Error(ErrorCode::InvalidArgument, "catalyst entry " + std::to_string(i) + " is not positive");
        }
    }
}

// min over k of sum_{i<=k} y_i - sum_{i<=k} x_i over the sorted entries.
Real partial_sum_slack(const Ell1Seq& x, const Ell1Seq& y, unsigned p) {
    const std::size_t n = std::max(x.prefix().size(), y.prefix().size());
    const auto xs = k_largest(x, n, p);
    const auto ys = k_largest(y, n, p);
    Real sx(p), sy(p);
    Real best(p);
    for (std::size_t k = 0; k < n; ++k) {
        sx += xs[k];
        sy += ys[k];
        const Real d = sy - sx;
        if (k == 0 || d < best) {
            best = d;
        }
    }
    return best;
}

Ell1Seq catalyst_from(const std::vector<long>& parts, long resolution, unsigned p) {
    std::vector<Real> c;
    c.reserve(parts.size());
    for (long k : parts) {
        c.push_back(Real(k, p) / resolution);
    }
    return Ell1Seq(std::move(c));
}

void compositions(std::size_t dim, long remaining, long cap, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (dim == 0) {
        if (remaining == 0) {
            out.push_back(cur);
        }
        return;
    }
    const auto d = static_cast<long>(dim);
    // Non-increasing parts: the first part is at least ceil(remaining / dim).
    const long lo = (remaining + d - 1) / d;
    const long hi = std::min(cap, remaining - (d - 1));
    for (long k = lo; k <= hi; ++k) {
        cur.push_back(k);
        compositions(dim - 1, remaining - k, k, cur, out);
        cur.pop_back();
    }
}

struct Outcome {
    bool holds = false;
    Real slack;
};

// Refinement candidates: compositions at the finer resolution within one
// fine cell of the scaled-up centre.
std::vector<std::vector<long>> neighbourhood(const std::vector<long>& centre, long factor, long resolution) {
    std::vector<std::vector<long>> out;
    for (const auto& cand : simplex_compositions(centre.size(), resolution)) {
        bool near = true;
        for (std::size_t i = 0; i < centre.size() && near; ++i) {
            near = std::abs(cand[i] - centre[i] * factor) <= factor;
        }
        if (near) {
            out.push_back(cand);
        }
    }
    return out;
}

}  // namespace

std::vector<std::vector<long>> simplex_compositions(std::size_t dim, long resolution) {
    std::vector<std::vector<long>> out;
    if (dim == 0 || resolution < static_cast<long>(dim)) {
        return out;
    }
    std::vector<long> cur;
    compositions(dim, resolution, resolution, cur, out);
    return out;
}

Verdict trump_check(const Ell1Seq& x, const Ell1Seq& y, const Ell1Seq& c, const OrderOptions& opts) {
    require_catalyst(c);
    if (!x.finitely_supported() || !y.finitely_supported()) {
        throw Error(ErrorCode::Unsupported, "trumping requires finitely supported sequences");
    }
    const unsigned p = opts.precision_bits;
    return majorize_partial_sums(tensor(x, c, p), tensor(y, c, p), opts);
}

TrumpReport catalyst_search(const Ell1Seq& x, const Ell1Seq& y, const CatalystSearchConfig& config) {
    if (config.dim_min < 2 || config.dim_max < config.dim_min) {
        throw Error(ErrorCode::InvalidArgument, "catalyst dimensions must satisfy 2 <= dim_min <= dim_max");
    }
    if (config.resolution < 2) {
        throw Error(ErrorCode::InvalidArgument, "grid resolution must be at least 2");
    }
    if (!x.finitely_supported() || !y.finitely_supported()) {
        throw Error(ErrorCode::Unsupported, "trumping requires finitely supported sequences");
    }
    const unsigned p = config.precision_bits;
    OrderOptions opts;
    opts.precision_bits = p;
    opts.ties = config.ties;

    TrumpReport report;
    report.plain = majorize_partial_sums(x, y, opts);
    Real ma(p), mb(p);
    if (masses_equal(x, y, opts.tolerance(), &ma, &mb) == Resolution::Violated) {
        report.verdict = Verdict::fails(MassWitness{ma, mb});
        return report;
    }
    if (config.budget == 0) {
        report.verdict = Verdict::inconclusive(Real(p), "search budget is 0");
        return report;
    }
    report.candidates_tried = 1;
    if (report.plain.is_holds()) {
        report.catalyst = Ell1Seq(std::vector<Real>{Real(1L, p)});
        report.slack = partial_sum_slack(x, y, p);
        return report;
    }

    std::size_t remaining = config.budget - 1;
    std::optional<std::pair<Real, std::vector<long>>> closest;
    long closest_resolution = 0;

    // Evaluates candidates in canonical order; true when one works.
    const auto run = [&](const std::vector<std::vector<long>>& cands, long resolution) {
        const std::size_t batch = std::max<std::size_t>(64, 16 * static_cast<std::size_t>(config.threads));
        for (std::size_t start = 0; start < cands.size() && remaining > 0; start += batch) {
            const std::size_t n = std::min({batch, cands.size() - start, remaining});
            std::vector<Outcome> out(n);
            parallel_for(n, config.threads, [&](std::size_t i) {
                const Ell1Seq c = catalyst_from(cands[start + i], resolution, p);
                const Ell1Seq xc = tensor(x, c, p);
                const Ell1Seq yc = tensor(y, c, p);
                out[i].holds = majorize_partial_sums(xc, yc, opts).is_holds();
                out[i].slack = partial_sum_slack(xc, yc, p);
            });
            for (std::size_t i = 0; i < n; ++i) {
                ++report.candidates_tried;
                --remaining;
                if (out[i].holds) {
                    report.catalyst = catalyst_from(cands[start + i], resolution, p);
                    report.slack = out[i].slack;
                    return true;
                }
                if (!closest || out[i].slack > closest->first) {
                    closest.emplace(out[i].slack, cands[start + i]);
                    closest_resolution = resolution;
                }
            }
        }
        return false;
    };

    const auto resolution = static_cast<long>(config.resolution);
    for (std::size_t d = config.dim_min; d <= config.dim_max; ++d) {
        if (run(simplex_compositions(d, resolution), resolution)) {
            return report;
        }
    }
    for (std::size_t step = 0; step < config.refine_steps && closest && remaining > 0; ++step) {
        const long finer = closest_resolution * 2;
        const std::vector<long> centre = closest->second;
        if (run(neighbourhood(centre, 2, finer), finer)) {
            return report;
        }
        closest_resolution = finer;
        // keep the centre at the finer scale if nothing better appeared
        if (closest->second == centre) {
            for (auto& k : closest->second) {
                k *= 2;
            }
        }
    }
    if (closest) {
        report.slack = closest->first;
        report.closest = catalyst_from(closest->second, closest_resolution, p);
    }
    const std::string why = remaining == 0 ? "search budget exhausted without a catalyst"
                                           : "no catalyst found on the searched grids";
    report.verdict = Verdict::inconclusive(closest ? abs(closest->first) : Real(p), why);
    return report;
}

EvidenceRecord conjecture_probe(const ZetaPair& pair, const ProbeConfig& config) {
    EvidenceRecord rec;
    ZetaOptions zopts;
    zopts.precision_bits = config.search.precision_bits;
    zopts.ties = config.search.ties;
    rec.mass = zeta_at_one(pair, zopts);
    if (!rec.mass.is_holds()) {
        rec.note = "conjecture hypothesis unmet: zeta(1) != 0";
        return rec;
    }
    rec.positivity = zeta_positivity(pair, config.positivity_grid.build(zopts.precision_bits), zopts);
    if (rec.positivity->is_fails()) {
        rec.note = "conjecture hypothesis unmet: zeta(s) < 0 on the grid";
        return rec;
    }
    rec.hypothesis_met = rec.positivity->is_holds();
    rec.search = catalyst_search(pair.a, pair.b, config.search);
    if (rec.search->catalyst) {
        const unsigned p = config.search.precision_bits;
        const ZetaPair product{tensor(pair.a, *rec.search->catalyst, p), tensor(pair.b, *rec.search->catalyst, p)};
        rec.product_cm = cm_test(product, config.cm);
        rec.note = "catalyst found";
    } else {
        rec.candidate_counterexample = rec.hypothesis_met;
        rec.note = rec.hypothesis_met ? "zeta positive on the grid but no catalyst found within budget"
                                      : "no catalyst found within budget";
    }
    if (!rec.hypothesis_met && rec.positivity->is_inconclusive()) {
        rec.note += "; zeta positivity inconclusive";
    }
    return rec;
}

}  // namespace majz
