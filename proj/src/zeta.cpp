#include "zeta.hpp"

#include "error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <iterator>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace majz {

namespace {

constexpr long kCmSlackBits = 16;
constexpr unsigned kGuardBits = 16;

void require_s_above_one(const Real& s) {
    if (!(s > 1L)) {
        throw Error(ErrorCode::InvalidArgument, "s must be greater than 1");
    }
}

Real infinity(unsigned precision) {
    Real r(precision);
    mpfr_set_inf(r.raw(), 1);
    return r;
}

std::vector<Real> sorted_positive(const Ell1Seq& seq) {
    std::vector<Real> out;
    for (const auto& x : seq.prefix()) {
        if (x.sign() > 0) {
            out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// Adds sum over entries of x^s (ln x)^k / k! into jet coefficients.
void add_entry_powers(TaylorJet& jet, const Real& x, const Real& s, int sign) {
    const unsigned p = jet.precision();
    const Real L = log(Real::with_precision(x, p));
    Real term = exp(s * L);  // x^s
    for (std::size_t k = 0; k <= jet.order(); ++k) {
        if (sign > 0) {
            jet[k] += term;
        } else {
            jet[k] -= term;
        }
        term *= L;
        term /= static_cast<long>(k + 1);
    }
}

// first^s / (1 - ratio^s) as a jet in s.
TaylorJet geometric_power_sum(const GeometricTail& g, const Real& s, std::size_t order) {
    const unsigned p = s.precision();
    TaylorJet var = TaylorJet::variable(s, order);
    TaylorJet num = exp(var * log(Real::with_precision(g.first, p)));
    TaylorJet rs = exp(var * log(Real::with_precision(g.ratio, p)));
    TaylorJet den = TaylorJet::constant(s, order, Real(1L, p)) - rs;
    return num / den;
}

// Bound on sum_{j >= from} x_j^s |ln x_j|^k / k! for k = 0..order, where
// x_j = first * ratio^j. Uses the ratio test on consecutive terms, which
// decrease geometrically once x_j < 1.
std::vector<Real> geometric_power_remainder(const GeometricTail& g, const Real& s, std::size_t order,
                                            std::size_t from, unsigned p) {
    std::vector<Real> out(order + 1, infinity(p));
    const Real x = tail_term(g, from, p);
    if (!(x < 1L)) {
        return out;
    }
    const Real absL = -log(x);
    const Real abs_ln_r = -log(Real::with_precision(g.ratio, p));
    const Real r_s = exp(s * log(Real::with_precision(g.ratio, p)));
    const Real growth = Real(1L, p) + abs_ln_r / absL;
    Real term = exp(s * log(x));  // x^s |L|^k / k!, k = 0
    Real growth_pow(1L, p);
    for (std::size_t k = 0; k <= order; ++k) {
        const Real rho = r_s * growth_pow;
        if (rho < 1L) {
            out[k] = term / (Real(1L, p) - rho);
        }
        term *= absL;
        term /= static_cast<long>(k + 1);
        growth_pow *= growth;
    }
    return out;
}

// I_k(z) = int_0^1 u^k e^{z u} du for k = 0..order, each to near full precision.
void exp_moments(const Real& z, std::size_t order, std::vector<Real>& out) {
    const unsigned p = z.precision();
    out.assign(order + 1, Real(p));
    if (z.is_zero()) {
        for (std::size_t k = 0; k <= order; ++k) {
            out[k] = Real(1L, p) / static_cast<long>(k + 1);
        }
        return;
    }
    const long threshold = 2 * static_cast<long>(order + 1);
    const Real eps = epsilon_pow2(static_cast<long>(p) + 4, p);
    if (z.sign() < 0) {
        const Real w = -z;
        const Real e = exp(z);  // e^{-w}
        if (w >= Real(threshold, p)) {
            // Forward: I_k = (k I_{k-1} - e^{-w}) / w; errors shrink by k/w <= 1/2.
            out[0] = -expm1(z) / w;
            for (std::size_t k = 1; k <= order; ++k) {
                Real v = out[k - 1] * static_cast<long>(k);
                v -= e;
                v /= w;
                out[k] = std::move(v);
            }
            return;
        }
        // I_K = e^{-w} sum_j w^j / ((K+1)(K+2)...(K+1+j)), all terms positive;
        // then backward I_{k-1} = (w I_k + e^{-w}) / k, also all positive.
        const auto K = static_cast<long>(order);
        Real term = Real(1L, p) / (K + 1);
        Real sum = term;
        for (long j = 1; j < 100000; ++j) {
            term *= w;
            term /= K + 1 + j;
            sum += term;
            if (term < sum * eps) {
                break;
            }
        }
        out[order] = sum * e;
        for (std::size_t k = order; k >= 1; --k) {
            Real v = w * out[k];
            v += e;
            v /= static_cast<long>(k);
            out[k - 1] = std::move(v);
        }
        return;
    }
    const Real e = exp(z);
    if (z >= Real(threshold, p)) {
        // Forward: I_k = (e^z - k I_{k-1}) / z; k I_{k-1} <= e^z / 2 here.
        out[0] = expm1(z) / z;
        for (std::size_t k = 1; k <= order; ++k) {
            Real v = e - out[k - 1] * static_cast<long>(k);
            v /= z;
            out[k] = std::move(v);
        }
        return;
    }
    // I_k = sum_j z^j / (j! (k + j + 1)), positive terms.
    for (std::size_t k = 0; k <= order; ++k) {
        Real power(1L, p);  // z^j / j!
        Real sum = power / static_cast<long>(k + 1);
        for (long j = 1; j < 100000; ++j) {
            power *= z;
            power /= j;
            const Real t = power / (static_cast<long>(k) + j + 1);
            sum += t;
            if (t < sum * eps) {
                break;
            }
        }
        out[k] = std::move(sum);
    }
}

struct Entry {
    Real x;
    Real log_x;
    int sign;
};

struct TailData {
    GeometricTail tail;
    std::size_t materialized;  // tail entries 0..materialized-1 are in `entries`
    int sign;
};

}  // namespace

// ---------------------------------------------------------------------------
// CmEvaluator
//
// With sigma = s - 1 and L = ln x, each entry contributes
//   x (x^sigma - 1) / sigma = x L int_0^1 e^{sigma L u} du
// to h(s) = (zeta(s) - zeta(1)) / (s - 1). This is entire in sigma and its
// Taylor coefficients x L^{k+1} I_k(sigma L) / k! are sums of same-signed
// terms, so h carries no cancellation as s -> 1+. Then
//   f(s) = zeta(1) / (s (s - 1)) + h(s) / s,
// and dividing a jet by s loses nothing since s > 1.
// ---------------------------------------------------------------------------

struct CmEvaluator::Impl {
    unsigned p;
    std::vector<Entry> entries;
    std::vector<TailData> tails;
    Real delta;  // zeta(1) = mass(b) - mass(a)
    bool tie;

    Impl(const ZetaPair& pair, const ZetaOptions& opts) : p(opts.precision_bits + kGuardBits), delta(p), tie(false) {
        auto va = validate(pair.a);
        auto vb = validate(pair.b);
        if (va.is_fails() || vb.is_fails()) {
            throw Error(ErrorCode::InvalidArgument, "zeta pair contains an invalid sequence");
        }
        Real ma(p), mb(p);
        tie = masses_equal(pair.a, pair.b, opts.tolerance(), &ma, &mb) != Resolution::Violated;
        delta = mb - ma;

        // Entries common to both sides cancel exactly.
        std::vector<Real> xb = sorted_positive(pair.b);
        std::vector<Real> xa = sorted_positive(pair.a);
        std::vector<Real> only_b, only_a;
        std::set_difference(xb.begin(), xb.end(), xa.begin(), xa.end(), std::back_inserter(only_b), std::greater<>());
        std::set_difference(xa.begin(), xa.end(), xb.begin(), xb.end(), std::back_inserter(only_a), std::greater<>());
        add_values(only_b, +1);
        add_values(only_a, -1);
        const auto* gb = pair.b.geometric_tail();
        const auto* ga = pair.a.geometric_tail();
        if (gb && ga && gb->first == ga->first && gb->ratio == ga->ratio) {
            return;
        }
        if (gb) {
            add_tail(*gb, +1, opts);
        }
        if (ga) {
            add_tail(*ga, -1, opts);
        }
    }

    void add_values(const std::vector<Real>& values, int sign) {
        for (const auto& x : values) {
            if (x == 1L) {
                continue;
            }
            Real xp = Real::with_precision(x, p);
            Real L = log(xp);
            entries.push_back({std::move(xp), std::move(L), sign});
        }
    }

    void add_tail(const GeometricTail& tail, int sign, const ZetaOptions& opts) {
        {
            const GeometricTail* g = &tail;
            // Materialize until the ratio-test bound on the coefficients is
            // negligible at high order, or the cap is hit.
            const Real mass = tail_remainder(*g, 0, p);
            const Real target = ldexp(mass, -static_cast<long>(p) - 16);
            const Real abs_ln_r = -log(Real::with_precision(g->ratio, p));
            std::size_t j = 0;
            for (; j < opts.tail_terms_max; ++j) {
                Real x = tail_term(*g, j, p);
                if (x < 1L && j % 16 == 0) {
                    const Real absL = -log(x);
                    Real bound = x;
                    // x |L|^65 / 65! with a ratio-test factor bounded away from 1 at order 64
                    for (long k = 1; k <= 65; ++k) {
                        bound *= absL;
                        bound /= k;
                    }
                    const Real rho = Real::with_precision(g->ratio, p) *
                                     pow(Real(1L, p) + abs_ln_r / absL, static_cast<unsigned long>(65));
                    if (bound < target && x < target && rho < (Real(1L, p) + g->ratio) / 2L) {
                        break;
                    }
                }
                if (x == 1L) {
                    continue;
                }
                Real L = log(x);
                entries.push_back({std::move(x), std::move(L), sign});
            }
            tails.push_back({*g, j, sign});
        }
    }

    // Coefficient bound for the unmaterialized part of a tail, order 0..K, at sigma.
    void tail_bounds(const TailData& t, const Real& sigma, std::size_t order, std::vector<Real>& acc) const {
        const Real x = tail_term(t.tail, t.materialized, p);
        const Real rest = tail_remainder(t.tail, t.materialized, p);
        // Route 1: I_k(-w) <= k! / w^{k+1}  =>  sum <= rest / sigma^{k+1}.
        Real inv_sigma_pow = Real(1L, p) / sigma;
        // Route 2: I_k <= 1 / (k + 1) with a ratio test on x_j |L_j|^{k+1} / (k+1)!.
        const bool below_one = x < 1L;
        const Real absL = below_one ? -log(x) : Real(p);
        const Real abs_ln_r = -log(Real::with_precision(t.tail.ratio, p));
        const Real growth = below_one ? Real(1L, p) + abs_ln_r / absL : Real(p);
        Real term = below_one ? x * absL : Real(p);  // x |L|^{k+1} / (k+1)!
        Real growth_pow = growth;
        for (std::size_t k = 0; k <= order; ++k) {
            Real b1 = rest * inv_sigma_pow;
            Real best = std::move(b1);
            if (below_one) {
                const Real rho = Real::with_precision(t.tail.ratio, p) * growth_pow;
                if (rho < 1L) {
                    best = min(best, term / (Real(1L, p) - rho));
                }
                term *= absL;
                term /= static_cast<long>(k + 2);
                growth_pow *= growth;
            }
            acc[k] += best;
            inv_sigma_pow /= sigma;
        }
    }

    // h coefficients, magnitudes and remainder bounds at s.
    void h_coefficients(const Real& s, std::size_t order, std::vector<Real>& h, std::vector<Real>& mag,
                        std::vector<Real>& rem) const {
        h.assign(order + 1, Real(p));
        mag.assign(order + 1, Real(p));
        rem.assign(order + 1, Real(p));
        const Real sigma = Real::with_precision(s, p) - Real(1L, p);
        std::vector<Real> moments;
        for (const auto& e : entries) {
            exp_moments(sigma * e.log_x, order, moments);
            Real t = e.x * e.log_x;  // x L^{k+1} / k!
            for (std::size_t k = 0; k <= order; ++k) {
                Real c = t * moments[k];
                mag[k] += abs(c);
                if (e.sign > 0) {
                    h[k] += c;
                } else {
                    h[k] -= c;
                }
                t *= e.log_x;
                t /= static_cast<long>(k + 1);
            }
        }
        for (const auto& t : tails) {
            tail_bounds(t, sigma, order, rem);
        }
    }

    TaylorJet f(const Real& s_in, std::size_t order, std::vector<Real>* bounds) const {
        require_s_above_one(s_in);
        const Real s = Real::with_precision(s_in, p);
        std::vector<Real> h, mag, rem;
        h_coefficients(s, order, h, mag, rem);
        TaylorJet out(s, order);
        std::vector<Real> err(order + 1, Real(p));
        Real prev(p), prev_mag(p), prev_rem(p);
        const Real sigma = s - Real(1L, p);
        Real inv_sigma_pow = Real(1L, p) / sigma;
        Real inv_s_pow = Real(1L, p) / s;
        for (std::size_t k = 0; k <= order; ++k) {
            // (h / s)_k = (h_k - (h / s)_{k-1}) / s
            Real q = (h[k] - prev) / s;
            Real q_mag = (mag[k] + prev_mag) / s;
            Real q_rem = (rem[k] + prev_rem) / s;
            Real coeff = q;
            Real pole_mag(p);
            if (!tie) {
                // 1 / (s (s - 1)) = 1 / (s - 1) - 1 / s
                Real pk = inv_sigma_pow - inv_s_pow;
                if (k % 2 == 1) {
                    pk = -pk;
                }
                Real pole = delta * pk;
                pole_mag = abs(pole);
                coeff += pole;
            }
            out[k] = std::move(coeff);
            err[k] = ldexp(q_mag + pole_mag, -(static_cast<long>(p - kGuardBits) - kCmSlackBits)) + q_rem;
            prev = std::move(q);
            prev_mag = std::move(q_mag);
            prev_rem = std::move(q_rem);
            inv_sigma_pow /= sigma;
            inv_s_pow /= s;
        }
        if (bounds != nullptr) {
            *bounds = std::move(err);
        }
        return out;
    }
};

CmEvaluator::CmEvaluator(const ZetaPair& pair, const ZetaOptions& opts) : impl_(std::make_unique<Impl>(pair, opts)) {}
CmEvaluator::~CmEvaluator() = default;
CmEvaluator::CmEvaluator(CmEvaluator&&) noexcept = default;
CmEvaluator& CmEvaluator::operator=(CmEvaluator&&) noexcept = default;

bool CmEvaluator::masses_tie() const { return impl_->tie; }
unsigned CmEvaluator::precision() const { return impl_->p - kGuardBits; }

TaylorJet CmEvaluator::f(const Real& s, std::size_t order, std::vector<Real>* bounds) const {
    return impl_->f(s, order, bounds);
}

SignedDerivatives CmEvaluator::signed_derivatives(const Real& s, std::size_t order) const {
    std::vector<Real> bounds;
    const TaylorJet jet = impl_->f(s, order, &bounds);
    SignedDerivatives out{s, {}, {}};
    const unsigned p = impl_->p;
    Real fact(1L, p);
    for (std::size_t n = 0; n <= order; ++n) {
        if (n > 0) {
            fact *= static_cast<long>(n);
        }
        Real v = jet[n] * fact;
        if (n % 2 == 1) {
            v = -v;
        }
        out.values.push_back(std::move(v));
        out.bounds.push_back(bounds[n] * fact);
    }
    return out;
}

std::pair<Real, Real> CmEvaluator::zeta(const Real& s_in) const {
    require_s_above_one(s_in);
    const unsigned p = impl_->p;
    const Real s = Real::with_precision(s_in, p);
    std::vector<Real> h, mag, rem;
    impl_->h_coefficients(s, 0, h, mag, rem);
    const Real sigma = s - Real(1L, p);
    Real value = sigma * h[0];
    if (!impl_->tie) {
        value += impl_->delta;
    }
    Real bound = ldexp(sigma * mag[0], -(static_cast<long>(p - kGuardBits) - kCmSlackBits)) + sigma * rem[0];
    return {std::move(value), std::move(bound)};
}

// ---------------------------------------------------------------------------

TaylorJet power_sum(const Ell1Seq& seq, const Real& s_in, std::size_t order, unsigned precision) {
    require_s_above_one(s_in);
    const Real s = Real::with_precision(s_in, precision);
    TaylorJet jet(s, order);
    for (const auto& x : sorted_positive(seq)) {
        add_entry_powers(jet, x, s, +1);
    }
    if (const auto* g = seq.geometric_tail()) {
        jet += geometric_power_sum(*g, s, order);
    }
    return jet;
}

TruncatedPowerSum power_sum_truncated(const Ell1Seq& seq, const Real& s_in, std::size_t order,
                                      std::size_t tail_terms, unsigned precision) {
    require_s_above_one(s_in);
    const Real s = Real::with_precision(s_in, precision);
    TruncatedPowerSum out{TaylorJet(s, order), std::vector<Real>(order + 1, Real(precision))};
    for (const auto& x : sorted_positive(seq)) {
        add_entry_powers(out.jet, x, s, +1);
    }
    if (const auto* g = seq.geometric_tail()) {
        // Smallest terms first keeps the running sum accurate.
        for (std::size_t j = tail_terms; j-- > 0;) {
            add_entry_powers(out.jet, tail_term(*g, j, precision), s, +1);
        }
        out.remainder_bound = geometric_power_remainder(*g, s, order, tail_terms, precision);
    }
    return out;
}

TaylorJet zeta_jet(const ZetaPair& pair, const Real& s, std::size_t order, unsigned precision) {
    return power_sum(pair.b, s, order, precision) - power_sum(pair.a, s, order, precision);
}

Verdict zeta_at_one(const ZetaPair& pair, const ZetaOptions& opts) {
    Real ma(opts.precision_bits), mb(opts.precision_bits);
    switch (masses_equal(pair.a, pair.b, opts.tolerance(), &ma, &mb)) {
    case Resolution::Satisfied:
        return Verdict::holds();
    case Resolution::Violated:
        return Verdict::fails(MassWitness{ma, mb});
    case Resolution::Unresolved:
        break;
    }
    return Verdict::inconclusive(abs(mb - ma), "mass difference inside the tie band");
}

TaylorJet f_jet(const ZetaPair& pair, const Real& s, std::size_t order, const ZetaOptions& opts) {
    require_s_above_one(s);
    const TaylorJet full = CmEvaluator(pair, opts).f(s, order);
    // Round back to working precision.
    TaylorJet out(Real::with_precision(s, opts.precision_bits), order);
    for (std::size_t k = 0; k <= order; ++k) {
        out[k] = Real::with_precision(full[k], opts.precision_bits);
    }
    return out;
}

TaylorJet f_jet_quotient(const ZetaPair& pair, const Real& s_in, std::size_t order, unsigned precision) {
    require_s_above_one(s_in);
    const Real s = Real::with_precision(s_in, precision);
    const TaylorJet var = TaylorJet::variable(s, order);
    const TaylorJet one = TaylorJet::constant(s, order, Real(1L, precision));
    return zeta_jet(pair, s, order, precision) / (var * (var - one));
}

std::vector<Real> SGrid::build(unsigned precision) const {
    if (!(s_min > 1.0) || !(s_max >= s_min) || points == 0) {
        throw Error(ErrorCode::InvalidArgument, "grid requires 1 < s_min <= s_max and at least one point");
    }
    std::vector<Real> out;
    out.reserve(points);
    const Real lo = log(Real(s_min, precision));
    const Real hi = log(Real(s_max, precision));
    for (std::size_t i = 0; i < points; ++i) {
        if (points == 1) {
            out.emplace_back(s_min, precision);
            break;
        }
        Real frac = Real(static_cast<long>(i), precision) / static_cast<long>(points - 1);
        out.push_back(exp(lo + (hi - lo) * frac));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Complete-monotonicity scanning
// ---------------------------------------------------------------------------

namespace {

struct ScanResult {
    std::vector<SignedDerivatives> points;
    bool unresolved = false;
    std::optional<DerivativeWitness> witness;
    bool unconfirmed = false;
};

// Evaluates every grid point, then confirms candidate violations in
// (n, grid index) order at doubled precision.
ScanResult scan(const CmEvaluator& eval, const std::vector<Real>& grid, std::size_t order,
                const Tolerance& tol, unsigned threads, const CmEvaluator* recheck) {
    ScanResult out;
    out.points.resize(grid.size(), SignedDerivatives{Real(), {}, {}});
    parallel_for(grid.size(), threads, [&](std::size_t i) { out.points[i] = eval.signed_derivatives(grid[i], order); });

    std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (n, i)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& pt = out.points[i];
        for (std::size_t n = 0; n <= order; ++n) {
            switch (tol.nonnegative(pt.values[n], pt.bounds[n])) {
            case Resolution::Violated:
                candidates.emplace_back(n, i);
                break;
            case Resolution::Unresolved:
                out.unresolved = true;
                break;
            case Resolution::Satisfied:
                break;
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [n, i] : candidates) {
        const auto& pt = out.points[i];
        if (recheck != nullptr) {
            const auto again = recheck->signed_derivatives(grid[i], n);
            if (!(-again.values[n] > again.bounds[n])) {
                out.unconfirmed = true;
                continue;
            }
        }
        out.witness = DerivativeWitness{static_cast<int>(n), grid[i], pt.values[n]};
        break;
    }
    return out;
}

void record_minimum(CMReport& report, const ScanResult& scan, const std::vector<Real>& grid) {
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const auto& pt = scan.points[i];
        for (std::size_t n = 0; n < pt.values.size(); ++n) {
            if (!report.min_signed_value || pt.values[n] < *report.min_signed_value) {
                report.min_signed_value = pt.values[n];
                report.min_n = static_cast<int>(n);
                report.min_s = grid[i];
            }
        }
    }
}

void keep_samples(CMReport& report, const ScanResult& scan) {
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const auto& pt = scan.points[i];
        for (std::size_t n = 0; n < pt.values.size(); ++n) {
            report.samples.push_back({i, static_cast<int>(n), pt.values[n], pt.bounds[n]});
        }
    }
}

ZetaOptions zeta_options(unsigned precision, TiePolicy ties) {
    ZetaOptions o;
    o.precision_bits = precision;
    o.ties = ties;
    return o;
}

// One scan at a fixed precision, folded into a report.
bool run_scan(CMReport& report, const ZetaPair& pair, const std::vector<Real>& grid, std::size_t order,
              unsigned precision, TiePolicy ties, unsigned threads, bool samples, bool* unresolved,
              bool* unconfirmed) {
    const ZetaOptions opts = zeta_options(precision, ties);
    const CmEvaluator eval(pair, opts);
    const CmEvaluator recheck(pair, zeta_options(2 * precision, ties));
    const ScanResult res = scan(eval, grid, order, opts.tolerance(), threads, &recheck);
    report.evaluations += grid.size();
    report.orders_checked = std::max(report.orders_checked, order);
    report.precision_bits = precision;
    report.grid = grid;
    record_minimum(report, res, grid);
    if (samples) {
        keep_samples(report, res);
    }
    *unresolved = *unresolved || res.unresolved;
    *unconfirmed = *unconfirmed || res.unconfirmed;
    if (res.witness) {
        report.verdict = Verdict::fails(*res.witness);
        return true;
    }
    return false;
}

}  // namespace

CMReport cm_test(const ZetaPair& pair, const CMConfig& config) {
    CMReport report;
    const ZetaOptions opts = zeta_options(config.precision_bits, config.ties);
    report.precondition_met = zeta_at_one(pair, opts).is_holds();
    const std::vector<Real> grid = config.grid.build(config.precision_bits);
    bool unresolved = false;
    bool unconfirmed = false;
    if (run_scan(report, pair, grid, config.order_max, config.precision_bits, config.ties, config.threads,
                 config.keep_samples, &unresolved, &unconfirmed)) {
        return report;
    }
    if (unconfirmed) {
        report.verdict = Verdict::inconclusive(Real(config.precision_bits),
                                               "candidate violations did not survive the doubled-precision recheck");
    } else if (unresolved) {
        report.verdict = Verdict::inconclusive(Real(config.precision_bits), "a sample fell inside the tie band");
    } else {
        report.verdict = Verdict::holds();
        report.note = "no violation found up to order " + std::to_string(config.order_max) + " on " +
                      std::to_string(grid.size()) + " grid points";
    }
    if (!report.precondition_met) {
        report.note += report.note.empty() ? "" : "; ";
        report.note += "zeta(1) != 0: the mass condition fails";
    }
    return report;
}

namespace {

// Points where g is most negative, deepest first.
std::vector<Real> negative_region_targets(const ZetaPair& pair, unsigned precision, std::size_t limit) {
    std::vector<std::pair<Real, Real>> neg;  // (g, t)
    if (!pair.a.finitely_supported() || !pair.b.finitely_supported()) {
        return {};
    }
    const HockeyStickFn ha = hockey_stick_fn(pair.a, precision);
    const HockeyStickFn hb = hockey_stick_fn(pair.b, precision);
    const PiecewiseLinearFn g = difference(hb.fn, ha.fn);
    for (std::size_t i = 1; i < g.left_values.size(); ++i) {
        if (g.left_values[i].sign() < 0) {
            neg.emplace_back(g.left_values[i], g.knots[i]);
        }
        // midpoint of a segment whose ends are both negative or that dips below 0
        if (i + 1 < g.knots.size()) {
            Real mid = (g.knots[i] + g.knots[i + 1]) / 2L;
            Real gm = g(mid);
            if (gm.sign() < 0) {
                neg.emplace_back(std::move(gm), std::move(mid));
            }
        }
    }
    std::sort(neg.begin(), neg.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) {
            return x.first < y.first;
        }
        return x.second < y.second;
    });
    std::vector<Real> out;
    for (auto& [v, t] : neg) {
        if (out.size() >= limit) {
            break;
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

CMReport cm_refute_adaptive(const ZetaPair& pair, const RefuteBudget& budget) {
    CMReport report;
    const unsigned base_precision = std::min(kDefaultPrecision, budget.max_precision);
    report.precondition_met = zeta_at_one(pair, zeta_options(base_precision, budget.ties)).is_holds();
    bool unresolved = false;
    bool unconfirmed = false;
    const auto within_budget = [&](std::size_t more) { return report.evaluations + more <= budget.max_evaluations; };

    // Direct route: the sign of g decides complete monotonicity.
    OrderOptions order_opts;
    order_opts.precision_bits = base_precision;
    order_opts.ties = budget.ties;
    const Verdict hs = majorize_hockey_stick(pair.a, pair.b, order_opts);
    if (hs.is_fails() && std::holds_alternative<ThresholdWitness>(*hs.witness())) {
        report.hockey_stick_witness = std::get<ThresholdWitness>(*hs.witness());
    }

    // Stage 1: the default scan.
    {
        const SGrid grid{1.001, 1000.0, 64};
        const std::vector<Real> points = grid.build(base_precision);
        if (within_budget(points.size()) &&
            run_scan(report, pair, points, std::min<std::size_t>(24, budget.max_order), base_precision, budget.ties,
                     budget.threads, false, &unresolved, &unconfirmed)) {
            report.note = "found by the default scan";
            return report;
        }
    }

    if (hs.is_holds()) {
        report.verdict = Verdict::inconclusive(Real(base_precision),
                                               "g(t) >= 0 for all t: f is completely monotone, no witness exists");
        report.note = "hockey-stick difference is nonnegative";
        return report;
    }

    // Stage 2: aim the kernel u^n e^{-(s-1) u} at the negative region of G(u) = g(e^{-u}).
    const std::vector<Real> targets = negative_region_targets(pair, base_precision, 6);
    std::vector<double> target_u;
    for (const auto& t : targets) {
        if (t < 1L) {
            target_u.push_back(-log(t).to_double());
        }
    }
    static constexpr double kSpread[] = {0.6, 0.8, 1.0, 1.25, 1.6};
    for (unsigned precision = base_precision; precision <= budget.max_precision; precision *= 2) {
        for (std::size_t n = 0; n <= budget.max_order && !target_u.empty(); n += (n < 8 ? 1 : 4)) {
            std::vector<double> svals;
            for (double u : target_u) {
                for (double c : kSpread) {
                    const double sigma = std::max(0.5, static_cast<double>(n)) * c / u;
                    svals.push_back(std::clamp(1.0 + sigma, budget.s_min, budget.s_max));
                }
            }
            std::sort(svals.begin(), svals.end());
            svals.erase(std::unique(svals.begin(), svals.end()), svals.end());
            if (!within_budget(svals.size())) {
                break;
            }
            std::vector<Real> points;
            for (double v : svals) {
                points.emplace_back(v, precision);
            }
            if (run_scan(report, pair, points, budget.max_order, precision, budget.ties, budget.threads, false,
                         &unresolved, &unconfirmed)) {
                report.note = "found by kernel-targeted points";
                return report;
            }
        }
    }

    // Stage 3: dense grids over the full range.
    const std::pair<std::size_t, unsigned> stages[] = {{256, 256}, {1024, 512}};
    for (const auto& [count, precision] : stages) {
        const unsigned prec = std::min(precision, budget.max_precision);
        if (!within_budget(count)) {
            break;
        }
        const SGrid grid{budget.s_min, budget.s_max, count};
        if (run_scan(report, pair, grid.build(prec), budget.max_order, prec, budget.ties, budget.threads, false,
                     &unresolved, &unconfirmed)) {
            report.note = "found by dense grid";
            return report;
        }
    }

    std::string why = "no violation found within budget";
    if (unconfirmed) {
        why += "; some candidates failed the doubled-precision recheck";
    }
    report.verdict = Verdict::inconclusive(Real(base_precision), why);
    report.note = why;
    return report;
}

// ---------------------------------------------------------------------------
// Integral identities
// ---------------------------------------------------------------------------

namespace {

Real plain_power_sum(const Ell1Seq& seq, const Real& s) {
    Real sum(s.precision());
    for (const auto& x : sorted_positive(seq)) {
        sum += pow(Real::with_precision(x, s.precision()), s);
    }
    return sum;
}

void require_finite(const Ell1Seq& seq) {
    if (!seq.finitely_supported()) {
        throw Error(ErrorCode::Unsupported, "identity checks need finitely supported sequences");
    }
}

}  // namespace

IdentityCheck stieltjes_identity_check(const Ell1Seq& seq, const Real& s_in, unsigned precision) {
    require_s_above_one(s_in);
    require_finite(seq);
    const Real s = Real::with_precision(s_in, precision);
    const CountingFunction a = counting_function(seq, 0, precision);
    // s int_0^inf A(x) x^{s-1} dx = sum_i v_i (t_{i+1}^s - t_i^s), t_0 = 0.
    Real lhs(precision);
    Real left_pow(precision);
    for (std::size_t i = 0; i < a.step.breakpoints.size(); ++i) {
        Real right_pow = pow(Real::with_precision(a.step.breakpoints[i], precision), s);
        lhs += (right_pow - left_pow) * a.step.values[i];
        left_pow = std::move(right_pow);
    }
    Real rhs = plain_power_sum(seq, s);
    Real residual = abs(lhs - rhs);
    Real scale = abs(rhs);
    return {std::move(lhs), std::move(rhs), std::move(residual), std::move(scale)};
}

Real stieltjes_sum(const Ell1Seq& seq, const Real& s_in, unsigned precision) {
    require_s_above_one(s_in);
    require_finite(seq);
    const Real s = Real::with_precision(s_in, precision);
    const CountingFunction a = counting_function(seq, 0, precision);
    Real sum(precision);
    for (std::size_t i = 0; i < a.step.breakpoints.size(); ++i) {
        const long jump = a.step.values[i + 1] - a.step.values[i];
        sum += pow(Real::with_precision(a.step.breakpoints[i], precision), s) * jump;
    }
    return sum;
}

IdentityCheck mellin_identity_check(const ZetaPair& pair, const Real& s_in, const ZetaOptions& opts) {
    require_s_above_one(s_in);
    require_finite(pair.a);
    require_finite(pair.b);
    if (masses_equal(pair.a, pair.b, opts.tolerance()) == Resolution::Violated) {
        throw Error(ErrorCode::InvalidArgument, "Mellin identity requires equal masses");
    }
    const unsigned p = opts.precision_bits;
    const Real s = Real::with_precision(s_in, p);
    const Real one(1L, p);
    const Real s_minus_1 = s - one;
    const PiecewiseLinearFn g = difference(hockey_stick_fn(pair.b, p).fn, hockey_stick_fn(pair.a, p).fn);
    // int (alpha + beta t) t^{s-2} dt = alpha t^{s-1} / (s-1) + beta t^s / s
    Real integral(p);
    for (std::size_t i = 0; i < g.segment_count(); ++i) {
        const Real& k0 = g.knots[i];
        const Real& k1 = g.knots[i + 1];
        const Real& beta = g.slopes[i];
        const Real alpha = g.left_values[i] - beta * k0;
        const Real k0_sm1 = k0.is_zero() ? Real(p) : pow(k0, s_minus_1);
        const Real k1_sm1 = pow(k1, s_minus_1);
        integral += alpha * (k1_sm1 - k0_sm1) / s_minus_1;
        integral += beta * (k1_sm1 * k1 - k0_sm1 * k0) / s;
    }
    Real lhs = integral * s * s_minus_1;
    const Real pb = plain_power_sum(pair.b, s);
    const Real pa = plain_power_sum(pair.a, s);
    Real rhs = pb - pa;
    Real residual = abs(lhs - rhs);
    Real scale = pa + pb;
    return {std::move(lhs), std::move(rhs), std::move(residual), std::move(scale)};
}

Verdict zeta_positivity(const ZetaPair& pair, const std::vector<Real>& grid, const ZetaOptions& opts) {
    const CmEvaluator eval(pair, opts);
    bool all_positive = true;
    Real smallest(opts.precision_bits);
    for (const auto& s : grid) {
        auto [value, bound] = eval.zeta(s);
        if (-value > bound) {
            return Verdict::fails(PointWitness{s, Real::with_precision(value, opts.precision_bits)});
        }
        if (!(value > bound)) {
            all_positive = false;
            smallest = max(smallest, bound);
        }
    }
    if (all_positive) {
        return Verdict::holds();
    }
    return Verdict::inconclusive(smallest, "zeta(s) is not separated from 0 at some grid point");
}

}  // namespace majz
