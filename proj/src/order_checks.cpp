#include "order_checks.hpp"

#include "error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace majz {

namespace {

// Tie bands follow the coarser of the working precision and the precision
// the inputs were stored at: rounding the data already blurs ties at that level.
Tolerance effective_tolerance(const Tolerance& tol, const Ell1Seq& a, const Ell1Seq& b) {
    Tolerance t = tol;
    t.precision_bits = std::min({tol.precision_bits, a.data_precision(), b.data_precision()});
    return t;
}

long index_slack(std::size_t k) {
    return kMassSlackBits + static_cast<long>(std::bit_width(k));
}

// Prefix plus the first `tail_terms` tail entries, positive entries only.
std::vector<Real> materialize(const Ell1Seq& seq, std::size_t tail_terms, unsigned precision) {
    std::vector<Real> out;
    for (const auto& x : seq.prefix()) {
        if (x.sign() > 0) {
            out.push_back(x);
        }
    }
    if (const auto* g = seq.geometric_tail()) {
        for (std::size_t j = 0; j < tail_terms; ++j) {
            out.push_back(tail_term(*g, j, precision));
        }
    }
    return out;
}

std::vector<Real> distinct_ascending(std::vector<Real> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Verdict tag_invalid(const Verdict& v, const char* which) {
    const auto& w = std::get<InvariantWitness>(*v.witness());
    return Verdict::fails(InvariantWitness{w.index, std::string(which) + ": " + w.what});
}

struct Rejection {
    bool rejected = false;
    Verdict verdict = Verdict::holds();
};

Rejection check_inputs(const Ell1Seq& a, const Ell1Seq& b) {
    if (auto va = validate(a); va.is_fails()) {
        return {true, tag_invalid(va, "a")};
    }
    if (auto vb = validate(b); vb.is_fails()) {
        return {true, tag_invalid(vb, "b")};
    }
    return {};
}

}  // namespace

long StepFn::operator()(const Real& x) const {
    const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

CountingFunction counting_function(const Ell1Seq& seq, std::size_t truncation, unsigned precision) {
    std::vector<Real> entries = materialize(seq, truncation, precision);
    std::sort(entries.begin(), entries.end());
    CountingFunction out{{}, Real(precision), Real(precision)};
    const std::size_t n = entries.size();
    std::size_t i = 0;
    out.step.values.push_back(static_cast<long>(n));
    while (i < n) {
        std::size_t j = i;
        while (j < n && entries[j] == entries[i]) {
            ++j;
        }
        out.step.breakpoints.push_back(entries[i]);
        out.step.values.push_back(static_cast<long>(n - j));
        i = j;
    }
    if (const auto* g = seq.geometric_tail()) {
        out.exact_above = tail_term(*g, truncation, precision);
        out.remainder_mass = tail_remainder(*g, truncation, precision);
    }
    return out;
}

Real integrate_above(const StepFn& a, const Real& t) {
    Real sum(t.precision());
    Real left(t.precision());
    for (std::size_t i = 0; i < a.breakpoints.size(); ++i) {
        const Real& right = a.breakpoints[i];
        if (right > t) {
            const Real from = max(left, t);
            sum += (right - from) * a.values[i];
        }
        left = right;
    }
    return sum;
}

Real PiecewiseLinearFn::operator()(const Real& t) const {
    if (knots.size() < 2 || t >= knots.back()) {
        return Real(t.precision());
    }
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t j = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
    Real v = left_values[j];
    v.fma_add(slopes[j], t - knots[j]);
    return v;
}

namespace {

Real slope_from(const PiecewiseLinearFn& f, const Real& t) {
    if (f.knots.size() < 2 || t >= f.knots.back()) {
        return Real(t.precision());
    }
    auto it = std::upper_bound(f.knots.begin(), f.knots.end(), t);
    return f.slopes[static_cast<std::size_t>(it - f.knots.begin()) - 1];
}

}  // namespace

PiecewiseLinearFn difference(const PiecewiseLinearFn& f, const PiecewiseLinearFn& g) {
    std::vector<Real> knots = f.knots;
    knots.insert(knots.end(), g.knots.begin(), g.knots.end());
    knots = distinct_ascending(std::move(knots));
    PiecewiseLinearFn out;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        out.left_values.push_back(f(knots[i]) - g(knots[i]));
        out.slopes.push_back(slope_from(f, knots[i]) - slope_from(g, knots[i]));
    }
    out.knots = std::move(knots);
    return out;
}

Real hockey_stick(const Ell1Seq& seq, const Real& t, unsigned precision) {
    if (t.sign() <= 0) {
        throw Error(ErrorCode::InvalidArgument, "hockey_stick requires t > 0");
    }
    std::vector<Real> sorted = seq.prefix();
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    Real sum(precision);
    for (const auto& x : sorted) {
        if (x <= t) {
            break;
        }
        sum += x;
        sum -= t;
    }
    if (const auto* g = seq.geometric_tail()) {
        for (std::size_t j = 0;; ++j) {
            Real term = tail_term(*g, j, precision);
            if (term <= t) {
                break;
            }
            sum += term;
            sum -= t;
        }
    }
    return sum;
}

HockeyStickFn hockey_stick_fn(const Ell1Seq& seq, unsigned precision, std::size_t truncation) {
    std::vector<Real> entries = materialize(seq, truncation, precision);
    std::sort(entries.begin(), entries.end());
    const std::vector<Real> values = distinct_ascending(entries);

    HockeyStickFn out{{}, Real(precision), Real(precision)};
    PiecewiseLinearFn& fn = out.fn;
    fn.knots.reserve(values.size() + 1);
    fn.knots.emplace_back(precision);
    fn.knots.insert(fn.knots.end(), values.begin(), values.end());
    const std::size_t segments = values.size();
    fn.left_values.assign(segments, Real(precision));
    fn.slopes.assign(segments, Real(precision));

    // Sweep from the largest knot down: H is 0 at the top and gains
    // count * width on every segment below.
    Real h(precision);
    std::size_t above = entries.size();  // index of the first entry > current knot
    for (std::size_t i = segments; i-- > 0;) {
        const Real& left = fn.knots[i];
        const Real& right = fn.knots[i + 1];
        while (above > 0 && entries[above - 1] > left) {
            --above;
        }
        const long count = static_cast<long>(entries.size() - above);
        h += (right - left) * count;
        fn.left_values[i] = h;
        fn.slopes[i] = Real(-count, precision);
    }
    if (const auto* g = seq.geometric_tail()) {
        out.exact_above = tail_term(*g, truncation, precision);
        out.remainder_bound = tail_remainder(*g, truncation, precision);
    }
    return out;
}

Resolution masses_equal(const Ell1Seq& a, const Ell1Seq& b, const Tolerance& tol, Real* mass_a, Real* mass_b) {
    const Tolerance eff = effective_tolerance(tol, a, b);
    Real ma = total_mass(a, tol.precision_bits);
    Real mb = total_mass(b, tol.precision_bits);
    const Resolution r = eff.zero(mb - ma, eff.band(max(ma, mb), kMassSlackBits));
    if (mass_a != nullptr) {
        *mass_a = std::move(ma);
    }
    if (mass_b != nullptr) {
        *mass_b = std::move(mb);
    }
    return r;
}

Verdict majorize_partial_sums(const Ell1Seq& a, const Ell1Seq& b, const OrderOptions& opts) {
    if (auto rej = check_inputs(a, b); rej.rejected) {
        return rej.verdict;
    }
    const unsigned p = opts.precision_bits;
    const Tolerance tol = effective_tolerance(opts.tolerance(), a, b);
    Real ma(p), mb(p);
    const Resolution mass = masses_equal(a, b, opts.tolerance(), &ma, &mb);
    if (mass == Resolution::Violated) {
        return Verdict::fails(MassWitness{ma, mb});
    }
    const Real scale = max(ma, mb);
    bool unresolved = mass == Resolution::Unresolved;
    Real worst_gap = abs(mb - ma);

    const bool a_fin = a.finitely_supported();
    const bool b_fin = b.finitely_supported();
    std::size_t limit = opts.k_max;
    if (a_fin && b_fin) {
        limit = std::max(a.support_size(), b.support_size());
    } else if (a_fin) {
        limit = a.support_size() + b.prefix().size() + 1;
    } else if (b_fin) {
        limit = b.support_size() + a.prefix().size() + 1;
    }

    DescendingEnumerator ea(a, p);
    DescendingEnumerator eb(b, p);
    Real sa(p), sb(p);
    bool tail_phase = false;
    for (std::size_t k = 1; k <= limit; ++k) {
        sa += ea.next();
        sb += eb.next();
        const Real diff = sb - sa;
        const Real band = tol.band(scale, index_slack(k));
        switch (tol.nonnegative(diff, band)) {
        case Resolution::Violated:
            return Verdict::fails(IndexWitness{k, sa, sb});
        case Resolution::Unresolved:
            unresolved = true;
            worst_gap = max(worst_gap, abs(diff));
            break;
        case Resolution::Satisfied:
            break;
        }
        if (!a_fin && !b_fin && ea.prefix_exhausted() && eb.prefix_exhausted()) {
            tail_phase = true;
            break;
        }
    }

    if (a_fin && !b_fin) {
        // a is exhausted while b still carries positive mass: the remaining
        // partial sums of b fall short of a's by that mass (up to the mass
        // tie). Reaching this point means the shortfall is below resolution.
        const Real rest = tail_remainder(*b.geometric_tail(), eb.tail_index(), p);
        return Verdict::inconclusive(rest, "b has infinite support but its unmatched tail mass is below the tie band");
    }
    if (!a_fin && !b_fin) {
        if (!tail_phase) {
            return Verdict::inconclusive(worst_gap, "k_max reached before both prefixes were exhausted");
        }
        const auto& ta = *a.geometric_tail();
        const auto& tb = *b.geometric_tail();
        const Real ra_mass = tail_remainder(ta, ea.tail_index(), p);
        const Real rb_mass = tail_remainder(tb, eb.tail_index(), p);
        if (ta.ratio < tb.ratio) {
            // b's tail decays slower: D(m) = Rb rb^m - Ra ra^m eventually turns
            // positive. Its maximum sits near m* solving Ra ln ra ra^m = Rb ln rb rb^m.
            const double lra = log(ta.ratio).to_double();
            const double lrb = log(tb.ratio).to_double();
            const double ratio = (ra_mass * log(ta.ratio)).to_double() / (rb_mass * log(tb.ratio)).to_double();
            double m_star = std::log(ratio) / (lrb - lra);
            if (!std::isfinite(m_star) || m_star < 0) {
                m_star = 0;
            }
            const auto base = static_cast<std::size_t>(m_star);
            const std::size_t k0 = ea.position();
            for (std::size_t m : {base, base + 1}) {
                const Real tail_a = ra_mass * pow(Real::with_precision(ta.ratio, p), m);
                const Real tail_b = rb_mass * pow(Real::with_precision(tb.ratio, p), m);
                const Real sum_a = ma - tail_a;
                const Real sum_b = mb - tail_b;
                const std::size_t k = k0 + m;
                if (tol.nonnegative(sum_b - sum_a, tol.band(scale, index_slack(k))) == Resolution::Violated) {
                    return Verdict::fails(IndexWitness{k, sum_a, sum_b});
                }
            }
            return Verdict::inconclusive(abs(rb_mass - ra_mass),
                                         "slower-decaying tail of b cannot be separated from the tie band");
        }
        // ra >= rb: the gap at the current index bounds every later gap from below.
    }
    if (unresolved) {
        return Verdict::inconclusive(worst_gap, "a comparison fell inside the tie band");
    }
    return Verdict::holds();
}

Verdict majorize_hockey_stick(const Ell1Seq& a, const Ell1Seq& b, const OrderOptions& opts) {
    if (auto rej = check_inputs(a, b); rej.rejected) {
        return rej.verdict;
    }
    const unsigned p = opts.precision_bits;
    const Tolerance tol = effective_tolerance(opts.tolerance(), a, b);
    Real ma(p), mb(p);
    const Resolution mass = masses_equal(a, b, opts.tolerance(), &ma, &mb);
    if (mass == Resolution::Violated) {
        return Verdict::fails(MassWitness{ma, mb});
    }
    const Real scale = max(ma, mb);
    bool unresolved = mass == Resolution::Unresolved;
    Real worst_gap = abs(mb - ma);

    const std::size_t terms = opts.k_max;
    const HockeyStickFn ha = hockey_stick_fn(a, p, terms);
    const HockeyStickFn hb = hockey_stick_fn(b, p, terms);
    const PiecewiseLinearFn g_fn = difference(hb.fn, ha.fn);
    const Real exact_above = max(ha.exact_above, hb.exact_above);
    const std::vector<Real>& knots = g_fn.knots;
    const Real band = tol.band(scale, index_slack(knots.size()));

    // g is linear between consecutive knots, 0 above the largest one, and
    // tends to mb - ma at 0+, so its infimum is attained on the knots or at 0+.
    // Knots at or below exact_above belong to truncated tails and are skipped.
    std::optional<ThresholdWitness> worst;
    for (std::size_t i = 1; i < g_fn.left_values.size(); ++i) {
        const Real& t = knots[i];
        if (t <= exact_above) {
            continue;
        }
        const Real& g = g_fn.left_values[i];
        switch (tol.nonnegative(g, band)) {
        case Resolution::Violated:
            if (!worst || g < worst->value) {
                worst = ThresholdWitness{t, g};
            }
            break;
        case Resolution::Unresolved:
            unresolved = true;
            worst_gap = max(worst_gap, abs(g));
            break;
        case Resolution::Satisfied:
            break;
        }
    }
    if (worst) {
        // Report the value from the pointwise definition, not the sweep.
        worst->value = hockey_stick(b, worst->t, p) - hockey_stick(a, worst->t, p);
        return Verdict::fails(std::move(*worst));
    }

    if (!a.finitely_supported() || !b.finitely_supported()) {
        const bool a_fin = a.finitely_supported();
        const bool b_fin = b.finitely_supported();
        if (!a_fin && b_fin) {
            // Below min(b) with A(t) >= #b, g(t) = (mb - ma) + t (A(t) - #b) + R_a(t) >= mb - ma.
            const auto above_exact = std::upper_bound(knots.begin(), knots.end(), exact_above);
            if (above_exact == knots.end()) {
                return Verdict::inconclusive(band, "tail of a not materialized far enough to certify small t");
            }
            const Real& lowest = *above_exact;
            const auto b_entries = materialize(b, 0, p);
            const Real min_b = b_entries.empty() ? Real(p) : *std::min_element(b_entries.begin(), b_entries.end());
            const auto a_entries = materialize(a, terms, p);
            const auto count_a = static_cast<std::size_t>(std::count_if(
                a_entries.begin(), a_entries.end(), [&](const Real& x) { return x >= lowest; }));
            if (!(lowest < min_b || b_entries.empty()) || count_a < b_entries.size()) {
                return Verdict::inconclusive(band, "tail of a not materialized far enough to certify small t");
            }
        } else if (a_fin && !b_fin) {
            // Below min(a), once B(t) exceeds #a, g(t) <= (mb - ma) - t (B(t) - #a) < 0.
            const auto a_entries = materialize(a, 0, p);
            const Real min_a = a_entries.empty() ? Real(1L, p) : *std::min_element(a_entries.begin(), a_entries.end());
            std::size_t count_b = b.support_size();
            for (std::size_t j = 0; j < terms; ++j) {
                Real t = tail_term(*b.geometric_tail(), j, p);
                ++count_b;
                if (t < min_a && count_b > a_entries.size()) {
                    Real g = hockey_stick(b, t, p) - hockey_stick(a, t, p);
                    if (tol.nonnegative(g, band) == Resolution::Violated) {
                        return Verdict::fails(ThresholdWitness{std::move(t), std::move(g)});
                    }
                    break;
                }
            }
            return Verdict::inconclusive(band, "violation of b's infinite tail lies below the tie band");
        } else {
            return Verdict::inconclusive(band, "no violation on materialized knots; both tails infinite");
        }
    }
    if (unresolved) {
        return Verdict::inconclusive(worst_gap, "a comparison fell inside the tie band");
    }
    return Verdict::holds();
}

Real hockey_stick_min(const Ell1Seq& a, const Ell1Seq& b, unsigned precision) {
    if (!a.finitely_supported() || !b.finitely_supported()) {
        throw Error(ErrorCode::Unsupported, "hockey_stick_min needs finitely supported sequences");
    }
    const PiecewiseLinearFn g = difference(hockey_stick_fn(b, precision).fn, hockey_stick_fn(a, precision).fn);
    Real lowest = total_mass(b, precision) - total_mass(a, precision);
    for (std::size_t i = 1; i < g.left_values.size(); ++i) {
        lowest = min(lowest, g.left_values[i]);
    }
    return lowest;
}

}  // namespace majz
