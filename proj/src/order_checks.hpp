#pragma once

// Majorization by sorted partial sums and by hockey-stick functions
// H(t) = sum_j (x_j - t)^+, on top of exact step / piecewise-linear data.

#include "real.hpp"
#include "sequence.hpp"
#include "tolerance.hpp"
#include "verdict.hpp"

#include <cstddef>
#include <vector>

namespace majz {

struct OrderOptions {
    unsigned precision_bits = kDefaultPrecision;
    TiePolicy ties = TiePolicy::AsEqual;
    /// Largest partial-sum index / number of tail terms materialized for
    /// sequences with infinite support.
    std::size_t k_max = 10000;

    [[nodiscard]] Tolerance tolerance() const { return Tolerance{precision_bits, ties}; }
};

/// Non-increasing integer step function on (0, inf):
///   value(x) = values[0] on (0, t_1], values[i] on (t_i, t_{i+1}], 0 beyond t_m.
struct StepFn {
    std::vector<Real> breakpoints;  // strictly increasing, positive
    std::vector<long> values;       // size = breakpoints.size() + 1, last is 0

    [[nodiscard]] long operator()(const Real& x) const;
};

/// Counting function A(x) = #{n : x_n >= x}. For geometric tails only the
/// first `truncation` tail terms are materialized; the result is exact on
/// (exact_above, inf) and the unmaterialized mass is `remainder_mass`.
struct CountingFunction {
    StepFn step;
    Real exact_above;
    Real remainder_mass;
};

CountingFunction counting_function(const Ell1Seq& seq, std::size_t truncation, unsigned precision);

/// int_t^inf A(x) dx, integrated segment by segment.
Real integrate_above(const StepFn& a, const Real& t);

/// Continuous piecewise-linear function on [0, inf), identically 0 beyond the
/// last knot. Segment i spans [knots[i], knots[i+1]] and is described by its
/// value at the left knot and its slope.
struct PiecewiseLinearFn {
    std::vector<Real> knots;  // knots[0] == 0, increasing
    std::vector<Real> left_values;
    std::vector<Real> slopes;

    [[nodiscard]] Real operator()(const Real& t) const;
    [[nodiscard]] std::size_t segment_count() const { return slopes.size(); }
};

/// f - g on the union of both knot sets.
PiecewiseLinearFn difference(const PiecewiseLinearFn& f, const PiecewiseLinearFn& g);

struct HockeyStickFn {
    PiecewiseLinearFn fn;
    /// The function is exact on (exact_above, inf); 0 for finitely supported input.
    Real exact_above;
    /// Bound on |H(t) - fn(t)| for t <= exact_above.
    Real remainder_bound;
};

/// sum_j (x_j - t)^+. Throws Error(InvalidArgument) for t <= 0.
Real hockey_stick(const Ell1Seq& seq, const Real& t, unsigned precision);

/// The whole map t -> hockey_stick(seq, t) as piecewise-linear data.
HockeyStickFn hockey_stick_fn(const Ell1Seq& seq, unsigned precision, std::size_t truncation = 10000);

Verdict majorize_partial_sums(const Ell1Seq& a, const Ell1Seq& b, const OrderOptions& opts = {});

Verdict majorize_hockey_stick(const Ell1Seq& a, const Ell1Seq& b, const OrderOptions& opts = {});

/// inf over t > 0 of H_b(t) - H_a(t); finitely supported inputs only
/// (Error(Unsupported) otherwise).
Real hockey_stick_min(const Ell1Seq& a, const Ell1Seq& b, unsigned precision);

/// Mass comparison shared by every characterization (condition sum a = sum b).
Resolution masses_equal(const Ell1Seq& a, const Ell1Seq& b, const Tolerance& tol, Real* mass_a = nullptr,
                        Real* mass_b = nullptr);

}  // namespace majz
