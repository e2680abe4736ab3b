#pragma once

// The Dirichlet-series side of majorization.
//
// For a, b in l1+ let zeta(s) = sum b_n^s - sum a_n^s and
// f(s) = zeta(s) / (s (s - 1)). With equal masses, f(s) is the Mellin
// transform of g(t) = H_b(t) - H_a(t) against t^(s-2), so a is majorized by b
// exactly when f is completely monotone on (1, inf). This module evaluates
// zeta, f and their derivatives, tests (-1)^n f^(n)(s) >= 0 on grids, and
// cross-checks the integral identities linking the three characterizations.

#include "jet.hpp"
#include "order_checks.hpp"
#include "real.hpp"
#include "sequence.hpp"
#include "tolerance.hpp"
#include "verdict.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace majz {

struct ZetaPair {
    Ell1Seq a;
    Ell1Seq b;
};

struct ZetaOptions {
    unsigned precision_bits = kDefaultPrecision;
    TiePolicy ties = TiePolicy::AsEqual;
    /// Cap on geometric-tail terms materialized by the stable f route.
    std::size_t tail_terms_max = 20000;

    [[nodiscard]] Tolerance tolerance() const { return Tolerance{precision_bits, ties}; }
};

/// Jet of s -> sum x_n^s at s (s > 1). Geometric tails use the closed form
/// first^s / (1 - ratio^s). Throws Error(InvalidArgument) for s <= 1.
TaylorJet power_sum(const Ell1Seq& seq, const Real& s, std::size_t order, unsigned precision);

struct TruncatedPowerSum {
    TaylorJet jet;
    /// Certified bound on |coefficient k of the omitted terms|, per k.
    std::vector<Real> remainder_bound;
};

/// power_sum over the prefix and the first `tail_terms` tail entries only.
TruncatedPowerSum power_sum_truncated(const Ell1Seq& seq, const Real& s, std::size_t order, std::size_t tail_terms,
                                      unsigned precision);

/// power_sum(b) - power_sum(a).
TaylorJet zeta_jet(const ZetaPair& pair, const Real& s, std::size_t order, unsigned precision);

/// Holds iff zeta(1) = mass(b) - mass(a) vanishes within the mass tie band.
Verdict zeta_at_one(const ZetaPair& pair, const ZetaOptions& opts = {});

/// Jet of f(s) = zeta(s) / (s (s - 1)), computed with the zero at s = 1
/// removed analytically so that accuracy does not degrade as s -> 1+.
/// When the masses tie, zeta(1) is taken to be exactly 0.
TaylorJet f_jet(const ZetaPair& pair, const Real& s, std::size_t order, const ZetaOptions& opts = {});

/// Jet of f by literal jet division zeta_jet / (s (s - 1)). Loses roughly
/// order * log2(1 / (s - 1)) bits near s = 1; kept as an independent route.
TaylorJet f_jet_quotient(const ZetaPair& pair, const Real& s, std::size_t order, unsigned precision);

/// (-1)^n f^(n)(s) for n = 0..order together with an absolute error bound.
struct SignedDerivatives {
    Real s;
    std::vector<Real> values;
    std::vector<Real> bounds;
};

/// Reusable evaluator: logarithms and tail data are prepared once per pair.
class CmEvaluator {
public:
    CmEvaluator(const ZetaPair& pair, const ZetaOptions& opts);
    ~CmEvaluator();
    CmEvaluator(CmEvaluator&&) noexcept;
    CmEvaluator& operator=(CmEvaluator&&) noexcept;

    /// s must exceed 1.
    [[nodiscard]] SignedDerivatives signed_derivatives(const Real& s, std::size_t order) const;
    /// Jet of f with per-coefficient absolute error bounds.
    [[nodiscard]] TaylorJet f(const Real& s, std::size_t order, std::vector<Real>* bounds = nullptr) const;
    /// zeta(s) and an absolute error bound.
    [[nodiscard]] std::pair<Real, Real> zeta(const Real& s) const;
    [[nodiscard]] bool masses_tie() const;
    [[nodiscard]] unsigned precision() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Geometric grid of `points` values on [s_min, s_max].
struct SGrid {
    double s_min = 1.001;
    double s_max = 1000.0;
    std::size_t points = 64;

    [[nodiscard]] std::vector<Real> build(unsigned precision) const;
};

struct CMConfig {
    std::size_t order_max = 24;
    SGrid grid;
    unsigned precision_bits = kDefaultPrecision;
    TiePolicy ties = TiePolicy::AsEqual;
    unsigned threads = 1;
    /// Keep every (s, n, value) sample in the report (for CSV export).
    bool keep_samples = false;
};

struct CMSample {
    std::size_t grid_index;
    int n;
    Real value;
    Real bound;
};

struct CMReport {
    Verdict verdict = Verdict::holds();
    std::size_t orders_checked = 0;
    std::vector<Real> grid;
    std::optional<Real> min_signed_value;
    int min_n = 0;
    std::optional<Real> min_s;
    unsigned precision_bits = 0;
    /// zeta(1) = 0 held; when false the CM criterion does not apply.
    bool precondition_met = true;
    std::vector<CMSample> samples;
    std::size_t evaluations = 0;
    /// Direct route: hockey-stick witness t* with g(t*) < 0, when found.
    std::optional<ThresholdWitness> hockey_stick_witness;
    std::string note;
};

/// Samples (-1)^n f^(n)(s) >= -tol for n <= order_max over the grid. A
/// violation is reported only if it survives recomputation at doubled
/// precision; the reported witness is the smallest (n, grid index) that does.
CMReport cm_test(const ZetaPair& pair, const CMConfig& config = {});

struct RefuteBudget {
    std::size_t max_order = 64;
    double s_min = 1.0 + 1e-6;
    double s_max = 1e4;
    unsigned max_precision = 512;
    /// Total number of s points that may be evaluated (each at full order).
    std::size_t max_evaluations = 4000;
    TiePolicy ties = TiePolicy::AsEqual;
    unsigned threads = 1;
};

/// Searches for a complete-monotonicity violation by escalating order, grid
/// range and density, and precision; s points are also aimed at the kernel
/// peak u = n / (s - 1) for u = -ln t* where g(t*) < 0. Returns Fails with a
/// doubled-precision-confirmed witness or Inconclusive.
CMReport cm_refute_adaptive(const ZetaPair& pair, const RefuteBudget& budget = {});

struct IdentityCheck {
    Real lhs;       // integral side
    Real rhs;       // series side
    Real residual;  // |lhs - rhs|
    Real scale;     // magnitude used for the relative residual
    [[nodiscard]] Real relative() const { return scale.is_zero() ? residual : residual / scale; }
};

/// sum x_n^s against s * int A(x) x^(s-1) dx integrated per step of A.
/// Zero tails only (Error(Unsupported) otherwise); s > 1.
IdentityCheck stieltjes_identity_check(const Ell1Seq& seq, const Real& s, unsigned precision);

/// The Riemann-Stieltjes sum int x^s dA over the jumps of A; equals -sum x_n^s.
Real stieltjes_sum(const Ell1Seq& seq, const Real& s, unsigned precision);

/// zeta(s) against s (s - 1) int g(t) t^(s-2) dt integrated per segment of g.
/// Requires equal masses (Error(InvalidArgument)) and zero tails.
IdentityCheck mellin_identity_check(const ZetaPair& pair, const Real& s, const ZetaOptions& opts = {});

/// Advisory: Holds if zeta(s) > tol at every grid point, Fails at the first
/// point with zeta(s) < -tol, Inconclusive otherwise.
Verdict zeta_positivity(const ZetaPair& pair, const std::vector<Real>& grid, const ZetaOptions& opts = {});

}  // namespace majz
