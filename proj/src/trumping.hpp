#pragma once

// Trumping: x is trumped by y when x (x) c is majorized by y (x) c for some
// catalyst c with all entries positive. Catalysts are searched on finite
// simplex grids.

#include "order_checks.hpp"
#include "real.hpp"
#include "sequence.hpp"
#include "verdict.hpp"
#include "zeta.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace majz {

/// majorize_partial_sums(x (x) c, y (x) c). Every operand must be finitely
/// supported and c must be nonempty with positive entries; otherwise throws
/// Error(InvalidArgument) (Error(Unsupported) for tailed operands).
Verdict trump_check(const Ell1Seq& x, const Ell1Seq& y, const Ell1Seq& c, const OrderOptions& opts = {});

struct CatalystSearchConfig {
    std::size_t dim_min = 2;
    std::size_t dim_max = 2;
    /// Grid step is 1 / resolution.
    std::size_t resolution = 20;
    /// Each step doubles the resolution around the least-violating candidate.
    std::size_t refine_steps = 0;
    unsigned threads = 1;
    /// Maximum number of candidates (the identity catalyst counts as one).
    std::size_t budget = 100000;
    unsigned precision_bits = kDefaultPrecision;
    TiePolicy ties = TiePolicy::AsEqual;
};

struct TrumpReport {
    Verdict verdict = Verdict::holds();
    std::optional<Ell1Seq> catalyst;
    std::size_t candidates_tried = 0;
    /// Plain comparison of x against y.
    Verdict plain = Verdict::holds();
    /// min over k of the partial-sum slack for x (x) c against y (x) c, for
    /// the reported catalyst (or the least-violating one when none works).
    std::optional<Real> slack;
    std::optional<Ell1Seq> closest;
};

/// Canonical order: dimension ascending, then catalysts k / resolution with
/// k_1 >= ... >= k_d >= 1 summing to resolution, lexicographically ascending.
/// Reports the first success in that order regardless of thread count.
TrumpReport catalyst_search(const Ell1Seq& x, const Ell1Seq& y, const CatalystSearchConfig& config = {});

/// Candidate catalysts of one dimension in canonical order.
std::vector<std::vector<long>> simplex_compositions(std::size_t dim, long resolution);

struct ProbeConfig {
    CatalystSearchConfig search;
    SGrid positivity_grid;
    CMConfig cm;
};

struct EvidenceRecord {
    bool hypothesis_met = false;
    Verdict mass = Verdict::holds();
    std::optional<Verdict> positivity;
    std::optional<TrumpReport> search;
    std::optional<CMReport> product_cm;
    /// zeta > 0 on the grid but no catalyst was found within budget. The
    /// search is incomplete, so this is a lead, not a counterexample.
    bool candidate_counterexample = false;
    std::string note;
};

/// Positivity of zeta on the grid, then catalyst search, then a CM scan of
/// the catalysed pair (a (x) c, b (x) c).
EvidenceRecord conjecture_probe(const ZetaPair& pair, const ProbeConfig& config = {});

}  // namespace majz
