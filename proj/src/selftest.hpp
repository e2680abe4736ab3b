#pragma once

// Seeded property suites over randomly generated instances.

#include "io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace majz {

struct SelftestConfig {
    std::uint64_t seed = 1;
    /// Cases per suite (expensive suites run a tenth, at least one when cases > 0).
    std::size_t cases = 200;
    unsigned threads = 1;
    unsigned precision_bits = kDefaultPrecision;
};

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    /// Lowest failing case index and what went wrong.
    std::string first_failure;
};

struct SelftestReport {
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::vector<SuiteResult> suites;

    [[nodiscard]] bool passed() const;
};

SelftestReport run_selftest(const SelftestConfig& config);

Json to_json(const SelftestReport& r);

/// Per-case seed derived from the run seed, suite and case index, so that
/// every case is independent of evaluation order.
std::uint64_t case_seed(std::uint64_t seed, std::size_t suite, std::size_t index);

}  // namespace majz
