#pragma once

// Seeded instance generators shared by the property suites and the
// acceptance runs. Entries are dyadic (k / 2^bits) so masses are exact.

#include "real.hpp"
#include "sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace majz {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [lo, hi].
    long integer(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(engine_() % span);
    }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

inline constexpr long kDyadicBits = 10;

struct SeqPair {
    Ell1Seq a;
    Ell1Seq b;
};

/// Integer composition of `total` into `dim` positive parts, in random order.
std::vector<long> random_composition(Rng& rng, std::size_t dim, long total);

/// Sequence with entries parts[i] / 2^kDyadicBits.
Ell1Seq dyadic_sequence(const std::vector<long>& parts, unsigned precision);

/// Random finitely supported pair with dimensions in [1, max_dim]. With
/// equal_mass both have mass 1; otherwise the masses differ.
SeqPair random_pair(Rng& rng, std::size_t max_dim, bool equal_mass, unsigned precision);

/// a obtained from b by random T-transforms, so a is majorized by b.
SeqPair t_transform_pair(Rng& rng, std::size_t max_dim, unsigned precision);

/// Equal-mass pairs of dimension 2..8 whose hockey-stick difference dips to
/// -margin or below, drawn until `count` are found.
std::vector<SeqPair> curated_counterexamples(std::uint64_t seed, std::size_t count, double margin,
                                             unsigned precision);

/// Geometric-tailed sequence: short dyadic prefix, first in (0, 0.5], ratio in [0.1, 0.9].
Ell1Seq random_geometric(Rng& rng, unsigned precision);

}  // namespace majz
