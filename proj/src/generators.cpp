#include "generators.hpp"

#include "order_checks.hpp"

#include <algorithm>

namespace majz {

std::vector<long> random_composition(Rng& rng, std::size_t dim, long total) {
    // Stars and bars: dim - 1 distinct cut points in [1, total - 1].
    std::vector<long> cuts;
    while (cuts.size() + 1 < dim) {
        const long c = rng.integer(1, total - 1);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) {
            cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<long> parts;
    long prev = 0;
    for (long c : cuts) {
        parts.push_back(c - prev);
        prev = c;
    }
    parts.push_back(total - prev);
    // Shuffle with the same generator so order is reproducible.
    for (std::size_t i = parts.size(); i > 1; --i) {
        std::swap(parts[i - 1], parts[static_cast<std::size_t>(rng.integer(0, static_cast<long>(i) - 1))]);
    }
    return parts;
}

Ell1Seq dyadic_sequence(const std::vector<long>& parts, unsigned precision) {
    std::vector<Real> v;
    v.reserve(parts.size());
    for (long k : parts) {
        v.push_back(ldexp(Real(k, precision), -kDyadicBits));
    }
    return Ell1Seq(std::move(v));
}

SeqPair random_pair(Rng& rng, std::size_t max_dim, bool equal_mass, unsigned precision) {
    const long unit = 1L << kDyadicBits;
    const auto da = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_dim)));
    const auto db = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_dim)));
    long mass_b = unit;
    if (!equal_mass) {
        const long delta = rng.integer(1, unit / 4);
        mass_b = rng.integer(0, 1) == 0 ? unit - delta : unit + delta;
    }
    return {dyadic_sequence(random_composition(rng, da, unit), precision),
            dyadic_sequence(random_composition(rng, db, mass_b), precision)};
}

SeqPair t_transform_pair(Rng& rng, std::size_t max_dim, unsigned precision) {
    const long unit = 1L << kDyadicBits;
    const auto d = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_dim)));
    std::vector<long> b = random_composition(rng, d, unit);
    std::vector<long> a = b;
    const long steps = rng.integer(0, 2 * static_cast<long>(d));
    for (long s = 0; s < steps && d > 1; ++s) {
        auto i = static_cast<std::size_t>(rng.integer(0, static_cast<long>(d) - 1));
        auto j = static_cast<std::size_t>(rng.integer(0, static_cast<long>(d) - 1));
        if (a[i] < a[j]) {
            std::swap(i, j);
        }
        if (i == j || a[i] == a[j]) {
            continue;
        }
        // (a_i, a_j) -> (a_i - t, a_j + t) with 0 <= t <= a_i - a_j
        const long t = rng.integer(0, a[i] - a[j]);
        a[i] -= t;
        a[j] += t;
    }
    return {dyadic_sequence(a, precision), dyadic_sequence(b, precision)};
}

std::vector<SeqPair> curated_counterexamples(std::uint64_t seed, std::size_t count, double margin,
                                             unsigned precision) {
    const long unit = 1L << kDyadicBits;
    Rng rng(seed);
    std::vector<SeqPair> out;
    const Real threshold(-margin, precision);
    while (out.size() < count) {
        const auto da = static_cast<std::size_t>(rng.integer(2, 8));
        const auto db = static_cast<std::size_t>(rng.integer(2, 8));
        SeqPair p{dyadic_sequence(random_composition(rng, da, unit), precision),
                  dyadic_sequence(random_composition(rng, db, unit), precision)};
        if (hockey_stick_min(p.a, p.b, precision) <= threshold) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

Ell1Seq random_geometric(Rng& rng, unsigned precision) {
    const auto d = static_cast<std::size_t>(rng.integer(0, 4));
    std::vector<Real> prefix;
    for (std::size_t i = 0; i < d; ++i) {
        prefix.push_back(ldexp(Real(rng.integer(1, 1L << kDyadicBits), precision), -kDyadicBits));
    }
    const Real first = ldexp(Real(rng.integer(1, 1L << (kDyadicBits - 1)), precision), -kDyadicBits);
    const Real ratio = Real(rng.integer(10, 90), precision) / 100L;
    return Ell1Seq(std::move(prefix), GeometricTail{first, ratio});
}

}  // namespace majz
