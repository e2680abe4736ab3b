#pragma once

// Nonnegative summable sequences: an explicit prefix followed by either an
// all-zero tail or a geometric tail first * ratio^j, j = 0, 1, 2, ...

#include "real.hpp"
#include "verdict.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <variant>
#include <vector>

namespace majz {

struct ZeroTail {};

struct GeometricTail {
    Real first;
    Real ratio;
};

using TailModel = std::variant<ZeroTail, GeometricTail>;

class Ell1Seq {
public:
    Ell1Seq() = default;
    explicit Ell1Seq(std::vector<Real> prefix, TailModel tail = ZeroTail{});

    static Ell1Seq of(std::initializer_list<double> values, unsigned precision = kDefaultPrecision);
    static Ell1Seq geometric(std::initializer_list<double> prefix, double first, double ratio,
                             unsigned precision = kDefaultPrecision);

    [[nodiscard]] const std::vector<Real>& prefix() const { return prefix_; }
    [[nodiscard]] const TailModel& tail() const { return tail_; }
    [[nodiscard]] bool finitely_supported() const { return std::holds_alternative<ZeroTail>(tail_); }
    [[nodiscard]] const GeometricTail* geometric_tail() const { return std::get_if<GeometricTail>(&tail_); }

    /// Lowest precision carried by any stored value; kDefaultPrecision when empty.
    [[nodiscard]] unsigned data_precision() const;

    /// Number of strictly positive entries (finitely supported sequences only).
    [[nodiscard]] std::size_t support_size() const;

private:
    std::vector<Real> prefix_;
    TailModel tail_ = ZeroTail{};
};

Verdict validate(const Ell1Seq& seq);

/// Sum of all entries; a geometric tail contributes first / (1 - ratio).
Real total_mass(const Ell1Seq& seq, unsigned precision);

/// Geometric tail entry j: first * ratio^j.
Real tail_term(const GeometricTail& tail, std::size_t j, unsigned precision);

/// Mass of the tail entries with index >= from: first * ratio^from / (1 - ratio).
Real tail_remainder(const GeometricTail& tail, std::size_t from, unsigned precision);

/// Walks the entries of a sequence in non-increasing order, merging the
/// sorted prefix with the tail. Prefix entries come first on ties. Once the
/// positive entries are exhausted it yields zeros.
class DescendingEnumerator {
public:
    DescendingEnumerator(const Ell1Seq& seq, unsigned precision);

    Real next();
    /// Number of entries produced so far.
    [[nodiscard]] std::size_t position() const { return produced_; }
    /// Index of the next tail term that has not been produced.
    [[nodiscard]] std::size_t tail_index() const { return tail_index_; }
    /// True when every prefix entry has been produced.
    [[nodiscard]] bool prefix_exhausted() const { return prefix_pos_ == sorted_.size(); }

private:
    std::vector<Real> sorted_;
    const GeometricTail* tail_;
    unsigned precision_;
    std::size_t prefix_pos_ = 0;
    std::size_t tail_index_ = 0;
    std::size_t produced_ = 0;
    std::optional<Real> tail_head_;
};

/// The k largest entries in non-increasing order, zero padded.
std::vector<Real> k_largest(const Ell1Seq& seq, std::size_t k, unsigned precision);

/// All pairwise products x_i * c_j, sorted non-increasing. Both operands must
/// be finitely supported; throws Error(Unsupported) otherwise.
Ell1Seq tensor(const Ell1Seq& x, const Ell1Seq& c, unsigned precision);

/// Copy with every positive entry multiplied by `factor` (> 0).
Ell1Seq scaled(const Ell1Seq& seq, const Real& factor, unsigned precision);

}  // namespace majz
