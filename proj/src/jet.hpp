#pragma once

// Truncated Taylor series at a real point: coeffs[k] = f^(k)(center) / k!.

#include "real.hpp"

#include <cstddef>
#include <vector>

namespace majz {

class TaylorJet {
public:
    /// The zero jet of the given order.
    TaylorJet(Real center, std::size_t order);

    static TaylorJet constant(const Real& center, std::size_t order, const Real& value);
    /// The identity function s -> s.
    static TaylorJet variable(const Real& center, std::size_t order);

    [[nodiscard]] const Real& center() const { return center_; }
    [[nodiscard]] std::size_t order() const { return coeffs_.size() - 1; }
    [[nodiscard]] unsigned precision() const { return center_.precision(); }
    [[nodiscard]] const std::vector<Real>& coeffs() const { return coeffs_; }
    [[nodiscard]] const Real& operator[](std::size_t k) const { return coeffs_[k]; }
    Real& operator[](std::size_t k) { return coeffs_[k]; }

    [[nodiscard]] const Real& value() const { return coeffs_.front(); }
    /// f^(k)(center) = k! * coeffs[k].
    [[nodiscard]] Real derivative(std::size_t k) const;

    TaylorJet& operator+=(const TaylorJet& rhs);
    TaylorJet& operator-=(const TaylorJet& rhs);
    TaylorJet& operator*=(const Real& scalar);
    TaylorJet operator-() const;

    friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
    friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
    friend TaylorJet operator*(TaylorJet a, const Real& s) { return a *= s; }
    friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b);
    /// Requires b.value() != 0; throws Error(InvalidArgument) otherwise.
    friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b);
    friend TaylorJet exp(const TaylorJet& a);

private:
    void require_compatible(const TaylorJet& other) const;

    Real center_;
    std::vector<Real> coeffs_;
};

}  // namespace majz
