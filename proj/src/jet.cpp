#include "jet.hpp"

#include "error.hpp"

namespace majz {

TaylorJet::TaylorJet(Real center, std::size_t order)
    : center_(std::move(center)), coeffs_(order + 1, Real(center_.precision())) {}

TaylorJet TaylorJet::constant(const Real& center, std::size_t order, const Real& value) {
    TaylorJet j(center, order);
    j.coeffs_[0] = Real::with_precision(value, center.precision());
    return j;
}

TaylorJet TaylorJet::variable(const Real& center, std::size_t order) {
    TaylorJet j(center, order);
    j.coeffs_[0] = center;
    if (order >= 1) {
        j.coeffs_[1] = Real(1L, center.precision());
    }
    return j;
}

Real TaylorJet::derivative(std::size_t k) const {
    return coeffs_.at(k) * factorial(static_cast<unsigned>(k), precision());
}

void TaylorJet::require_compatible(const TaylorJet& other) const {
    if (other.coeffs_.size() != coeffs_.size() || other.center_ != center_) {
        throw Error(ErrorCode::InvalidArgument, "jets must share center and order");
    }
}

TaylorJet& TaylorJet::operator+=(const TaylorJet& rhs) {
    require_compatible(rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] += rhs.coeffs_[k];
    }
    return *this;
}

TaylorJet& TaylorJet::operator-=(const TaylorJet& rhs) {
    require_compatible(rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] -= rhs.coeffs_[k];
    }
    return *this;
}

TaylorJet& TaylorJet::operator*=(const Real& scalar) {
    for (auto& c : coeffs_) {
        c *= scalar;
    }
    return *this;
}

TaylorJet TaylorJet::operator-() const {
    TaylorJet out = *this;
    for (auto& c : out.coeffs_) {
        c = -c;
    }
    return out;
}

TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    a.require_compatible(b);
    TaylorJet out(a.center_, a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) {
        Real& acc = out.coeffs_[k];
        for (std::size_t j = 0; j <= k; ++j) {
            acc.fma_add(a.coeffs_[j], b.coeffs_[k - j]);
        }
    }
    return out;
}

TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) {
    a.require_compatible(b);
    if (b.coeffs_[0].is_zero()) {
        throw Error(ErrorCode::InvalidArgument, "jet division by a jet with zero value");
    }
    TaylorJet q(a.center_, a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) {
        Real acc = a.coeffs_[k];
        for (std::size_t j = 1; j <= k; ++j) {
            acc -= b.coeffs_[j] * q.coeffs_[k - j];
        }
        q.coeffs_[k] = acc / b.coeffs_[0];
    }
    return q;
}

TaylorJet exp(const TaylorJet& a) {
    TaylorJet e(a.center_, a.order());
    e.coeffs_[0] = exp(a.coeffs_[0]);
    for (std::size_t k = 1; k <= a.order(); ++k) {
        Real acc(a.precision());
        for (std::size_t j = 1; j <= k; ++j) {
            acc.fma_add(a.coeffs_[j] * static_cast<long>(j), e.coeffs_[k - j]);
        }
        e.coeffs_[k] = acc / static_cast<long>(k);
    }
    return e;
}

}  // namespace majz
