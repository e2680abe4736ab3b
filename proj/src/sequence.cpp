#include "sequence.hpp"

#include "error.hpp"
#include "tolerance.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace majz {

const char* to_string(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::Holds:
        return "holds";
    case VerdictKind::Fails:
        return "fails";
    case VerdictKind::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

const char* to_string(TiePolicy policy) {
    return policy == TiePolicy::Strict ? "strict" : "as-equal";
}

Ell1Seq::Ell1Seq(std::vector<Real> prefix, TailModel tail) : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    if (finitely_supported()) {
        while (!prefix_.empty() && prefix_.back().is_zero()) {
            prefix_.pop_back();
        }
    }
}

Ell1Seq Ell1Seq::of(std::initializer_list<double> values, unsigned precision) {
    std::vector<Real> p;
    p.reserve(values.size());
    for (double v : values) {
        p.emplace_back(v, precision);
    }
    return Ell1Seq(std::move(p));
}

Ell1Seq Ell1Seq::geometric(std::initializer_list<double> prefix, double first, double ratio, unsigned precision) {
    std::vector<Real> p;
    for (double v : prefix) {
        p.emplace_back(v, precision);
    }
    return Ell1Seq(std::move(p), GeometricTail{Real(first, precision), Real(ratio, precision)});
}

unsigned Ell1Seq::data_precision() const {
    unsigned p = 0;
    for (const auto& x : prefix_) {
        p = p == 0 ? x.precision() : std::min(p, x.precision());
    }
    if (const auto* g = geometric_tail()) {
        p = p == 0 ? g->first.precision() : std::min(p, g->first.precision());
        p = std::min(p, g->ratio.precision());
    }
    return p == 0 ? kDefaultPrecision : p;
}

std::size_t Ell1Seq::support_size() const {
    return static_cast<std::size_t>(
        std::count_if(prefix_.begin(), prefix_.end(), [](const Real& x) { return x.sign() > 0; }));
}

Verdict validate(const Ell1Seq& seq) {
    const auto& p = seq.prefix();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p[i].is_finite()) {
            return Verdict::fails(InvariantWitness{i, "entry is not finite"});
        }
        if (p[i].sign() < 0) {
            return Verdict::fails(InvariantWitness{i, "entry is negative"});
        }
    }
    if (const auto* g = seq.geometric_tail()) {
        if (!g->first.is_finite() || g->first.sign() <= 0) {
            return Verdict::fails(InvariantWitness{p.size(), "geometric tail first term must be positive"});
        }
        if (!g->ratio.is_finite() || g->ratio.sign() <= 0 || g->ratio >= 1L) {
            return Verdict::fails(InvariantWitness{p.size(), "geometric tail ratio must lie in (0, 1)"});
        }
    }
    return Verdict::holds();
}

Real total_mass(const Ell1Seq& seq, unsigned precision) {
    // Summing the sorted entries makes the result independent of input order.
    std::vector<Real> sorted = seq.prefix();
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    Real sum(precision);
    for (const auto& x : sorted) {
        sum += x;
    }
    if (const auto* g = seq.geometric_tail()) {
        sum += tail_remainder(*g, 0, precision);
    }
    return sum;
}

Real tail_term(const GeometricTail& tail, std::size_t j, unsigned precision) {
    Real r = Real::with_precision(tail.ratio, precision);
    Real term = pow(r, static_cast<unsigned long>(j));
    term *= tail.first;
    return term;
}

Real tail_remainder(const GeometricTail& tail, std::size_t from, unsigned precision) {
    Real one(1L, precision);
    return tail_term(tail, from, precision) / (one - tail.ratio);
}

DescendingEnumerator::DescendingEnumerator(const Ell1Seq& seq, unsigned precision)
    : sorted_(seq.prefix()), tail_(seq.geometric_tail()), precision_(precision) {
    std::sort(sorted_.begin(), sorted_.end(), std::greater<>());
    if (tail_ != nullptr) {
        tail_head_ = tail_term(*tail_, 0, precision_);
    }
}

Real DescendingEnumerator::next() {
    ++produced_;
    const bool have_prefix = prefix_pos_ < sorted_.size();
    if (tail_head_ && (!have_prefix || sorted_[prefix_pos_] < *tail_head_)) {
        Real out = std::move(*tail_head_);
        ++tail_index_;
        tail_head_ = tail_term(*tail_, tail_index_, precision_);
        return out;
    }
    if (have_prefix) {
        return sorted_[prefix_pos_++];
    }
    return Real(precision_);
}

std::vector<Real> k_largest(const Ell1Seq& seq, std::size_t k, unsigned precision) {
    DescendingEnumerator walk(seq, precision);
    std::vector<Real> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(walk.next());
    }
    return out;
}

Ell1Seq tensor(const Ell1Seq& x, const Ell1Seq& c, unsigned precision) {
    if (!x.finitely_supported() || !c.finitely_supported()) {
        throw Error(ErrorCode::Unsupported, "tensor product requires finitely supported operands");
    }
    std::vector<Real> products;
    products.reserve(x.prefix().size() * c.prefix().size());
    for (const auto& xi : x.prefix()) {
        for (const auto& cj : c.prefix()) {
            Real p(precision);
            mpfr_mul(p.raw(), xi.raw(), cj.raw(), MPFR_RNDN);
            products.push_back(std::move(p));
        }
    }
    std::sort(products.begin(), products.end(), std::greater<>());
    return Ell1Seq(std::move(products));
}

Ell1Seq scaled(const Ell1Seq& seq, const Real& factor, unsigned precision) {
    std::vector<Real> p;
    p.reserve(seq.prefix().size());
    for (const auto& x : seq.prefix()) {
        Real v(precision);
        mpfr_mul(v.raw(), x.raw(), factor.raw(), MPFR_RNDN);
        p.push_back(std::move(v));
    }
    TailModel tail = ZeroTail{};
    if (const auto* g = seq.geometric_tail()) {
        Real f(precision);
        mpfr_mul(f.raw(), g->first.raw(), factor.raw(), MPFR_RNDN);
        tail = GeometricTail{std::move(f), g->ratio};
    }
    return Ell1Seq(std::move(p), std::move(tail));
}

}  // namespace majz
