#include "real.hpp"

#include "error.hpp"

#include <algorithm>
#include <memory>
#include <string>

namespace majz {

namespace {

unsigned clamp_precision(unsigned p) {
    return std::max<unsigned>(p, MPFR_PREC_MIN);
}

unsigned join(const Real& a, const Real& b) {
    return std::max(a.precision(), b.precision());
}

struct MpfrString {
    char* p;
    ~MpfrString() { mpfr_free_str(p); }
};

// Renders mantissa digits and base-10 exponent as d.ddd[e±x].
std::string format_decimal(const char* digits, mpfr_exp_t exp10) {
    std::string out;
    std::string_view d(digits);
    if (!d.empty() && d.front() == '-') {
        out.push_back('-');
        d.remove_prefix(1);
    }
    while (d.size() > 1 && d.back() == '0') {
        d.remove_suffix(1);
    }
    const long e = static_cast<long>(exp10) - 1;
    if (e >= -6 && e < 21) {
        if (e < 0) {
            out += "0.";
            out.append(static_cast<size_t>(-e - 1), '0');
            out += d;
        } else if (static_cast<size_t>(e) + 1 >= d.size()) {
            out += d;
            out.append(static_cast<size_t>(e) + 1 - d.size(), '0');
        } else {
            out += d.substr(0, static_cast<size_t>(e) + 1);
            out.push_back('.');
            out += d.substr(static_cast<size_t>(e) + 1);
        }
        return out;
    }
    out.push_back(d.front());
    if (d.size() > 1) {
        out.push_back('.');
        out += d.substr(1);
    }
    out.push_back('e');
    out += std::to_string(e);
    return out;
}

}  // namespace

Real::Real(unsigned precision) {
    mpfr_init2(v_, clamp_precision(precision));
    mpfr_set_zero(v_, 1);
}

Real::Real(double value, unsigned precision) {
    mpfr_init2(v_, clamp_precision(precision));
    mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(long value, unsigned precision) {
    mpfr_init2(v_, clamp_precision(precision));
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real Real::parse(std::string_view text, unsigned precision) {
    std::string buf(text);
    // Trim surrounding whitespace; anything else must be consumed entirely.
    const auto first = buf.find_first_not_of(" \t\n\r");
    const auto last = buf.find_last_not_of(" \t\n\r");
    if (first == std::string::npos) {
        throw Error(ErrorCode::Parse, "empty number");
    }
    buf = buf.substr(first, last - first + 1);
    Real r(precision);
    char* end = nullptr;
    mpfr_strtofr(r.v_, buf.c_str(), &end, 10, MPFR_RNDN);
    if (end != buf.c_str() + buf.size()) {
        throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
    }
    if (!r.is_finite()) {
        throw Error(ErrorCode::Parse, "non-finite number '" + std::string(text) + "'");
    }
    return r;
}

Real Real::with_precision(const Real& other, unsigned precision) {
    Real r(precision);
    mpfr_set(r.v_, other.v_, MPFR_RNDN);
    return r;
}

Real::Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

std::string Real::to_string() const {
    if (is_zero()) {
        return "0";
    }
    if (!is_finite()) {
        return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    }
    // Smallest digit count that round-trips at this precision.
    const auto max_digits = static_cast<size_t>(mpfr_get_str_ndigits(10, mpfr_get_prec(v_)));
    Real back(precision());
    for (size_t n = 1; n <= max_digits; ++n) {
        mpfr_exp_t e = 0;
        MpfrString s{mpfr_get_str(nullptr, &e, 10, n, v_, MPFR_RNDN)};
        std::string text = format_decimal(s.p, e);
        mpfr_strtofr(back.v_, text.c_str(), nullptr, 10, MPFR_RNDN);
        if (mpfr_equal_p(back.v_, v_) != 0) {
            return text;
        }
    }
    mpfr_exp_t e = 0;
    MpfrString s{mpfr_get_str(nullptr, &e, 10, max_digits, v_, MPFR_RNDN)};
    return format_decimal(s.p, e);
}

std::string Real::to_string(int digits) const {
    if (is_zero()) {
        return "0";
    }
    if (!is_finite()) {
        return to_string();
    }
    mpfr_exp_t e = 0;
    MpfrString s{mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(std::max(digits, 1)), v_, MPFR_RNDN)};
    return format_decimal(s.p, e);
}

Real& Real::operator+=(const Real& rhs) {
    if (rhs.precision() > precision()) {
        mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
    }
    mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    if (rhs.precision() > precision()) {
        mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
    }
    mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    if (rhs.precision() > precision()) {
        mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
    }
    mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    if (rhs.precision() > precision()) {
        mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
    }
    mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(long rhs) {
    mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(long rhs) {
    mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real& Real::fma_add(const Real& a, const Real& b) {
    const unsigned p = std::max({precision(), a.precision(), b.precision()});
    if (p > precision()) {
        mpfr_prec_round(v_, p, MPFR_RNDN);
    }
    mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
    return *this;
}

Real operator+(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, long b) {
    Real r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, long b) {
    Real r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_) != 0) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
    if (mpfr_nan_p(a.v_) != 0) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.v_, x.v_, MPFR_RNDN);
    return r;
}

Real exp(const Real& x) {
    Real r(x.precision());
    mpfr_exp(r.v_, x.v_, MPFR_RNDN);
    return r;
}

Real expm1(const Real& x) {
    Real r(x.precision());
    mpfr_expm1(r.v_, x.v_, MPFR_RNDN);
    return r;
}

Real log(const Real& x) {
    Real r(x.precision());
    mpfr_log(r.v_, x.v_, MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r(join(x, y));
    mpfr_pow(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
}

Real pow(const Real& x, unsigned long n) {
    Real r(x.precision());
    mpfr_pow_ui(r.v_, x.v_, n, MPFR_RNDN);
    return r;
}

Real ldexp(const Real& x, long e) {
    Real r(x.precision());
    mpfr_mul_2si(r.v_, x.v_, e, MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }
Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }

Real epsilon_pow2(long bits, unsigned precision) {
    Real r(1L, precision);
    mpfr_mul_2si(r.raw(), r.raw(), -bits, MPFR_RNDN);
    return r;
}

Real factorial(unsigned n, unsigned precision) {
    Real r(precision);
    mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
    return r;
}

}  // namespace majz
