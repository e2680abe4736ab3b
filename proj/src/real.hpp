#pragma once

// Extended-precision binary floating point value built on MPFR.
//
// Every Real carries its own precision. Binary operations produce a result
// at the larger of the operand precisions; rounding is always to nearest.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace majz {

inline constexpr unsigned kDefaultPrecision = 128;

class Real {
public:
    explicit Real(unsigned precision = kDefaultPrecision);
    Real(double value, unsigned precision);
    Real(long value, unsigned precision);
    Real(int value, unsigned precision) : Real(static_cast<long>(value), precision) {}

    /// Parses decimal (or hex-float) text. Throws Error(Parse) on malformed input.
    static Real parse(std::string_view text, unsigned precision);

    /// Copy of `other` rounded to `precision` bits.
    static Real with_precision(const Real& other, unsigned precision);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    [[nodiscard]] unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
    [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    [[nodiscard]] long exponent() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

    /// Shortest decimal string that parses back to exactly this value at
    /// this value's precision.
    [[nodiscard]] std::string to_string() const;
    /// Fixed number of significant digits, for human-readable output.
    [[nodiscard]] std::string to_string(int digits) const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real& operator*=(long rhs);
    Real& operator/=(long rhs);
    Real operator-() const;

    /// this += a * b, with a single rounding.
    Real& fma_add(const Real& a, const Real& b);

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const Real& a, long b);

    friend Real abs(const Real& x);
    friend Real exp(const Real& x);
    friend Real expm1(const Real& x);
    friend Real log(const Real& x);
    friend Real pow(const Real& x, const Real& y);
    friend Real pow(const Real& x, unsigned long n);
    /// x * 2^e, exact.
    friend Real ldexp(const Real& x, long e);

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

/// 2^-bits at `precision`.
Real epsilon_pow2(long bits, unsigned precision);

/// n! as a Real.
Real factorial(unsigned n, unsigned precision);

}  // namespace majz
