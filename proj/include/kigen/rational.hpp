#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "kigen/errors.hpp"

namespace kigen {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator. All arithmetic is exact; there is no floating-point
/// mode. Backed by GMP's mpq_class, whose canonical form matches the
/// invariants required here.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long numerator) : value_(numerator) {} // NOLINT(google-explicit-constructor)

    Rational(long numerator, long denominator)
    {
        if (denominator == 0) throw DivisionByZeroError("Rational: zero denominator");
        value_ = mpq_class(numerator, denominator);
        value_.canonicalize();
    }

    explicit Rational(const mpz_class& numerator) : value_(numerator) {}

    Rational(const mpz_class& numerator, const mpz_class& denominator)
    {
        if (denominator == 0) throw DivisionByZeroError("Rational: zero denominator");
        value_ = mpq_class(numerator, denominator);
        value_.canonicalize();
    }

    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Parses "num" or "num/den" in base 10.
    static Rational from_string(const std::string& text)
    {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw ParameterError("Rational: cannot parse '" + text + "'");
        if (q.get_den() == 0) throw DivisionByZeroError("Rational: zero denominator in '" + text + "'");
        q.canonicalize();
        return Rational(std::move(q));
    }

    const mpz_class& numerator() const { return value_.get_num(); }
    const mpz_class& denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    int sign() const { return sgn(value_); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }

    Rational& operator/=(const Rational& rhs)
    {
        if (rhs.is_zero()) throw DivisionByZeroError("Rational: division by zero");
        value_ /= rhs.value_;
        return *this;
    }

    friend Rational operator+(Rational lhs, const Rational& rhs) { lhs += rhs; return lhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { lhs -= rhs; return lhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { lhs *= rhs; return lhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { lhs /= rhs; return lhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
    friend bool operator!=(const Rational& lhs, const Rational& rhs) { return lhs.value_ != rhs.value_; }
    friend bool operator<(const Rational& lhs, const Rational& rhs) { return lhs.value_ < rhs.value_; }
    friend bool operator<=(const Rational& lhs, const Rational& rhs) { return lhs.value_ <= rhs.value_; }
    friend bool operator>(const Rational& lhs, const Rational& rhs) { return lhs.value_ > rhs.value_; }
    friend bool operator>=(const Rational& lhs, const Rational& rhs) { return lhs.value_ >= rhs.value_; }

    /// Decimal string "num/den"; the denominator is omitted when it is 1.
    std::string str() const
    {
        if (value_.get_den() == 1) return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

private:
    mpq_class value_;
};

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero_value(const Rational& q) { return q.is_zero(); }
inline bool is_one_value(const Rational& q) { return q.is_one(); }

} // namespace kigen
