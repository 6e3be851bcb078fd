#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "kigen/errors.hpp"
#include "kigen/rational.hpp"

namespace kigen {

/// Deterministic trial division up to sqrt(x). Every modulus in this library
/// is tiny, so nothing probabilistic is needed in the arithmetic core.
inline bool is_prime(std::int64_t x)
{
    if (x < 2) return false;
    if (x < 4) return true;
    if (x % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= x; d += 2) {
        if (x % d == 0) return false;
    }
    return true;
}

/// Least prime strictly greater than x. Bertrand's postulate guarantees the
/// result is at most 2x for x >= 1.
inline std::int64_t smallest_prime_above(std::int64_t x)
{
    if (x < 1) throw ParameterError("smallest_prime_above: x must be >= 1");
    std::int64_t candidate = x + 1;
    while (!is_prime(candidate)) ++candidate;
    return candidate;
}

/// The unique r in [0, p-1] with r congruent to a mod p. Negative inputs
/// normalize to the nonnegative residue.
inline std::int64_t mod_reduce(std::int64_t a, std::int64_t p)
{
    if (p < 2 || !is_prime(p)) throw ParameterError("mod_reduce: modulus must be prime");
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

inline std::int64_t mod_reduce(const mpz_class& a, std::int64_t p)
{
    if (p < 2 || !is_prime(p)) throw ParameterError("mod_reduce: modulus must be prime");
    mpz_class r = a % p;
    if (r < 0) r += p;
    return static_cast<std::int64_t>(r.get_si());
}

/// base^exp mod p with the convention 0^0 = 1.
inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p)
{
    if (exp < 0) throw ParameterError("mod_pow: negative exponent");
    std::int64_t result = 1 % p;
    std::int64_t b = mod_reduce(base, p);
    while (exp > 0) {
        if (exp & 1) result = (result * b) % p;
        b = (b * b) % p;
        exp >>= 1;
    }
    return result;
}

/// An element of the prime field F_p with a runtime modulus. Operands must
/// share the same modulus; mixing moduli is a parameter error rather than an
/// implicit coercion.
class Fp {
public:
    Fp(std::int64_t value, std::int64_t modulus) : value_(mod_reduce(value, modulus)), modulus_(modulus) {}

    std::int64_t value() const { return value_; }
    std::int64_t modulus() const { return modulus_; }
    bool is_zero() const { return value_ == 0; }

    Fp operator-() const { return Fp(modulus_ - value_, modulus_); }

    friend Fp operator+(const Fp& a, const Fp& b)
    {
        check_same_modulus(a, b);
        return Fp(a.value_ + b.value_, a.modulus_);
    }

    friend Fp operator-(const Fp& a, const Fp& b)
    {
        check_same_modulus(a, b);
        return Fp(a.value_ - b.value_, a.modulus_);
    }

    friend Fp operator*(const Fp& a, const Fp& b)
    {
        check_same_modulus(a, b);
        return Fp(a.value_ * b.value_, a.modulus_);
    }

    Fp& operator+=(const Fp& rhs) { return *this = *this + rhs; }
    Fp& operator-=(const Fp& rhs) { return *this = *this - rhs; }
    Fp& operator*=(const Fp& rhs) { return *this = *this * rhs; }

    /// Multiplicative inverse; Fermat since the modulus is prime.
    Fp inverse() const
    {
        if (value_ == 0) throw DivisionByZeroError("Fp: inverse of zero");
        return Fp(mod_pow(value_, modulus_ - 2, modulus_), modulus_);
    }

    friend bool operator==(const Fp& a, const Fp& b) { return a.value_ == b.value_ && a.modulus_ == b.modulus_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& x)
    {
        return os << x.value_ << " (mod " << x.modulus_ << ")";
    }

private:
    static void check_same_modulus(const Fp& a, const Fp& b)
    {
        if (a.modulus_ != b.modulus_) throw ParameterError("Fp: modulus mismatch");
    }

    std::int64_t value_;
    std::int64_t modulus_;
};

inline Fp zero_like(const Fp& x) { return Fp(0, x.modulus()); }
inline Fp one_like(const Fp& x) { return Fp(1, x.modulus()); }
inline bool is_zero_value(const Fp& x) { return x.is_zero(); }
inline bool is_one_value(const Fp& x) { return x.value() == 1; }

/// Image of an exact rational in F_p: num * den^{-1} mod p. Defined only
/// when p does not divide the denominator.
inline Fp rational_to_fp(const Rational& q, std::int64_t p)
{
    const std::int64_t den = mod_reduce(q.denominator(), p);
    if (den == 0) throw ParameterError("rational_to_fp: denominator divisible by modulus");
    const Fp num(mod_reduce(q.numerator(), p), p);
    return num * Fp(den, p).inverse();
}

} // namespace kigen
