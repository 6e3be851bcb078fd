#pragma once

#include <span>
#include <utility>
#include <vector>

#include "kigen/errors.hpp"
#include "kigen/modular.hpp"
#include "kigen/rational.hpp"
#include "kigen/sparse_poly.hpp"

namespace kigen {

/// Dense univariate polynomial over an exact coefficient type K (Rational or
/// Fp); index j holds the coefficient of v^j. Trailing zeros are trimmed, so
/// equality is equality of coefficient lists and the zero polynomial is the
/// empty list.
template <class K>
class UniPoly {
public:
    UniPoly() = default;

    explicit UniPoly(std::vector<K> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

    static UniPoly zero() { return UniPoly(); }

    const std::vector<K>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// kZeroPolyDegree for the zero polynomial.
    int degree() const
    {
        return coeffs_.empty() ? kZeroPolyDegree : static_cast<int>(coeffs_.size()) - 1;
    }

    /// Horner evaluation. For Fp the coefficient and point moduli must match.
    K eval(const K& x) const
    {
        K acc = zero_like(x);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b)
    {
        std::vector<K> out = a.coeffs_.size() >= b.coeffs_.size() ? a.coeffs_ : b.coeffs_;
        const std::vector<K>& small = a.coeffs_.size() >= b.coeffs_.size() ? b.coeffs_ : a.coeffs_;
        for (std::size_t i = 0; i < small.size(); ++i) out[i] += small[i];
        return UniPoly(std::move(out));
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<K> out(a.coeffs_.size() + b.coeffs_.size() - 1, zero_like(a.coeffs_[0]));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return UniPoly(std::move(out));
    }

    UniPoly scaled(const K& factor) const
    {
        if (is_zero_value(factor)) return UniPoly();
        std::vector<K> out = coeffs_;
        for (K& c : out) c = c * factor;
        return UniPoly(std::move(out));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

private:
    void trim()
    {
        while (!coeffs_.empty() && is_zero_value(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<K> coeffs_;
};

using RationalUniPoly = UniPoly<Rational>;
using UniPolyFp = UniPoly<Fp>;

/// The unique polynomial of degree <= points-1 through the given points,
/// with exact rational coefficients. Abscissas must be distinct.
inline RationalUniPoly lagrange_interpolate(std::span<const std::pair<Rational, Rational>> points)
{
    if (points.empty()) throw ParameterError("lagrange_interpolate: need at least one point");
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].first == points[j].first) {
                throw ParameterError("lagrange_interpolate: duplicate abscissa " + points[i].first.str());
            }
        }
    }
    RationalUniPoly result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second.is_zero()) continue;
        RationalUniPoly basis(std::vector<Rational>{Rational(1)});
        Rational denom(1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            basis = basis * RationalUniPoly(std::vector<Rational>{-points[j].first, Rational(1)});
            denom *= points[i].first - points[j].first;
        }
        result = result + basis.scaled(points[i].second / denom);
    }
    return result;
}

inline RationalUniPoly lagrange_interpolate(const std::vector<std::pair<Rational, Rational>>& points)
{
    return lagrange_interpolate(std::span<const std::pair<Rational, Rational>>(points));
}

} // namespace kigen
