#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kigen/design.hpp"
#include "kigen/errors.hpp"
#include "kigen/modular.hpp"
#include "kigen/sparse_poly.hpp"
#include "kigen/unipoly.hpp"

namespace kigen {

/// Context t0..t{r-1}, y0..y{n-1} used by the monomial gadget.
inline ContextPtr monomial_gadget_context(int r, int n)
{
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(r + n));
    for (int i = 0; i < r; ++i) labels.push_back("t" + std::to_string(i));
    for (int i = 0; i < n; ++i) labels.push_back("y" + std::to_string(i));
    return make_context(std::move(labels));
}

/// Binary encoding of e, least-significant bit first, padded to `width` bits.
inline std::vector<std::uint8_t> binary_encode(std::int64_t e, int width)
{
    if (e < 0) throw ParameterError("binary_encode: negative value");
    if (width < 0) throw ParameterError("binary_encode: negative width");
    if (width < 63 && e >= (std::int64_t{1} << width)) {
        throw ParameterError("binary_encode: value " + std::to_string(e) + " needs more than " +
                             std::to_string(width) + " bits");
    }
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(width));
    for (int k = 0; k < width; ++k) bits[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((e >> k) & 1);
    return bits;
}

/// Block decode of a bit vector into y-exponents: with block width
/// a = floor(r/n), exponent e_i = sum_j t[i*a + j] * 2^j. On boolean inputs
/// this is exactly the monomial the gadget below produces. Trailing bits
/// beyond n*a are ignored.
inline ExpVec monomial_exponents(std::span<const std::uint8_t> bits, int n)
{
    if (n < 1) throw ParameterError("monomial_exponents: n must be >= 1");
    const int r = static_cast<int>(bits.size());
    if (r < n) throw ParameterError("monomial_exponents: need at least n bits");
    const int block = r / n;
    ExpVec e(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        std::int64_t value = 0;
        for (int j = 0; j < block; ++j) {
            value += static_cast<std::int64_t>(bits[static_cast<std::size_t>(i * block + j)]) << j;
        }
        e[static_cast<std::size_t>(i)] = static_cast<int>(value);
    }
    return e;
}

/// The monomial-encoding gadget over (t0..t{r-1}, y0..y{n-1}): the product
/// over blocks i and bit positions j of
///     t_{i,j} * y_i^(2^j) + (1 - t_{i,j}),
/// expanded to canonical form. On a boolean t it collapses to the single
/// monomial y^e with e = monomial_exponents(t, n). The expansion has one term
/// per choice of factor monomial, so it is only feasible for small r; the cap
/// fails fast instead of exhausting memory.
inline SparsePoly<Rational> build_monomial_gadget(int r, int n, std::size_t term_cap = kDefaultTermCap)
{
    if (n < 1) throw ParameterError("build_monomial_gadget: n must be >= 1");
    if (r < n) throw ParameterError("build_monomial_gadget: r must be >= n");
    const ContextPtr ctx = monomial_gadget_context(r, n);
    const int block = r / n;

    using Poly = SparsePoly<Rational>;
    Poly out = Poly::constant(ctx, Rational(1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < block; ++j) {
            const std::size_t t_index = static_cast<std::size_t>(i * block + j);
            const std::size_t y_index = static_cast<std::size_t>(r + i);
            Poly factor(ctx);
            ExpVec ty(ctx->size(), 0);
            ty[t_index] = 1;
            ty[y_index] = 1 << j;
            factor.add_term(std::move(ty), Rational(1));          // t * y^(2^j)
            factor.add_term(ExpVec(ctx->size(), 0), Rational(1)); // 1
            ExpVec t_only(ctx->size(), 0);
            t_only[t_index] = 1;
            factor.add_term(std::move(t_only), Rational(-1));     // -t
            out = Poly::multiply(out, factor, term_cap);
        }
    }
    return out;
}

/// Direct evaluator for the monomial gadget on a boolean t: y^e without any
/// symbolic expansion.
template <class R>
R monomial_gadget_eval(std::span<const std::uint8_t> bits, std::span<const R> y, int n)
{
    if (static_cast<int>(y.size()) != n) throw ParameterError("monomial_gadget_eval: y arity mismatch");
    if (y.empty()) throw ParameterError("monomial_gadget_eval: n must be >= 1");
    const ExpVec e = monomial_exponents(bits, n);
    R acc = one_like(y[0]);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) acc *= y[static_cast<std::size_t>(i)];
    }
    return acc;
}

/// The residue-indicator polynomial: the unique rational univariate of degree
/// at most b-1 that is 1 at every a in [0, b) congruent to i mod p and 0 at
/// every other a in [0, b).
inline RationalUniPoly build_residue_indicator(int i, int b, std::int64_t p)
{
    if (!is_prime(p)) throw ParameterError("build_residue_indicator: p must be prime");
    if (i < 0 || static_cast<std::int64_t>(i) >= p) {
        throw ParameterError("build_residue_indicator: need 0 <= i < p");
    }
    if (p > b) throw ParameterError("build_residue_indicator: need p <= b");
    std::vector<std::pair<Rational, Rational>> points;
    points.reserve(static_cast<std::size_t>(b));
    for (int a = 0; a < b; ++a) {
        points.emplace_back(Rational(a), Rational(a % p == i ? 1 : 0));
    }
    return lagrange_interpolate(points);
}

/// Context u0..u{n-1}, v used by the selector gadget.
inline ContextPtr selector_context(int n)
{
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) labels.push_back("u" + std::to_string(i));
    labels.emplace_back("v");
    return make_context(std::move(labels));
}

/// The selector gadget over (u0..u{n-1}, v): the sum over residues i in
/// [0, p) of u_i * Q_i(v) with Q_i the residue indicator for (i, b, p).
/// Substituting any integer a in [0, b) for v collapses it to the single
/// selector variable u_{a mod p}.
inline SparsePoly<Rational> build_selector(int n, int b, std::int64_t p)
{
    if (static_cast<std::int64_t>(n) < p) throw ParameterError("build_selector: need n >= p");
    const ContextPtr ctx = selector_context(n);
    SparsePoly<Rational> out(ctx);
    const std::size_t v_index = static_cast<std::size_t>(n);
    for (int i = 0; static_cast<std::int64_t>(i) < p; ++i) {
        const RationalUniPoly q = build_residue_indicator(i, b, p);
        for (std::size_t k = 0; k < q.coefficients().size(); ++k) {
            if (q.coefficients()[k].is_zero()) continue;
            ExpVec e(ctx->size(), 0);
            e[static_cast<std::size_t>(i)] = 1;
            e[v_index] = static_cast<int>(k);
            out.add_term(std::move(e), q.coefficients()[k]);
        }
    }
    return out;
}

/// The integer combination sum_j (row_j value) * (i^j mod p) over the
/// codeword's rows, with the convention 0^0 = 1 so that row 0 contributes the
/// constant coefficient at i = 0. The result is congruent to g(i) mod p for
/// the decoded univariate g, and lies in [0, p^3].
inline std::int64_t unreduced_codeword_eval(const Codeword& c, std::int64_t i)
{
    if (i < 0 || i >= c.p) throw ParameterError("unreduced_codeword_eval: need 0 <= i < p");
    const int width = bits_per_coeff(c.p);
    std::int64_t total = 0;
    for (int j = 0; j < c.coeff_count; ++j) {
        std::int64_t row = 0;
        for (int k = 0; k < width; ++k) {
            row += static_cast<std::int64_t>(c.bits[static_cast<std::size_t>(j * width + k)]) << k;
        }
        total += row * mod_pow(i, j, c.p);
    }
    return total;
}

/// Direct evaluator for the design-selector map: the flattened z-indices
/// (i*p + g(i) : i in F_p), computed through the integer combination above
/// rather than through the codeword decoder, so the two routes can be
/// cross-checked against each other.
inline std::vector<std::int64_t> design_selected_vars(const Codeword& c)
{
    std::vector<std::int64_t> flat;
    flat.reserve(static_cast<std::size_t>(c.p));
    for (std::int64_t i = 0; i < c.p; ++i) {
        flat.push_back(i * c.p + mod_reduce(unreduced_codeword_eval(c, i), c.p));
    }
    return flat;
}

/// Context t0..t{r-1}, z0..z{p*p-1} used by the symbolic design-selector map.
inline ContextPtr design_selector_context(std::int64_t p, int a)
{
    const int r = a * bits_per_coeff(p);
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(r) + static_cast<std::size_t>(p * p));
    for (int i = 0; i < r; ++i) labels.push_back("t" + std::to_string(i));
    for (std::int64_t i = 0; i < p * p; ++i) labels.push_back("z" + std::to_string(i));
    return make_context(std::move(labels));
}

/// The symbolic design-selector map: entry i is the selector gadget
/// Sel_{p, p^3, p} applied to the row variables z_{i,0}..z_{i,p-1} with its
/// index input fed the integer-combination polynomial of the t-variables.
/// On boolean t, entry i collapses to the single variable z at i*p + g(i).
/// The expansion has degree about p^3 in t and is only feasible for tiny p;
/// design_selected_vars is the scalable route.
namespace detail {

/// Saturating count of monomials of degree <= d in v variables, used to
/// predict symbolic expansion sizes before doing any work.
inline std::uint64_t monomial_count_bound(std::int64_t d, int v, std::uint64_t saturate)
{
    std::uint64_t count = 1; // C(d + v, v)
    for (int i = 1; i <= v; ++i) {
        if (count > saturate / static_cast<std::uint64_t>(d + i)) return saturate;
        count = count * static_cast<std::uint64_t>(d + i) / static_cast<std::uint64_t>(i);
    }
    return count;
}

} // namespace detail

inline PolyMap build_design_selector_map(std::int64_t p, int a, std::size_t term_cap = kDefaultTermCap)
{
    if (!is_prime(p)) throw ParameterError("build_design_selector_map: p must be prime");
    if (a < 1 || static_cast<std::int64_t>(a) > p) throw ParameterError("build_design_selector_map: need 1 <= a <= p");
    using Poly = SparsePoly<Rational>;
    const int width = bits_per_coeff(p);
    const int r = a * width;
    const ContextPtr ctx = design_selector_context(p, a);
    const std::int64_t b = p * p * p;

    // Each entry is p selector summands of degree up to b-1 in r linear
    // t-polynomials; refuse upfront when the expansion cannot fit the cap,
    // rather than grinding toward it.
    if (term_cap != 0) {
        const std::uint64_t per_summand = detail::monomial_count_bound(b - 1, r, term_cap);
        if (per_summand >= term_cap / static_cast<std::uint64_t>(p)) {
            throw ResourceError("build_design_selector_map: symbolic expansion of about " +
                                std::to_string(per_summand) + " x " + std::to_string(p) +
                                " terms exceeds the cap; use design_selected_vars instead");
        }
    }

    std::vector<Poly> entries;
    entries.reserve(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) {
        // The linear t-polynomial congruent to g(i) mod p on boolean inputs.
        Poly index_poly(ctx);
        for (int j = 0; j < a; ++j) {
            const std::int64_t power = mod_pow(i, j, p);
            for (int k = 0; k < width; ++k) {
                ExpVec e(ctx->size(), 0);
                e[static_cast<std::size_t>(j * width + k)] = 1;
                index_poly.add_term(std::move(e), Rational((std::int64_t{1} << k) * power));
            }
        }

        Poly entry(ctx);
        for (std::int64_t s = 0; s < p; ++s) {
            const RationalUniPoly q = build_residue_indicator(static_cast<int>(s), static_cast<int>(b), p);
            // Horner in the index polynomial.
            Poly q_at_index = Poly::zero(ctx);
            for (auto it = q.coefficients().rbegin(); it != q.coefficients().rend(); ++it) {
                q_at_index = Poly::multiply(q_at_index, index_poly, term_cap);
                q_at_index += Poly::constant(ctx, *it);
            }
            const std::size_t z_index = static_cast<std::size_t>(r + i * p + s);
            entry += Poly::multiply(Poly::variable(ctx, z_index), q_at_index, term_cap);
            if (term_cap != 0 && entry.term_count() > term_cap) {
                throw ResourceError("build_design_selector_map: term cap exceeded");
            }
        }
        entries.push_back(std::move(entry));
    }
    return PolyMap(std::move(entries));
}

} // namespace kigen
