#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kigen/design.hpp"
#include "kigen/errors.hpp"
#include "kigen/gadgets.hpp"
#include "kigen/permanent.hpp"
#include "kigen/sparse_poly.hpp"

namespace kigen {

template <class F>
concept GeneratorFunctor = requires(const F& f) {
    { f.arity() } -> std::convertible_to<std::int64_t>;
};

/// The hardness-based generator map at a concrete point: applies f to the
/// point's coordinates restricted to each design set, elements taken in
/// sorted order. One output per set.
template <class R, GeneratorFunctor F>
std::vector<R> apply_generator(const Design& design, const F& f, std::span<const R> point)
{
    if (static_cast<std::int64_t>(point.size()) != design.universe_size) {
        throw ParameterError("apply_generator: point arity must equal the design universe");
    }
    if (f.arity() != design.set_size) {
        throw ParameterError("apply_generator: design set size must equal the evaluator arity");
    }
    std::vector<R> out;
    out.reserve(design.sets.size());
    for (const auto& set : design.sets) {
        std::vector<R> restricted;
        restricted.reserve(set.size());
        for (std::int64_t idx : set) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= point.size()) {
                throw ParameterError("apply_generator: set element outside the universe");
            }
            restricted.push_back(point[static_cast<std::size_t>(idx)]);
        }
        out.push_back(f(std::span<const R>(restricted)));
    }
    return out;
}

/// The same map in symbolic form: f applied to the variables z0..z{ell-1}
/// restricted to each set, yielding one polynomial per set.
template <GeneratorFunctor F>
PolyMap symbolic_generator(const Design& design, const F& f)
{
    using Poly = SparsePoly<Rational>;
    const ContextPtr ctx = indexed_context("z", static_cast<std::size_t>(design.universe_size));
    std::vector<Poly> vars;
    vars.reserve(ctx->size());
    for (std::size_t i = 0; i < ctx->size(); ++i) vars.push_back(Poly::variable(ctx, i));
    return PolyMap(apply_generator(design, f, std::span<const Poly>(vars)));
}

/// The exponential-sum polynomial of the construction, stored in
/// coefficient-indexed form: a map from y-exponent vectors to their z-
/// polynomial coefficients. On boolean t the monomial gadget contributes a
/// single y-monomial, so the whole sum is assembled without any general
/// (y,z)-polynomial multiplication.
struct GeneratorPolynomial {
    int n = 1;            // y-variable count
    int a = 1;            // codeword rows
    std::int64_t p = 2;
    int r = 1;            // a * floor(log2 p)
    ContextPtr z_context; // z0..z{p*p-1}
    std::map<ExpVec, SparsePoly<Rational>, GrlexLess> terms;
};

/// Bound on the exponential-sum width 2^r accepted by the builder.
inline constexpr int kMaxCodewordBits = 20;

/// Builds the generator polynomial for (n, a, p): iterates every boolean
/// codeword t, decodes its y-monomial and its design set, and accumulates the
/// prefix permanent of the selected z-variables onto that monomial.
inline GeneratorPolynomial build_generator_polynomial(int n, int a, std::int64_t p)
{
    if (n < 1) throw ParameterError("build_generator_polynomial: n must be >= 1");
    if (!is_prime(p)) throw ParameterError("build_generator_polynomial: p must be prime");
    if (a < 1 || static_cast<std::int64_t>(a) > p) {
        throw ParameterError("build_generator_polynomial: need 1 <= a <= p");
    }
    const int r = a * bits_per_coeff(p);
    if (r < n) throw ParameterError("build_generator_polynomial: codeword shorter than y-block count");
    if (r > kMaxCodewordBits) {
        throw ResourceError("build_generator_polynomial: 2^" + std::to_string(r) + " summands exceeds the cap");
    }

    using Poly = SparsePoly<Rational>;
    GeneratorPolynomial g;
    g.n = n;
    g.a = a;
    g.p = p;
    g.r = r;
    g.z_context = indexed_context("z", static_cast<std::size_t>(p * p));

    std::vector<Poly> z_vars;
    z_vars.reserve(g.z_context->size());
    for (std::size_t i = 0; i < g.z_context->size(); ++i) z_vars.push_back(Poly::variable(g.z_context, i));

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(r));
        for (int k = 0; k < r; ++k) bits[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((mask >> k) & 1);

        ExpVec key = monomial_exponents(bits, n);
        const Codeword codeword(std::move(bits), p, a);

        std::vector<Poly> selected;
        selected.reserve(static_cast<std::size_t>(p));
        for (std::int64_t flat : design_selected_vars(codeword)) {
            selected.push_back(z_vars[static_cast<std::size_t>(flat)]);
        }
        Poly value = prefix_permanent(p, std::span<const Poly>(selected));

        auto it = g.terms.find(key);
        if (it == g.terms.end()) {
            g.terms.emplace(std::move(key), std::move(value));
        } else {
            it->second += value;
            if (it->second.is_zero()) g.terms.erase(it);
        }
    }
    return g;
}

/// Discards every y-monomial of total degree above d.
inline GeneratorPolynomial truncate_generator(const GeneratorPolynomial& g, int d)
{
    if (d < 0) throw ParameterError("truncate_generator: negative degree bound");
    GeneratorPolynomial out = g;
    out.terms.clear();
    for (const auto& [e, value] : g.terms) {
        if (total_degree(e) <= d) out.terms.emplace(e, value);
    }
    return out;
}

/// The length-C(n+d, n) coefficient vector of a polynomial in n variables of
/// degree at most d, indexed by the graded-lex order on exponent vectors.
template <class T>
struct CoeffVector {
    int nvars = 0;
    int degree_bound = 0;
    std::vector<T> entries;
};

/// The coefficient vector of a (truncated) generator polynomial: one z-
/// polynomial per y-monomial of degree <= d, zero where the monomial is
/// absent. Every stored term must already satisfy the degree bound.
inline CoeffVector<SparsePoly<Rational>> coefficient_vector(const GeneratorPolynomial& g, int d)
{
    using Poly = SparsePoly<Rational>;
    if (d < 0) throw ParameterError("coefficient_vector: negative degree bound");
    for (const auto& [e, value] : g.terms) {
        if (total_degree(e) > d) {
            throw ParameterError("coefficient_vector: term of degree " + std::to_string(total_degree(e)) +
                                 " exceeds bound " + std::to_string(d) + "; truncate first");
        }
    }
    CoeffVector<Poly> cv;
    cv.nvars = g.n;
    cv.degree_bound = d;
    for (const ExpVec& e : monomials_up_to_degree(g.n, d)) {
        auto it = g.terms.find(e);
        cv.entries.push_back(it == g.terms.end() ? Poly::zero(g.z_context) : it->second);
    }
    return cv;
}

/// View of a coefficient vector of z-polynomials as a polynomial map.
inline PolyMap as_poly_map(const CoeffVector<SparsePoly<Rational>>& cv)
{
    return PolyMap(cv.entries);
}

/// The design induced by the codeword encoding of y-exponent vectors: for
/// each exponent vector e of degree <= d (in graded-lex order), the design
/// set of the codeword Bin(e_1) || ... || Bin(e_n). Requires every entry of e
/// to fit in floor(log2 p) bits, i.e. d <= 2^floor(log2 p) - 1.
inline Design codeword_design(int n, int d, std::int64_t p)
{
    if (n < 1) throw ParameterError("codeword_design: n must be >= 1");
    if (!is_prime(p)) throw ParameterError("codeword_design: p must be prime");
    const int width = bits_per_coeff(p);

    Design design;
    design.universe_size = p * p;
    design.set_size = p;
    design.intersection_bound = n;
    for (const ExpVec& e : monomials_up_to_degree(n, d)) {
        std::vector<std::uint8_t> bits;
        bits.reserve(static_cast<std::size_t>(n * width));
        for (int i = 0; i < n; ++i) {
            const auto block = binary_encode(e[static_cast<std::size_t>(i)], width);
            bits.insert(bits.end(), block.begin(), block.end());
        }
        design.sets.push_back(codeword_to_set(Codeword(std::move(bits), p, n)));
    }
    return design;
}

struct SuccinctnessMismatch {
    ExpVec y_exponent;
    SparsePoly<Rational> coefficient_entry; // from the coefficient vector
    SparsePoly<Rational> generator_entry;   // from the generator map
};

struct SuccinctnessReport {
    bool holds = true;
    std::vector<SuccinctnessMismatch> mismatches;
};

/// Entry-wise canonical-equality comparison of a coefficient vector with a
/// generator map, under a shared exponent-vector order.
inline SuccinctnessReport compare_coefficient_vector(const CoeffVector<SparsePoly<Rational>>& cv,
                                                     const PolyMap& generator,
                                                     std::span<const ExpVec> order)
{
    if (cv.entries.size() != generator.size() || cv.entries.size() != order.size()) {
        throw ParameterError("compare_coefficient_vector: length mismatch");
    }
    SuccinctnessReport report;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (cv.entries[i] == generator.entries[i]) continue;
        report.holds = false;
        report.mismatches.push_back({order[i], cv.entries[i], generator.entries[i]});
    }
    return report;
}

/// The central verification: the coefficient vector of the degree-d
/// truncation of the (n, n, p) generator polynomial must coincide, entry by
/// entry and as canonical polynomials, with the generator map built
/// independently from the codeword design and the prefix permanent.
inline SuccinctnessReport check_succinctness(int n, int d, std::int64_t p)
{
    if (n < 1) throw ParameterError("check_succinctness: n must be >= 1");
    if (d < 0) throw ParameterError("check_succinctness: d must be >= 0");
    if (!is_prime(p)) throw ParameterError("check_succinctness: p must be prime");
    if (static_cast<std::int64_t>(n) > p) throw ParameterError("check_succinctness: need n <= p");
    const int width = bits_per_coeff(p);
    if (d > (1 << width) - 1) {
        throw ParameterError("check_succinctness: d must be <= 2^floor(log2 p) - 1 = " +
                             std::to_string((1 << width) - 1));
    }
    if (n * width > kMaxCodewordBits) {
        throw ParameterError("check_succinctness: n * floor(log2 p) must be <= " +
                             std::to_string(kMaxCodewordBits));
    }

    const GeneratorPolynomial full = build_generator_polynomial(n, n, p);
    const GeneratorPolynomial truncated = truncate_generator(full, d);
    const CoeffVector<SparsePoly<Rational>> cv = coefficient_vector(truncated, d);

    const Design design = codeword_design(n, d, p);
    const PolyMap generator = symbolic_generator(design, PrefixPermanent{p});

    const std::vector<ExpVec> order = monomials_up_to_degree(n, d);
    return compare_coefficient_vector(cv, generator, order);
}

} // namespace kigen
