#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kigen/circuit.hpp"
#include "kigen/errors.hpp"
#include "kigen/modular.hpp"
#include "kigen/rational.hpp"
#include "kigen/sparse_poly.hpp"

namespace kigen {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Evaluations of all C(N+D, D) monomials of degree <= D at the point, in
/// graded-lex order; the leading entry is the constant monomial 1.
inline std::vector<Rational> veronese_row(std::span<const Rational> point, int degree_bound)
{
    if (degree_bound < 0) throw ParameterError("veronese_row: negative degree bound");
    std::vector<Rational> row;
    for (const ExpVec& e : monomials_up_to_degree(static_cast<int>(point.size()), degree_bound)) {
        Rational value(1);
        for (std::size_t i = 0; i < point.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) value *= point[i];
        }
        row.push_back(std::move(value));
    }
    return row;
}

inline std::vector<Rational> veronese_row(const std::vector<Rational>& point, int degree_bound)
{
    return veronese_row(std::span<const Rational>(point), degree_bound);
}

namespace detail {

struct EchelonForm {
    RationalMatrix rows;
    std::vector<std::size_t> pivot_columns; // one per pivot row, ascending
};

/// Fraction-free (Bareiss-style) forward elimination with leftmost-nonzero
/// pivoting and rows taken in the order given. Exact over the rationals; the
/// Bareiss cross-multiplication keeps intermediate entries small.
inline EchelonForm bareiss_echelon(RationalMatrix work)
{
    const std::size_t rows = work.size();
    const std::size_t cols = rows == 0 ? 0 : work[0].size();
    for (const auto& row : work) {
        if (row.size() != cols) throw ParameterError("nullspace: ragged matrix");
    }

    EchelonForm result;
    Rational previous_pivot(1);
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t found = pivot_row;
        while (found < rows && work[found][col].is_zero()) ++found;
        if (found == rows) continue;
        std::swap(work[found], work[pivot_row]);

        const Rational pivot = work[pivot_row][col];
        for (std::size_t i = pivot_row + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                work[i][j] = (work[i][j] * pivot - work[i][col] * work[pivot_row][j]) / previous_pivot;
            }
            work[i][col] = Rational(0);
        }
        previous_pivot = pivot;
        result.pivot_columns.push_back(col);
        ++pivot_row;
    }
    result.rows = std::move(work);
    return result;
}

} // namespace detail

/// A basis of the right kernel, computed exactly. Basis vectors are indexed
/// by the free columns in ascending order and normalized so their first
/// nonzero coordinate is 1; an empty list means full column rank.
inline RationalMatrix nullspace(const RationalMatrix& matrix)
{
    detail::EchelonForm ech = detail::bareiss_echelon(matrix);
    const std::size_t cols = matrix.empty() ? 0 : matrix[0].size();
    const std::size_t rank = ech.pivot_columns.size();

    // Reduce to RREF: unit pivots, zeros above each pivot.
    for (std::size_t k = rank; k-- > 0;) {
        const std::size_t pc = ech.pivot_columns[k];
        const Rational inv_pivot = Rational(1) / ech.rows[k][pc];
        for (std::size_t j = pc; j < cols; ++j) ech.rows[k][j] *= inv_pivot;
        for (std::size_t i = 0; i < k; ++i) {
            const Rational factor = ech.rows[i][pc];
            if (factor.is_zero()) continue;
            for (std::size_t j = pc; j < cols; ++j) ech.rows[i][j] -= factor * ech.rows[k][j];
        }
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t pc : ech.pivot_columns) is_pivot[pc] = true;

    RationalMatrix basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free_col] = Rational(1);
        for (std::size_t k = 0; k < rank; ++k) {
            v[ech.pivot_columns[k]] = -ech.rows[k][free_col];
        }
        std::size_t lead = 0;
        while (v[lead].is_zero()) ++lead;
        const Rational scale = Rational(1) / v[lead];
        for (Rational& x : v) x *= scale;
        basis.push_back(std::move(v));
    }
    return basis;
}

struct EquationSearchResult {
    std::vector<SparsePoly<Rational>> basis;
    std::size_t matrix_rows = 0;
    std::size_t matrix_cols = 0;
    std::size_t rank = 0;
};

/// Finds every polynomial of degree <= D (up to linear combination) that
/// vanishes on all sample points: the kernel of the Veronese evaluation
/// matrix, reassembled into canonical polynomials over x0..x{N-1}. An empty
/// basis is a valid outcome meaning no such equation exists at this degree.
inline EquationSearchResult find_equations(std::span<const std::vector<Rational>> points, int degree_bound)
{
    if (points.empty()) throw ParameterError("find_equations: need at least one point");
    if (degree_bound < 0) throw ParameterError("find_equations: negative degree bound");
    const std::size_t nvars = points[0].size();
    for (const auto& pt : points) {
        if (pt.size() != nvars) throw ParameterError("find_equations: points of mixed arity");
    }

    const std::vector<ExpVec> monomials = monomials_up_to_degree(static_cast<int>(nvars), degree_bound);
    RationalMatrix matrix;
    matrix.reserve(points.size());
    for (const auto& pt : points) matrix.push_back(veronese_row(pt, degree_bound));

    EquationSearchResult result;
    result.matrix_rows = matrix.size();
    result.matrix_cols = monomials.size();
    RationalMatrix kernel = nullspace(matrix);
    result.rank = result.matrix_cols - kernel.size();

    const ContextPtr ctx = indexed_context("x", nvars);
    for (const auto& coeffs : kernel) {
        SparsePoly<Rational> f(ctx);
        for (std::size_t c = 0; c < coeffs.size(); ++c) {
            if (!coeffs[c].is_zero()) f.add_term(monomials[c], coeffs[c]);
        }
        result.basis.push_back(std::move(f));
    }
    return result;
}

inline EquationSearchResult find_equations(const std::vector<std::vector<Rational>>& points, int degree_bound)
{
    return find_equations(std::span<const std::vector<Rational>>(points), degree_bound);
}

struct VanishReport {
    bool is_equation = true;
    std::vector<std::vector<Rational>> witnesses; // points where the candidate does not vanish
};

/// Checks that a candidate equation vanishes exactly at every point; the
/// zero polynomial is rejected because equations are nonzero by definition.
inline VanishReport check_equation_vanishes(const SparsePoly<Rational>& candidate,
                                            std::span<const std::vector<Rational>> points)
{
    if (candidate.is_zero()) throw ParameterError("check_equation_vanishes: the zero polynomial is not an equation");
    VanishReport report;
    for (const auto& pt : points) {
        if (pt.size() != candidate.nvars()) throw ParameterError("check_equation_vanishes: point arity mismatch");
        if (!poly_eval(candidate, pt).is_zero()) {
            report.is_equation = false;
            report.witnesses.push_back(pt);
        }
    }
    return report;
}

inline VanishReport check_equation_vanishes(const SparsePoly<Rational>& candidate,
                                            const std::vector<std::vector<Rational>>& points)
{
    return check_equation_vanishes(candidate, std::span<const std::vector<Rational>>(points));
}

struct HittingReport {
    bool hits = false;
    bool exact = true; // false when only the probabilistic route was feasible
};

namespace detail {

inline HittingReport hitting_check_probabilistic(const Circuit& composed, int trials, std::uint64_t seed)
{
    // The syntactic degree can wildly overestimate, so the modulus is capped;
    // a "true" answer stays a certificate regardless, only the false-negative
    // probability depends on the modulus/degree ratio.
    const std::int64_t degree = std::min<std::int64_t>(syntactic_degree(composed), 1 << 20);
    const std::int64_t p = smallest_prime_above(std::max<std::int64_t>(1009, 4 * degree));
    return HittingReport{is_nonzero_probabilistic(composed, p, trials, seed), false};
}

} // namespace detail

/// Does the candidate stay nonzero after composition with the generator map?
/// Composes symbolically (exact) when the term cap permits, otherwise falls
/// back to one-sided random evaluation on the composed circuit, flagged as
/// non-exact in the report.
inline HittingReport hitting_check(const SparsePoly<Rational>& candidate, const PolyMap& generator,
                                   std::size_t term_cap = kDefaultTermCap, int trials = 20,
                                   std::uint64_t seed = 1)
{
    if (candidate.nvars() != generator.size()) throw ParameterError("hitting_check: arity mismatch");
    try {
        const SparsePoly<Rational> composed = poly_substitute(candidate, generator.entries, term_cap);
        return HittingReport{!composed.is_zero(), true};
    } catch (const ResourceError&) {
        const Circuit composed = compose_circuit(circuit_from_poly(candidate), generator);
        return detail::hitting_check_probabilistic(composed, trials, seed);
    }
}

/// Circuit form: the circuit must have one output, and its k-th distinct
/// input label is fed the k-th generator entry.
inline HittingReport hitting_check(const Circuit& candidate, const PolyMap& generator,
                                   std::size_t term_cap = kDefaultTermCap, int trials = 20,
                                   std::uint64_t seed = 1)
{
    if (candidate.outputs().size() != 1) throw ParameterError("hitting_check: candidate must have one output");
    if (candidate.input_labels().size() != generator.size()) throw ParameterError("hitting_check: arity mismatch");
    try {
        const auto expanded = expand_to_polys(candidate, term_cap);
        return hitting_check(expanded[0], generator, term_cap, trials, seed);
    } catch (const ResourceError&) {
        const Circuit composed = compose_circuit(candidate, generator);
        return detail::hitting_check_probabilistic(composed, trials, seed);
    }
}

} // namespace kigen
