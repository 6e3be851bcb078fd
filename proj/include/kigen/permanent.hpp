#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "kigen/errors.hpp"

namespace kigen {

/// The permanent via Ryser's inclusion-exclusion formula with Gray-code
/// column updates: O(2^m * m) ring operations, exact over any commutative
/// ring. Works with symbolic entries as well as numbers.
template <class R>
R permanent_ryser(const std::vector<std::vector<R>>& matrix)
{
    const std::size_t m = matrix.size();
    if (m == 0) throw ParameterError("permanent_ryser: empty matrix");
    for (const auto& row : matrix) {
        if (row.size() != m) throw ParameterError("permanent_ryser: matrix not square");
    }
    if (m >= 63) throw ResourceError("permanent_ryser: matrix too large");

    const R zero = zero_like(matrix[0][0]);
    std::vector<R> row_sums(m, zero);
    R total = zero;

    for (std::uint64_t k = 1; k < (std::uint64_t{1} << m); ++k) {
        const std::uint64_t gray = k ^ (k >> 1); // the current column subset
        const int j = std::countr_zero(k);       // the column toggled at this step
        if (gray & (std::uint64_t{1} << j)) {
            for (std::size_t i = 0; i < m; ++i) row_sums[i] += matrix[i][static_cast<std::size_t>(j)];
        } else {
            for (std::size_t i = 0; i < m; ++i) row_sums[i] -= matrix[i][static_cast<std::size_t>(j)];
        }

        R product = row_sums[0];
        for (std::size_t i = 1; i < m; ++i) product *= row_sums[i];

        // Sign (-1)^(m - |subset|).
        if ((m - static_cast<std::size_t>(std::popcount(gray))) % 2 == 0) {
            total += product;
        } else {
            total -= product;
        }
    }
    return total;
}

/// Independent permanent oracle: the plain sum over all m! permutations.
/// Deliberately distinct from the Ryser route so the two can certify each
/// other; capped at m <= 6.
template <class R>
R permanent_brute_force(const std::vector<std::vector<R>>& matrix)
{
    const std::size_t m = matrix.size();
    if (m == 0) throw ParameterError("permanent_brute_force: empty matrix");
    for (const auto& row : matrix) {
        if (row.size() != m) throw ParameterError("permanent_brute_force: matrix not square");
    }
    if (m > 6) throw ResourceError("permanent_brute_force: m must be <= 6");

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    R total = zero_like(matrix[0][0]);
    do {
        R product = matrix[0][perm[0]];
        for (std::size_t i = 1; i < m; ++i) product *= matrix[i][perm[i]];
        total += product;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Largest m with m*m <= p.
inline std::int64_t isqrt_floor(std::int64_t p)
{
    if (p < 1) throw ParameterError("isqrt_floor: need p >= 1");
    std::int64_t m = 0;
    while ((m + 1) * (m + 1) <= p) ++m;
    return m;
}

/// The permanent applied to a length-p value vector: with m the largest
/// integer whose square fits in p, the first m^2 values are packed row-major
/// into an m x m matrix and the remaining entries are ignored.
template <class R>
R prefix_permanent(std::int64_t p, std::span<const R> values)
{
    if (static_cast<std::int64_t>(values.size()) != p) {
        throw ParameterError("prefix_permanent: expected exactly " + std::to_string(p) + " values");
    }
    const std::int64_t m = isqrt_floor(p);
    std::vector<std::vector<R>> matrix;
    matrix.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        std::vector<R> row;
        row.reserve(static_cast<std::size_t>(m));
        for (std::int64_t j = 0; j < m; ++j) row.push_back(values[static_cast<std::size_t>(i * m + j)]);
        matrix.push_back(std::move(row));
    }
    return permanent_ryser(matrix);
}

template <class R>
R prefix_permanent(std::int64_t p, const std::vector<R>& values)
{
    return prefix_permanent(p, std::span<const R>(values));
}

/// Function object form of the prefix permanent, usable as the hard
/// polynomial fed to a generator.
struct PrefixPermanent {
    std::int64_t width;

    std::int64_t arity() const { return width; }

    template <class R>
    R operator()(std::span<const R> values) const
    {
        return prefix_permanent(width, values);
    }
};

} // namespace kigen
