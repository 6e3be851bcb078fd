#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "kigen/errors.hpp"
#include "kigen/modular.hpp"
#include "kigen/unipoly.hpp"

namespace kigen {

/// A combinatorial design: a family of size-m subsets of the universe
/// [0, universe_size) with all pairwise intersections strictly smaller than
/// intersection_bound. Sets are kept as sorted index lists.
struct Design {
    std::int64_t universe_size = 0;         // ell
    std::int64_t set_size = 0;              // m
    std::int64_t intersection_bound = 0;    // n
    std::vector<std::vector<std::int64_t>> sets;
};

struct DesignViolation {
    std::string kind;        // "set" or "pair"
    std::int64_t first = 0;  // set index
    std::int64_t second = 0; // second set index for "pair", unused otherwise
    std::string detail;
};

struct DesignReport {
    bool valid = true;
    std::vector<DesignViolation> violations;
};

/// Exhaustively checks both design conditions and reports every violating
/// set or pair. An invalid design is a result, not an error.
inline DesignReport verify_design(const Design& d)
{
    DesignReport report;
    auto flag = [&](DesignViolation v) {
        report.valid = false;
        report.violations.push_back(std::move(v));
    };

    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        const auto& s = d.sets[i];
        if (static_cast<std::int64_t>(s.size()) != d.set_size) {
            flag({"set", static_cast<std::int64_t>(i), 0,
                  "size " + std::to_string(s.size()) + " != " + std::to_string(d.set_size)});
        }
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] < 0 || s[k] >= d.universe_size) {
                flag({"set", static_cast<std::int64_t>(i), 0,
                      "element " + std::to_string(s[k]) + " outside universe"});
            }
            if (k > 0 && s[k] <= s[k - 1]) {
                flag({"set", static_cast<std::int64_t>(i), 0, "elements not sorted and distinct"});
                break;
            }
        }
    }

    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        for (std::size_t j = i + 1; j < d.sets.size(); ++j) {
            std::vector<std::int64_t> common;
            std::set_intersection(d.sets[i].begin(), d.sets[i].end(), d.sets[j].begin(), d.sets[j].end(),
                                  std::back_inserter(common));
            if (static_cast<std::int64_t>(common.size()) >= d.intersection_bound) {
                flag({"pair", static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
                      "intersection size " + std::to_string(common.size())});
            }
        }
    }
    return report;
}

/// The Reed-Solomon design: for every univariate g over F_p of degree < a,
/// the set {(i, g(i)) : i in F_p} over the universe F_p x F_p, flattened as
/// cell (i, j) -> i*p + j. Two distinct such polynomials agree on fewer than
/// a points, so this is a (p^2, p, a)-design with p^a sets. Sets are ordered
/// lexicographically by the coefficient vector (g_0, ..., g_{a-1}).
inline Design rs_design(std::int64_t p, int a)
{
    if (!is_prime(p)) throw ParameterError("rs_design: p must be prime");
    if (a < 1) throw ParameterError("rs_design: a must be >= 1");
    if (a > p) throw ParameterError("rs_design: a must be <= p");

    Design d;
    d.universe_size = p * p;
    d.set_size = p;
    d.intersection_bound = a;

    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(a), 0);
    while (true) {
        std::vector<std::int64_t> set;
        set.reserve(static_cast<std::size_t>(p));
        for (std::int64_t i = 0; i < p; ++i) {
            std::int64_t value = 0; // g(i) by Horner
            for (int j = a - 1; j >= 0; --j) value = (value * i + coeffs[static_cast<std::size_t>(j)]) % p;
            set.push_back(i * p + value);
        }
        d.sets.push_back(std::move(set));

        // Advance (g_0, ..., g_{a-1}) in lexicographic order: last index fastest.
        int pos = a - 1;
        while (pos >= 0 && coeffs[static_cast<std::size_t>(pos)] == p - 1) {
            coeffs[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++coeffs[static_cast<std::size_t>(pos)];
    }
    return d;
}

/// Number of bits per codeword row: floor(log2 p). Only coefficients below
/// 2^bits are expressible, which intentionally covers a subset of all
/// univariates.
inline int bits_per_coeff(std::int64_t p)
{
    if (p < 2) throw ParameterError("bits_per_coeff: p must be >= 2");
    int bits = 0;
    std::int64_t v = p;
    while (v > 1) { v >>= 1; ++bits; }
    return bits;
}

/// A bit vector t in {0,1}^r read as an a x floor(log2 p) matrix whose rows
/// are the binary coefficient encodings (least-significant bit first) of a
/// univariate over F_p.
struct Codeword {
    std::vector<std::uint8_t> bits;
    std::int64_t p = 2;
    int coeff_count = 1; // a

    Codeword(std::vector<std::uint8_t> t, std::int64_t prime, int a)
        : bits(std::move(t)), p(prime), coeff_count(a)
    {
        if (!is_prime(p)) throw ParameterError("Codeword: p must be prime");
        if (coeff_count < 1) throw ParameterError("Codeword: coefficient count must be >= 1");
        const std::size_t expected = static_cast<std::size_t>(coeff_count) * static_cast<std::size_t>(bits_per_coeff(p));
        if (bits.size() != expected) {
            throw ParameterError("Codeword: expected " + std::to_string(expected) + " bits, got " +
                                 std::to_string(bits.size()));
        }
        for (std::uint8_t b : bits) {
            if (b > 1) throw ParameterError("Codeword: entries must be 0 or 1");
        }
    }
};

/// Row j decodes to g_j = sum_k t_{j,k} * 2^k, reduced mod p; the codeword as
/// a whole represents g(v) = sum_j g_j v^j.
inline UniPolyFp decode_codeword(const Codeword& c)
{
    const int width = bits_per_coeff(c.p);
    std::vector<Fp> coeffs;
    coeffs.reserve(static_cast<std::size_t>(c.coeff_count));
    for (int j = 0; j < c.coeff_count; ++j) {
        std::int64_t value = 0;
        for (int k = 0; k < width; ++k) {
            value += static_cast<std::int64_t>(c.bits[static_cast<std::size_t>(j * width + k)]) << k;
        }
        coeffs.emplace_back(value, c.p);
    }
    return UniPolyFp(std::move(coeffs));
}

/// The flattened design set {i*p + g(i) : i in F_p} of the decoded
/// univariate; always exactly p cells, one per column i, already sorted
/// because i is the high-order digit of the flattening.
inline std::vector<std::int64_t> codeword_to_set(const Codeword& c)
{
    const UniPolyFp g = decode_codeword(c);
    std::vector<std::int64_t> set;
    set.reserve(static_cast<std::size_t>(c.p));
    for (std::int64_t i = 0; i < c.p; ++i) {
        set.push_back(i * c.p + g.eval(Fp(i, c.p)).value());
    }
    return set;
}

} // namespace kigen
