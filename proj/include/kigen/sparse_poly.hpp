#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kigen/errors.hpp"
#include "kigen/rational.hpp"

namespace kigen {

/// Exponent vector; one nonnegative entry per variable of the ambient context.
using ExpVec = std::vector<int>;

inline int total_degree(const ExpVec& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Degree of the zero polynomial: a sentinel strictly below every honest
/// degree, so truncation and degree comparisons need no special cases.
inline constexpr int kZeroPolyDegree = std::numeric_limits<int>::min();

/// Default cap on the number of stored terms in a symbolic expansion.
inline constexpr std::size_t kDefaultTermCap = 1'000'000;

/// Graded-lexicographic term order used everywhere in this library: lower
/// total degree first; within a degree block, the lexicographically larger
/// exponent vector first. For two variables this enumerates
/// 1, x0, x1, x0^2, x0*x1, x1^2, ...
struct GrlexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const
    {
        const int da = total_degree(a);
        const int db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

/// Every exponent vector of length `nvars` with total degree <= `degree_bound`,
/// listed in the graded-lex order above. The index of an exponent vector in
/// this list is its coefficient-vector index.
inline std::vector<ExpVec> monomials_up_to_degree(int nvars, int degree_bound)
{
    if (nvars < 0 || degree_bound < 0) throw ParameterError("monomials_up_to_degree: negative argument");
    std::vector<ExpVec> out;
    ExpVec current(static_cast<std::size_t>(nvars), 0);
    // Enumerate recursively, then sort into canonical order.
    auto recurse = [&](auto&& self, int position, int remaining) -> void {
        if (position == nvars) {
            out.push_back(current);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            current[static_cast<std::size_t>(position)] = e;
            self(self, position + 1, remaining - e);
        }
        current[static_cast<std::size_t>(position)] = 0;
    };
    recurse(recurse, 0, degree_bound);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

/// An ordered list of distinct variable labels. Polynomials may only be
/// combined when their contexts agree; the construction juggles several
/// variable families and implicit unions would breed index bugs.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> labels) : labels_(std::move(labels))
    {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], i).second) {
                throw ParameterError("VarContext: duplicate label '" + labels_[i] + "'");
            }
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::size_t> index_of(std::string_view label) const
    {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const VarContext& a, const VarContext& b) { return a.labels_ == b.labels_; }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

inline ContextPtr make_context(std::vector<std::string> labels)
{
    return std::make_shared<VarContext>(std::move(labels));
}

/// Context "prefix0", "prefix1", ..., e.g. indexed_context("z", 4) = z0..z3.
inline ContextPtr indexed_context(std::string_view prefix, std::size_t count)
{
    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
    return make_context(std::move(labels));
}

inline bool same_context(const ContextPtr& a, const ContextPtr& b)
{
    return a == b || (a && b && *a == *b);
}

inline void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* where)
{
    if (!same_context(a, b)) throw ParameterError(std::string(where) + ": variable context mismatch");
}

/// Canonical sparse multivariate polynomial over an exact coefficient ring R.
/// No stored coefficient is zero and the term map is ordered graded-lex, so
/// equality of polynomials is structural equality of their term maps.
template <class R>
class SparsePoly {
public:
    using TermMap = std::map<ExpVec, R, GrlexLess>;

    explicit SparsePoly(ContextPtr context) : context_(std::move(context))
    {
        if (!context_) throw ParameterError("SparsePoly: null context");
    }

    static SparsePoly zero(ContextPtr context) { return SparsePoly(std::move(context)); }

    static SparsePoly constant(ContextPtr context, R value)
    {
        SparsePoly f(std::move(context));
        f.add_term(ExpVec(f.nvars(), 0), std::move(value));
        return f;
    }

    static SparsePoly variable(ContextPtr context, std::size_t index)
    {
        SparsePoly f(std::move(context));
        if (index >= f.nvars()) throw ParameterError("SparsePoly::variable: index out of range");
        ExpVec e(f.nvars(), 0);
        e[index] = 1;
        f.add_term(std::move(e), one_like(R{}));
        return f;
    }

    static SparsePoly monomial(ContextPtr context, ExpVec exponents, R coeff)
    {
        SparsePoly f(std::move(context));
        f.add_term(std::move(exponents), std::move(coeff));
        return f;
    }

    const ContextPtr& context() const { return context_; }
    std::size_t nvars() const { return context_->size(); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Total degree; kZeroPolyDegree for the zero polynomial.
    int degree() const
    {
        if (terms_.empty()) return kZeroPolyDegree;
        // Grlex order puts the highest total degree last.
        return total_degree(terms_.rbegin()->first);
    }

    /// Total degree counting only the designated variables.
    int degree_in(std::span<const std::size_t> var_indices) const
    {
        if (terms_.empty()) return kZeroPolyDegree;
        int best = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (std::size_t v : var_indices) d += e.at(v);
            best = std::max(best, d);
        }
        return best;
    }

    R coefficient(const ExpVec& e) const
    {
        auto it = terms_.find(e);
        if (it == terms_.end()) return R{};
        return it->second;
    }

    /// Accumulates coeff onto the monomial x^e, keeping the canonical form
    /// (cancelled terms are removed).
    void add_term(ExpVec e, R coeff)
    {
        if (e.size() != nvars()) throw ParameterError("SparsePoly::add_term: exponent arity mismatch");
        for (int x : e) {
            if (x < 0) throw ParameterError("SparsePoly::add_term: negative exponent");
        }
        if (is_zero_value(coeff)) return;
        // try_emplace leaves its arguments intact when the key already exists.
        auto [it, inserted] = terms_.try_emplace(std::move(e), std::move(coeff));
        if (!inserted) {
            it->second += coeff;
            if (is_zero_value(it->second)) terms_.erase(it);
        }
    }

    SparsePoly operator-() const
    {
        SparsePoly out(context_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b)
    {
        require_same_context(a.context_, b.context_, "poly add");
        SparsePoly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }

    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return a + (-b); }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b)
    {
        return multiply(a, b, 0);
    }

    /// Product with a term cap; cap 0 means unlimited. Exceeding the cap
    /// raises ResourceError before memory is exhausted.
    static SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, std::size_t term_cap)
    {
        require_same_context(a.context_, b.context_, "poly mul");
        SparsePoly out(a.context_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                ExpVec e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(std::move(e), ca * cb);
                if (term_cap != 0 && out.terms_.size() > term_cap) {
                    throw ResourceError("poly mul: term cap exceeded");
                }
            }
        }
        return out;
    }

    SparsePoly& operator+=(const SparsePoly& rhs) { return *this = *this + rhs; }
    SparsePoly& operator-=(const SparsePoly& rhs) { return *this = *this - rhs; }
    SparsePoly& operator*=(const SparsePoly& rhs) { return *this = *this * rhs; }

    SparsePoly scaled(const R& factor) const
    {
        SparsePoly out(context_);
        if (is_zero_value(factor)) return out;
        for (const auto& [e, c] : terms_) out.add_term(e, c * factor);
        return out;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b)
    {
        return same_context(a.context_, b.context_) && a.terms_ == b.terms_;
    }

    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

private:
    ContextPtr context_;
    TermMap terms_;
};

/// Exact evaluation at a point of the coefficient ring.
template <class R>
R poly_eval(const SparsePoly<R>& f, std::span<const R> point)
{
    if (point.size() != f.nvars()) throw ParameterError("poly_eval: point arity mismatch");
    if (f.is_zero()) {
        if (!point.empty()) return zero_like(point[0]);
        return R{};
    }
    R acc = zero_like(f.terms().begin()->second);
    for (const auto& [e, c] : f.terms()) {
        R term = c;
        for (std::size_t i = 0; i < point.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) term *= point[i];
        }
        acc += term;
    }
    return acc;
}

template <class R>
R poly_eval(const SparsePoly<R>& f, const std::vector<R>& point)
{
    return poly_eval(f, std::span<const R>(point));
}

/// Partial evaluation: variables with an assigned value are substituted,
/// the rest stay symbolic. The result lives in the same context (assigned
/// variables simply no longer occur).
template <class R>
SparsePoly<R> poly_restrict(const SparsePoly<R>& f, std::span<const std::optional<R>> assignment)
{
    if (assignment.size() != f.nvars()) throw ParameterError("poly_restrict: assignment arity mismatch");
    SparsePoly<R> out(f.context());
    for (const auto& [e, c] : f.terms()) {
        // A zero factor kills the whole term; factors of one need no work.
        bool vanishes = false;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            if (e[i] > 0 && assignment[i] && is_zero_value(*assignment[i])) {
                vanishes = true;
                break;
            }
        }
        if (vanishes) continue;
        R coeff = c;
        ExpVec reduced = e;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            if (!assignment[i]) continue;
            if (!is_one_value(*assignment[i])) {
                for (int k = 0; k < e[i]; ++k) coeff *= *assignment[i];
            }
            reduced[i] = 0;
        }
        out.add_term(std::move(reduced), std::move(coeff));
    }
    return out;
}

/// f^k by repeated multiplication, with the same term cap convention as
/// SparsePoly::multiply.
template <class R>
SparsePoly<R> poly_pow(const SparsePoly<R>& f, int k, std::size_t term_cap = 0)
{
    if (k < 0) throw ParameterError("poly_pow: negative exponent");
    SparsePoly<R> out = SparsePoly<R>::constant(f.context(), one_like(R{}));
    for (int i = 0; i < k; ++i) out = SparsePoly<R>::multiply(out, f, term_cap);
    return out;
}

/// Formal composition f(g_1, ..., g_k): one image polynomial per variable of
/// f, all images over one common context. The result lives in the image
/// context.
template <class R>
SparsePoly<R> poly_substitute(const SparsePoly<R>& f, std::span<const SparsePoly<R>> images,
                              std::size_t term_cap = 0)
{
    if (images.size() != f.nvars()) throw ParameterError("poly_substitute: arity mismatch");
    ContextPtr image_ctx;
    if (!images.empty()) {
        image_ctx = images[0].context();
        for (const auto& g : images) require_same_context(image_ctx, g.context(), "poly_substitute");
    } else {
        image_ctx = make_context({});
    }
    SparsePoly<R> out(image_ctx);
    for (const auto& [e, c] : f.terms()) {
        SparsePoly<R> term = SparsePoly<R>::constant(image_ctx, c);
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (e[i] == 0) continue;
            term = SparsePoly<R>::multiply(term, poly_pow(images[i], e[i], term_cap), term_cap);
        }
        out += term;
        if (term_cap != 0 && out.term_count() > term_cap) {
            throw ResourceError("poly_substitute: term cap exceeded");
        }
    }
    return out;
}

template <class R>
SparsePoly<R> poly_substitute(const SparsePoly<R>& f, const std::vector<SparsePoly<R>>& images,
                              std::size_t term_cap = 0)
{
    return poly_substitute(f, std::span<const SparsePoly<R>>(images), term_cap);
}

/// Keeps exactly the terms whose total degree in the designated variables is
/// at most d. Degree in the other variables is ignored.
template <class R>
SparsePoly<R> truncate_total_degree(const SparsePoly<R>& f, int d, std::span<const std::size_t> var_indices)
{
    if (d < 0) throw ParameterError("truncate_total_degree: negative degree bound");
    if (var_indices.empty()) throw ParameterError("truncate_total_degree: empty variable set");
    for (std::size_t v : var_indices) {
        if (v >= f.nvars()) throw ParameterError("truncate_total_degree: variable index out of range");
    }
    SparsePoly<R> out(f.context());
    for (const auto& [e, c] : f.terms()) {
        int deg = 0;
        for (std::size_t v : var_indices) deg += e[v];
        if (deg <= d) out.add_term(e, c);
    }
    return out;
}

/// The polynomial coefficient of the monomial (designated vars)^e, as a
/// polynomial in the remaining variables.
template <class R>
SparsePoly<R> coefficient_extract(const SparsePoly<R>& f, const ExpVec& e,
                                  std::span<const std::size_t> var_indices)
{
    if (e.size() != var_indices.size()) throw ParameterError("coefficient_extract: exponent arity mismatch");
    std::vector<bool> designated(f.nvars(), false);
    for (std::size_t v : var_indices) {
        if (v >= f.nvars()) throw ParameterError("coefficient_extract: variable index out of range");
        designated[v] = true;
    }
    std::vector<std::string> remaining;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        if (!designated[i]) remaining.push_back(f.context()->label(i));
    }
    SparsePoly<R> out(make_context(std::move(remaining)));
    for (const auto& [exp, c] : f.terms()) {
        bool match = true;
        for (std::size_t k = 0; k < var_indices.size(); ++k) {
            if (exp[var_indices[k]] != e[k]) { match = false; break; }
        }
        if (!match) continue;
        ExpVec rest;
        rest.reserve(out.nvars());
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (!designated[i]) rest.push_back(exp[i]);
        }
        out.add_term(std::move(rest), c);
    }
    return out;
}

/// A fixed-length tuple of polynomials over one shared context; the form
/// taken by polynomial maps such as hitting set generators.
struct PolyMap {
    std::vector<SparsePoly<Rational>> entries;

    explicit PolyMap(std::vector<SparsePoly<Rational>> polys) : entries(std::move(polys))
    {
        for (const auto& f : entries) {
            require_same_context(entries.front().context(), f.context(), "PolyMap");
        }
    }

    std::size_t size() const { return entries.size(); }
    const ContextPtr& context() const
    {
        if (entries.empty()) throw ParameterError("PolyMap: empty map has no context");
        return entries.front().context();
    }
};

template <class R>
SparsePoly<R> zero_like(const SparsePoly<R>& f) { return SparsePoly<R>::zero(f.context()); }

template <class R>
SparsePoly<R> one_like(const SparsePoly<R>& f)
{
    return SparsePoly<R>::constant(f.context(), one_like(R{}));
}

template <class R>
bool is_zero_value(const SparsePoly<R>& f) { return f.is_zero(); }

template <class R>
bool is_one_value(const SparsePoly<R>& f)
{
    if (f.term_count() != 1) return false;
    const auto& [e, c] = *f.terms().begin();
    return total_degree(e) == 0 && is_one_value(c);
}

} // namespace kigen
