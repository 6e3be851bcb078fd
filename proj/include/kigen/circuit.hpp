#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kigen/errors.hpp"
#include "kigen/modular.hpp"
#include "kigen/rational.hpp"
#include "kigen/rng.hpp"
#include "kigen/sparse_poly.hpp"

namespace kigen {

/// One node of an algebraic circuit. Addition and multiplication gates have
/// unbounded fan-in; their arguments reference strictly earlier gates.
struct Gate {
    enum class Op { Input, Const, Add, Mul };

    Op op = Op::Const;
    std::string label;              // Input only
    Rational value;                 // Const only
    std::vector<std::size_t> args;  // Add / Mul only

    static Gate input(std::string name) { return Gate{Op::Input, std::move(name), Rational(0), {}}; }
    static Gate constant(Rational v) { return Gate{Op::Const, {}, std::move(v), {}}; }
    static Gate add(std::vector<std::size_t> children) { return Gate{Op::Add, {}, Rational(0), std::move(children)}; }
    static Gate mul(std::vector<std::size_t> children) { return Gate{Op::Mul, {}, Rational(0), std::move(children)}; }
};

/// An algebraic circuit: a topologically ordered gate list plus a nonempty
/// list of output gates. Size is the total node count, inputs included.
class Circuit {
public:
    Circuit(std::vector<Gate> gates, std::vector<std::size_t> outputs)
        : gates_(std::move(gates)), outputs_(std::move(outputs))
    {
        if (gates_.empty()) throw ParameterError("Circuit: no gates");
        if (outputs_.empty()) throw ParameterError("Circuit: no outputs");
        for (std::size_t i = 0; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            const bool needs_args = g.op == Gate::Op::Add || g.op == Gate::Op::Mul;
            if (needs_args && g.args.empty()) throw ParameterError("Circuit: arithmetic gate without children");
            if (!needs_args && !g.args.empty()) throw ParameterError("Circuit: leaf gate with children");
            for (std::size_t a : g.args) {
                if (a >= i) throw ParameterError("Circuit: gate reference not strictly earlier");
            }
        }
        for (std::size_t o : outputs_) {
            if (o >= gates_.size()) throw ParameterError("Circuit: output reference out of range");
        }
    }

    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<std::size_t>& outputs() const { return outputs_; }
    std::size_t size() const { return gates_.size(); }

    /// Distinct input labels in order of first appearance.
    std::vector<std::string> input_labels() const
    {
        std::vector<std::string> labels;
        for (const Gate& g : gates_) {
            if (g.op != Gate::Op::Input) continue;
            bool seen = false;
            for (const auto& l : labels) {
                if (l == g.label) { seen = true; break; }
            }
            if (!seen) labels.push_back(g.label);
        }
        return labels;
    }

private:
    std::vector<Gate> gates_;
    std::vector<std::size_t> outputs_;
};

inline std::size_t circuit_size(const Circuit& c) { return c.size(); }

/// Bottom-up exact evaluation over a ring R. `to_ring` maps the rational
/// circuit constants into R, so one circuit type serves both exact rational
/// and prime-field evaluation.
template <class R, class ConstMap>
std::vector<R> circuit_eval(const Circuit& c, const std::map<std::string, R>& assignment, ConstMap to_ring)
{
    std::vector<R> values;
    values.reserve(c.size());
    for (const Gate& g : c.gates()) {
        switch (g.op) {
        case Gate::Op::Input: {
            auto it = assignment.find(g.label);
            if (it == assignment.end()) {
                throw ParameterError("circuit_eval: no assignment for input '" + g.label + "'");
            }
            values.push_back(it->second);
            break;
        }
        case Gate::Op::Const:
            values.push_back(to_ring(g.value));
            break;
        case Gate::Op::Add: {
            R acc = values[g.args[0]];
            for (std::size_t k = 1; k < g.args.size(); ++k) acc += values[g.args[k]];
            values.push_back(std::move(acc));
            break;
        }
        case Gate::Op::Mul: {
            R acc = values[g.args[0]];
            for (std::size_t k = 1; k < g.args.size(); ++k) acc *= values[g.args[k]];
            values.push_back(std::move(acc));
            break;
        }
        }
    }
    std::vector<R> out;
    out.reserve(c.outputs().size());
    for (std::size_t o : c.outputs()) out.push_back(values[o]);
    return out;
}

inline std::vector<Rational> circuit_eval(const Circuit& c, const std::map<std::string, Rational>& assignment)
{
    return circuit_eval(c, assignment, [](const Rational& q) { return q; });
}

inline std::vector<Fp> circuit_eval_fp(const Circuit& c, const std::map<std::string, Fp>& assignment,
                                       std::int64_t p)
{
    return circuit_eval(c, assignment, [p](const Rational& q) { return rational_to_fp(q, p); });
}

/// Syntactic degree bound: inputs count 1, constants 0, addition takes the
/// max and multiplication the sum, saturating well below overflow. This can
/// wildly overestimate the true degree; callers decide how to use it.
inline std::int64_t syntactic_degree(const Circuit& c)
{
    constexpr std::int64_t kSaturate = std::int64_t{1} << 48;
    std::vector<std::int64_t> deg;
    deg.reserve(c.size());
    for (const Gate& g : c.gates()) {
        switch (g.op) {
        case Gate::Op::Input: deg.push_back(1); break;
        case Gate::Op::Const: deg.push_back(0); break;
        case Gate::Op::Add: {
            std::int64_t d = 0;
            for (std::size_t a : g.args) d = std::max(d, deg[a]);
            deg.push_back(d);
            break;
        }
        case Gate::Op::Mul: {
            std::int64_t d = 0;
            for (std::size_t a : g.args) d = std::min(kSaturate, d + deg[a]);
            deg.push_back(d);
            break;
        }
        }
    }
    std::int64_t best = 0;
    for (std::size_t o : c.outputs()) best = std::max(best, deg[o]);
    return best;
}

/// Seeded random circuit: the first `nvars` gates are the inputs x0..x{n-1},
/// the rest are fan-in-2 gates (with an occasional small constant leaf), for
/// an exact total of `size` gates. Unreferenced inputs are wired in first, so
/// every variable appears as soon as the budget allows. Identical seeds give
/// structurally identical circuits.
inline Circuit random_circuit(std::uint64_t seed, std::size_t nvars, std::size_t size)
{
    if (nvars < 1) throw ParameterError("random_circuit: need at least one variable");
    if (size < nvars) throw ParameterError("random_circuit: size smaller than variable count");
    Rng rng(seed);
    std::vector<Gate> gates;
    gates.reserve(size);
    for (std::size_t i = 0; i < nvars; ++i) gates.push_back(Gate::input("x" + std::to_string(i)));

    std::size_t next_unreferenced = (size > nvars) ? 0 : nvars;
    const std::int64_t constant_pool[] = {-3, -2, -1, 1, 2, 3};
    while (gates.size() < size) {
        const bool last_gate = gates.size() + 1 == size;
        // Constants only before the final gate, and only once inputs are wired.
        if (!last_gate && next_unreferenced >= nvars && rng.below(6) == 0) {
            gates.push_back(Gate::constant(Rational(constant_pool[rng.below(6)])));
            continue;
        }
        std::size_t lhs;
        if (next_unreferenced < nvars) {
            lhs = next_unreferenced++;
        } else {
            lhs = rng.below(gates.size());
        }
        std::size_t rhs;
        if (next_unreferenced < nvars) {
            rhs = next_unreferenced++;
        } else {
            rhs = rng.below(gates.size());
        }
        Gate g = rng.coin() ? Gate::add({lhs, rhs}) : Gate::mul({lhs, rhs});
        gates.push_back(std::move(g));
    }
    const std::size_t last = gates.size() - 1;
    return Circuit(std::move(gates), {last});
}

/// One-sided probabilistic nonzeroness test: evaluates the circuit at
/// `trials` uniformly random F_p points. A `true` answer is a certificate of
/// nonzeroness; `false` only says every sampled point vanished. The caller
/// must pick p above a degree bound for the usual vanishing estimate to bite.
inline bool is_nonzero_probabilistic(const Circuit& c, std::int64_t p, int trials, std::uint64_t seed)
{
    if (trials < 1) throw ParameterError("is_nonzero_probabilistic: trials must be >= 1");
    if (!is_prime(p)) throw ParameterError("is_nonzero_probabilistic: modulus must be prime");
    const std::vector<std::string> labels = c.input_labels();
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::map<std::string, Fp> assignment;
        for (const auto& label : labels) {
            assignment.emplace(label, Fp(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p))), p));
        }
        for (const Fp& v : circuit_eval_fp(c, assignment, p)) {
            if (!v.is_zero()) return true;
        }
    }
    return false;
}

/// Gate-wise expansion of the circuit into canonical polynomials, one per
/// output. The context must cover every input label.
inline std::vector<SparsePoly<Rational>> expand_to_polys(const Circuit& c, const ContextPtr& context,
                                                         std::size_t term_cap = kDefaultTermCap)
{
    using Poly = SparsePoly<Rational>;
    std::vector<Poly> values;
    values.reserve(c.size());
    for (const Gate& g : c.gates()) {
        switch (g.op) {
        case Gate::Op::Input: {
            auto idx = context->index_of(g.label);
            if (!idx) throw ParameterError("expand_to_polys: context lacks input '" + g.label + "'");
            values.push_back(Poly::variable(context, *idx));
            break;
        }
        case Gate::Op::Const:
            values.push_back(Poly::constant(context, g.value));
            break;
        case Gate::Op::Add: {
            Poly acc = values[g.args[0]];
            for (std::size_t k = 1; k < g.args.size(); ++k) acc += values[g.args[k]];
            values.push_back(std::move(acc));
            break;
        }
        case Gate::Op::Mul: {
            Poly acc = values[g.args[0]];
            for (std::size_t k = 1; k < g.args.size(); ++k) {
                acc = Poly::multiply(acc, values[g.args[k]], term_cap);
            }
            values.push_back(std::move(acc));
            break;
        }
        }
    }
    std::vector<Poly> out;
    out.reserve(c.outputs().size());
    for (std::size_t o : c.outputs()) out.push_back(values[o]);
    return out;
}

inline std::vector<SparsePoly<Rational>> expand_to_polys(const Circuit& c, std::size_t term_cap = kDefaultTermCap)
{
    return expand_to_polys(c, make_context(c.input_labels()), term_cap);
}

namespace detail {

/// Appends gates computing `f` on top of existing input gates (one per
/// context variable, at indices var_base + i). Returns the output gate index.
inline std::size_t append_poly_gates(std::vector<Gate>& gates, const SparsePoly<Rational>& f,
                                     std::size_t var_base)
{
    std::vector<std::size_t> term_gates;
    for (const auto& [e, c] : f.terms()) {
        gates.push_back(Gate::constant(c));
        std::vector<std::size_t> factors{gates.size() - 1};
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) factors.push_back(var_base + i);
        }
        if (factors.size() > 1) {
            gates.push_back(Gate::mul(std::move(factors)));
        }
        term_gates.push_back(gates.size() - 1);
    }
    if (term_gates.empty()) {
        gates.push_back(Gate::constant(Rational(0)));
        return gates.size() - 1;
    }
    if (term_gates.size() == 1) return term_gates[0];
    gates.push_back(Gate::add(std::move(term_gates)));
    return gates.size() - 1;
}

} // namespace detail

/// A circuit computing `f`, with one input gate per context variable (in
/// context order, including variables f does not use).
inline Circuit circuit_from_poly(const SparsePoly<Rational>& f)
{
    std::vector<Gate> gates;
    for (std::size_t i = 0; i < f.nvars(); ++i) gates.push_back(Gate::input(f.context()->label(i)));
    if (f.nvars() == 0) {
        // Constant polynomial over the empty context.
        Rational value = f.is_zero() ? Rational(0) : f.terms().begin()->second;
        gates.push_back(Gate::constant(std::move(value)));
        return Circuit(std::move(gates), {0});
    }
    const std::size_t out = detail::append_poly_gates(gates, f, 0);
    return Circuit(std::move(gates), {out});
}

/// The circuit computing outer(g_1, ..., g_k) where the k-th distinct input
/// label of `outer` (in gate order) is fed the k-th entry of `images`. Inputs
/// of the result are the image context variables.
inline Circuit compose_circuit(const Circuit& outer, const PolyMap& images)
{
    const std::vector<std::string> labels = outer.input_labels();
    if (labels.size() != images.size()) throw ParameterError("compose_circuit: arity mismatch");

    const ContextPtr& inner_ctx = images.context();
    std::vector<Gate> gates;
    for (std::size_t i = 0; i < inner_ctx->size(); ++i) gates.push_back(Gate::input(inner_ctx->label(i)));

    std::map<std::string, std::size_t> image_gate;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        image_gate[labels[k]] = detail::append_poly_gates(gates, images.entries[k], 0);
    }

    std::vector<std::size_t> remap(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const Gate& g = outer.gates()[i];
        if (g.op == Gate::Op::Input) {
            remap[i] = image_gate.at(g.label);
            continue;
        }
        Gate copy = g;
        for (std::size_t& a : copy.args) a = remap[a];
        gates.push_back(std::move(copy));
        remap[i] = gates.size() - 1;
    }
    std::vector<std::size_t> outputs;
    for (std::size_t o : outer.outputs()) outputs.push_back(remap[o]);
    return Circuit(std::move(gates), std::move(outputs));
}

} // namespace kigen
