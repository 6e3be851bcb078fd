#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "kigen/circuit.hpp"
#include "kigen/design.hpp"
#include "kigen/equations.hpp"
#include "kigen/generator.hpp"
#include "kigen/rational.hpp"
#include "kigen/sparse_poly.hpp"
#include "kigen/unipoly.hpp"

namespace kigen {

using Json = nlohmann::json;

inline Json to_json(const Rational& q) { return q.str(); }

inline Json to_json(const SparsePoly<Rational>& f)
{
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) {
        terms.push_back(Json{{"exp", e}, {"coeff", c.str()}});
    }
    return Json{{"vars", f.context()->labels()}, {"terms", std::move(terms)}};
}

inline SparsePoly<Rational> poly_from_json(const Json& j)
{
    const ContextPtr ctx = make_context(j.at("vars").get<std::vector<std::string>>());
    SparsePoly<Rational> f(ctx);
    for (const auto& term : j.at("terms")) {
        f.add_term(term.at("exp").get<ExpVec>(), Rational::from_string(term.at("coeff").get<std::string>()));
    }
    return f;
}

inline Json to_json(const RationalUniPoly& g)
{
    Json coeffs = Json::array();
    for (const Rational& c : g.coefficients()) coeffs.push_back(c.str());
    return Json{{"coeffs", std::move(coeffs)}};
}

inline Json to_json(const Design& d)
{
    return Json{{"ell", d.universe_size}, {"m", d.set_size}, {"n", d.intersection_bound}, {"sets", d.sets}};
}

inline Design design_from_json(const Json& j)
{
    Design d;
    d.universe_size = j.at("ell").get<std::int64_t>();
    d.set_size = j.at("m").get<std::int64_t>();
    d.intersection_bound = j.at("n").get<std::int64_t>();
    d.sets = j.at("sets").get<std::vector<std::vector<std::int64_t>>>();
    return d;
}

inline Json to_json(const DesignReport& r)
{
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        violations.push_back(Json{{"kind", v.kind}, {"first", v.first}, {"second", v.second}, {"detail", v.detail}});
    }
    return Json{{"valid", r.valid}, {"violations", std::move(violations)}};
}

/// Codewords serialize as row-major bit strings, t_0 first.
inline Json to_json(const Codeword& c)
{
    std::string bits;
    bits.reserve(c.bits.size());
    for (std::uint8_t b : c.bits) bits.push_back(b ? '1' : '0');
    return bits;
}

inline Json to_json(const Circuit& c)
{
    Json gates = Json::array();
    for (const Gate& g : c.gates()) {
        switch (g.op) {
        case Gate::Op::Input: gates.push_back(Json{{"op", "input"}, {"label", g.label}}); break;
        case Gate::Op::Const: gates.push_back(Json{{"op", "const"}, {"value", g.value.str()}}); break;
        case Gate::Op::Add: gates.push_back(Json{{"op", "add"}, {"args", g.args}}); break;
        case Gate::Op::Mul: gates.push_back(Json{{"op", "mul"}, {"args", g.args}}); break;
        }
    }
    return Json{{"gates", std::move(gates)}, {"outputs", c.outputs()}};
}

inline Circuit circuit_from_json(const Json& j)
{
    std::vector<Gate> gates;
    for (const auto& g : j.at("gates")) {
        const std::string op = g.at("op").get<std::string>();
        if (op == "input") {
            gates.push_back(Gate::input(g.at("label").get<std::string>()));
        } else if (op == "const") {
            gates.push_back(Gate::constant(Rational::from_string(g.at("value").get<std::string>())));
        } else if (op == "add") {
            gates.push_back(Gate::add(g.at("args").get<std::vector<std::size_t>>()));
        } else if (op == "mul") {
            gates.push_back(Gate::mul(g.at("args").get<std::vector<std::size_t>>()));
        } else {
            throw ParameterError("circuit_from_json: unknown op '" + op + "'");
        }
    }
    return Circuit(std::move(gates), j.at("outputs").get<std::vector<std::size_t>>());
}

inline Json to_json(const GeneratorPolynomial& g)
{
    Json terms = Json::array();
    for (const auto& [e, value] : g.terms) {
        terms.push_back(Json{{"y_exp", e}, {"z_poly", to_json(value)}});
    }
    return Json{{"n", g.n}, {"a", g.a}, {"p", g.p}, {"terms", std::move(terms)}};
}

inline Json to_json(const CoeffVector<SparsePoly<Rational>>& cv)
{
    const std::vector<ExpVec> order = monomials_up_to_degree(cv.nvars, cv.degree_bound);
    Json entries = Json::array();
    for (std::size_t i = 0; i < cv.entries.size(); ++i) {
        entries.push_back(Json{{"y_exp", order[i]}, {"z_poly", to_json(cv.entries[i])}});
    }
    return Json{{"n", cv.nvars}, {"d", cv.degree_bound}, {"entries", std::move(entries)}};
}

inline Json to_json(const SuccinctnessReport& r)
{
    Json mismatches = Json::array();
    for (const auto& m : r.mismatches) {
        mismatches.push_back(Json{{"y_exp", m.y_exponent},
                                  {"coefficient_entry", to_json(m.coefficient_entry)},
                                  {"generator_entry", to_json(m.generator_entry)}});
    }
    return Json{{"holds", r.holds}, {"mismatches", std::move(mismatches)}};
}

inline Json to_json(const EquationSearchResult& r)
{
    Json basis = Json::array();
    for (const auto& f : r.basis) basis.push_back(to_json(f));
    return Json{{"basis", std::move(basis)},
                {"matrix", Json{{"rows", r.matrix_rows}, {"cols", r.matrix_cols}, {"rank", r.rank}}}};
}

inline Json to_json(const VanishReport& r)
{
    Json witnesses = Json::array();
    for (const auto& pt : r.witnesses) {
        Json point = Json::array();
        for (const Rational& x : pt) point.push_back(x.str());
        witnesses.push_back(std::move(point));
    }
    return Json{{"is_equation", r.is_equation}, {"witnesses", std::move(witnesses)}};
}

inline Json to_json(const HittingReport& r) { return Json{{"hits", r.hits}, {"exact", r.exact}}; }

} // namespace kigen
