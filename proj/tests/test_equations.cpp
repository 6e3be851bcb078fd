#include <catch2/catch_amalgamated.hpp>

#include <kigen/equations.hpp>
#include <kigen/generator.hpp>
#include <kigen/rng.hpp>

#include <vector>

using namespace kigen;
using Poly = SparsePoly<Rational>;

namespace {

Rational small_rational(Rng& rng)
{
    return Rational(rng.in_range(-9, 9), rng.in_range(1, 9));
}

// Rank of a rational matrix, used for span-membership checks.
std::size_t rank_of(const RationalMatrix& m)
{
    if (m.empty()) return 0;
    return m[0].size() - nullspace(m).size();
}

// Is q a linear combination of the rows of `span_rows`?
bool in_span(const std::vector<Rational>& q, RationalMatrix span_rows)
{
    const std::size_t before = rank_of(span_rows);
    span_rows.push_back(q);
    return rank_of(span_rows) == before;
}

std::vector<Rational> coefficients_of(const Poly& f, const std::vector<ExpVec>& order)
{
    std::vector<Rational> out;
    out.reserve(order.size());
    for (const auto& e : order) out.push_back(f.coefficient(e));
    return out;
}

} // namespace

TEST_CASE("veronese rows in graded-lex order", "[equations]")
{
    const std::vector<Rational> p23{Rational(2), Rational(3)};
    CHECK(veronese_row(p23, 1) == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
    CHECK(veronese_row(p23, 2) == std::vector<Rational>{Rational(1), Rational(2), Rational(3),
                                                        Rational(4), Rational(6), Rational(9)});
    const std::vector<Rational> origin{Rational(0), Rational(0), Rational(0)};
    const auto row = veronese_row(origin, 2);
    CHECK(row[0] == Rational(1));
    for (std::size_t i = 1; i < row.size(); ++i) CHECK(row[i] == Rational(0));
}

TEST_CASE("nullspace of small matrices", "[equations]")
{
    const RationalMatrix m{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    const RationalMatrix basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    // Up to scaling this is (2, -1); normalized so the first nonzero entry is 1.
    CHECK(basis[0] == std::vector<Rational>{Rational(1), Rational(-1, 2)});

    const RationalMatrix identity{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    CHECK(nullspace(identity).empty());

    const RationalMatrix zero(2, std::vector<Rational>(3, Rational(0)));
    const RationalMatrix full = nullspace(zero);
    REQUIRE(full.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(full[i][j] == Rational(i == j ? 1 : 0));
        }
    }
}

TEST_CASE("nullspace vectors satisfy the system exactly", "[equations]")
{
    Rng rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + rng.below(5);
        const std::size_t cols = 1 + rng.below(6);
        RationalMatrix m(rows, std::vector<Rational>(cols, Rational(0)));
        for (auto& row : m) {
            for (auto& x : row) x = Rational(rng.in_range(-4, 4));
        }
        const RationalMatrix basis = nullspace(m);
        for (const auto& v : basis) {
            for (const auto& row : m) {
                Rational dot(0);
                for (std::size_t j = 0; j < cols; ++j) dot += row[j] * v[j];
                REQUIRE(dot == Rational(0));
            }
        }
        // rank-nullity
        CHECK(basis.size() + rank_of(m) == cols);
    }
}

TEST_CASE("find_equations recovers a linear relation", "[equations]")
{
    const std::vector<std::vector<Rational>> points{{Rational(1), Rational(2)},
                                                    {Rational(2), Rational(4)},
                                                    {Rational(3), Rational(6)}};
    const EquationSearchResult result = find_equations(points, 1);
    REQUIRE(result.basis.size() == 1);
    CHECK(result.rank == 2);
    CHECK(result.matrix_rows == 3);
    CHECK(result.matrix_cols == 3);

    // The basis spans 2*x0 - x1.
    const ContextPtr ctx = indexed_context("x", 2);
    Poly target(ctx);
    target.add_term({1, 0}, Rational(2));
    target.add_term({0, 1}, Rational(-1));
    const auto order = monomials_up_to_degree(2, 1);
    CHECK(in_span(coefficients_of(target, order), {coefficients_of(result.basis[0], order)}));
}

TEST_CASE("find_equations on the boolean square finds the multilinear relations", "[equations]")
{
    std::vector<std::vector<Rational>> points;
    for (int x = 0; x <= 1; ++x) {
        for (int y = 0; y <= 1; ++y) points.push_back({Rational(x), Rational(y)});
    }
    const EquationSearchResult result = find_equations(points, 2);
    const auto order = monomials_up_to_degree(2, 2);

    RationalMatrix basis_rows;
    for (const auto& f : result.basis) basis_rows.push_back(coefficients_of(f, order));

    const ContextPtr ctx = indexed_context("x", 2);
    Poly sq0(ctx); // x0^2 - x0
    sq0.add_term({2, 0}, Rational(1));
    sq0.add_term({1, 0}, Rational(-1));
    Poly sq1(ctx); // x1^2 - x1
    sq1.add_term({0, 2}, Rational(1));
    sq1.add_term({0, 1}, Rational(-1));
    CHECK(in_span(coefficients_of(sq0, order), basis_rows));
    CHECK(in_span(coefficients_of(sq1, order), basis_rows));
}

TEST_CASE("a single point admits no degree-0 equation", "[equations]")
{
    const std::vector<std::vector<Rational>> one_point{{Rational(5), Rational(-3)}};
    CHECK(find_equations(one_point, 0).basis.empty());
}

TEST_CASE("vanishing checks", "[equations]")
{
    const ContextPtr ctx = indexed_context("x", 2);
    Poly f(ctx); // 2*x0 - x1
    f.add_term({1, 0}, Rational(2));
    f.add_term({0, 1}, Rational(-1));

    const std::vector<std::vector<Rational>> good{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(check_equation_vanishes(f, good).is_equation);

    const Poly x0 = Poly::variable(ctx, 0);
    const std::vector<std::vector<Rational>> mixed{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}};
    const VanishReport report = check_equation_vanishes(x0, mixed);
    CHECK_FALSE(report.is_equation);
    REQUIRE(report.witnesses.size() == 1);
    CHECK(report.witnesses[0] == std::vector<Rational>{Rational(1), Rational(0)});

    CHECK_THROWS_AS(check_equation_vanishes(Poly::zero(ctx), good), ParameterError);
    CHECK_THROWS_AS(check_equation_vanishes(f, std::vector<std::vector<Rational>>{{Rational(1)}}),
                    ParameterError);
}

TEST_CASE("every returned equation vanishes on its sample points", "[equations]")
{
    Rng rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t nvars = 1 + rng.below(3);
        const int degree = 1 + static_cast<int>(rng.below(2));
        std::vector<std::vector<Rational>> points;
        const std::size_t count = 2 + rng.below(6);
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<Rational> pt;
            for (std::size_t v = 0; v < nvars; ++v) pt.push_back(Rational(rng.in_range(-3, 3)));
            points.push_back(std::move(pt));
        }
        const EquationSearchResult result = find_equations(points, degree);
        for (const auto& f : result.basis) {
            CHECK(check_equation_vanishes(f, points).is_equation);
        }
    }
}

TEST_CASE("planted equations are recovered, 50 seeded instances", "[equations]")
{
    Rng rng(20240601);
    int instances = 0;
    while (instances < 50) {
        const int nvars = 2 + static_cast<int>(rng.below(3));   // N in [2,4]
        const int degree = 1 + static_cast<int>(rng.below(3));  // D in [1,3]

        // Plant Q = A(x_1..x_{N-1}) + B(x_1..x_{N-1}) * x_N with B nonzero,
        // deg A <= D, deg B <= D-1, so every sample solves to a rational
        // last coordinate.
        const ContextPtr ctx = indexed_context("x", static_cast<std::size_t>(nvars));
        const ContextPtr head_ctx = indexed_context("x", static_cast<std::size_t>(nvars - 1));
        auto random_head_poly = [&](int max_deg) {
            Poly f(head_ctx);
            const auto monos = monomials_up_to_degree(nvars - 1, max_deg);
            for (const auto& e : monos) {
                if (rng.below(3) == 0) f.add_term(e, Rational(rng.in_range(-3, 3)));
            }
            return f;
        };
        const Poly a_part = random_head_poly(degree);
        const Poly b_part = random_head_poly(degree - 1);
        if (b_part.is_zero()) continue;

        Poly planted(ctx);
        for (const auto& [e, c] : a_part.terms()) {
            ExpVec full(e);
            full.push_back(0);
            planted.add_term(std::move(full), c);
        }
        for (const auto& [e, c] : b_part.terms()) {
            ExpVec full(e);
            full.push_back(1);
            planted.add_term(std::move(full), c);
        }
        if (planted.is_zero()) continue;

        const auto order = monomials_up_to_degree(nvars, degree);
        std::vector<std::vector<Rational>> points;
        const std::size_t wanted = order.size() + 5;
        int attempts = 0;
        while (points.size() < wanted && attempts < 10000) {
            ++attempts;
            std::vector<Rational> head;
            for (int v = 0; v + 1 < nvars; ++v) head.push_back(small_rational(rng));
            const Rational b_val = poly_eval(b_part, head);
            if (b_val.is_zero()) continue;
            const Rational a_val = poly_eval(a_part, head);
            std::vector<Rational> pt = head;
            pt.push_back(-a_val / b_val);
            points.push_back(std::move(pt));
        }
        REQUIRE(points.size() == wanted);
        REQUIRE(check_equation_vanishes(planted, points).is_equation);

        const EquationSearchResult result = find_equations(points, degree);
        RationalMatrix basis_rows;
        for (const auto& f : result.basis) basis_rows.push_back(coefficients_of(f, order));
        REQUIRE(in_span(coefficients_of(planted, order), basis_rows));
        ++instances;
    }
}

TEST_CASE("hitting checks against tiny generator maps", "[equations]")
{
    const PolyMap generator = symbolic_generator(rs_design(2, 1), PrefixPermanent{2});
    const ContextPtr xc = indexed_context("x", 2);
    const Poly diff = Poly::variable(xc, 0) - Poly::variable(xc, 1);

    const HittingReport hit = hitting_check(diff, generator);
    CHECK(hit.hits);
    CHECK(hit.exact);

    const ContextPtr wc = make_context({"w"});
    const Poly w = Poly::variable(wc, 0);
    const PolyMap degenerate(std::vector<Poly>{w, w});
    const HittingReport miss = hitting_check(diff, degenerate);
    CHECK_FALSE(miss.hits);
    CHECK(miss.exact);

    const Poly one = Poly::constant(xc, Rational(1));
    CHECK(hitting_check(one, generator).hits);

    CHECK_THROWS_AS(hitting_check(Poly::variable(make_context({"x0"}), 0), generator), ParameterError);
}

TEST_CASE("hitting check accepts circuits as candidates", "[equations]")
{
    const PolyMap generator = symbolic_generator(rs_design(2, 1), PrefixPermanent{2});

    // x0 - x1 as a circuit: stays nonzero through (z0, z1).
    const Circuit diff({Gate::input("x0"), Gate::input("x1"), Gate::constant(Rational(-1)),
                        Gate::mul({1, 2}), Gate::add({0, 3})},
                       {4});
    const HittingReport hit = hitting_check(diff, generator);
    CHECK(hit.hits);
    CHECK(hit.exact);

    // The same circuit against a degenerate map composes to zero.
    const ContextPtr wc = make_context({"w"});
    const Poly w = Poly::variable(wc, 0);
    const PolyMap degenerate(std::vector<Poly>{w, w});
    CHECK_FALSE(hitting_check(diff, degenerate).hits);

    const Circuit two_outputs({Gate::input("x0"), Gate::input("x1")}, {0, 1});
    CHECK_THROWS_AS(hitting_check(two_outputs, generator), ParameterError);
    const Circuit wrong_arity({Gate::input("x0")}, {0});
    CHECK_THROWS_AS(hitting_check(wrong_arity, generator), ParameterError);
}

TEST_CASE("hitting check falls back to the probabilistic route under a tiny cap", "[equations]")
{
    const PolyMap generator = symbolic_generator(rs_design(5, 2), PrefixPermanent{5});
    const ContextPtr xc = indexed_context("x", generator.size());
    Poly f(xc);
    // A product of several entries exceeds a 3-term cap immediately.
    f.add_term({2, 2, 2, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
               Rational(1));
    const HittingReport report = hitting_check(f, generator, 3, 20, 7);
    CHECK(report.hits);
    CHECK_FALSE(report.exact);
}

TEST_CASE("generator image admits no small equation, but a degenerate one does", "[equations]")
{
    // Image of the coefficient-vector map for the smallest construction.
    const GeneratorPolynomial g = truncate_generator(build_generator_polynomial(1, 1, 2), 1);
    const PolyMap generator = as_poly_map(coefficient_vector(g, 1));

    Rng rng(4242);
    std::vector<std::vector<Rational>> points;
    const std::size_t wanted = monomials_up_to_degree(2, 2).size() + 5; // C(4,2)+5 = 11
    for (std::size_t s = 0; s < wanted; ++s) {
        std::vector<Rational> z;
        for (std::size_t i = 0; i < generator.context()->size(); ++i) z.push_back(small_rational(rng));
        std::vector<Rational> pt;
        for (const auto& entry : generator.entries) pt.push_back(poly_eval(entry, z));
        points.push_back(std::move(pt));
    }
    CHECK(find_equations(points, 2).basis.empty());

    // Duplicating one entry plants the linear equation x0 - x1.
    const PolyMap degenerate(std::vector<Poly>{generator.entries[0], generator.entries[0]});
    std::vector<std::vector<Rational>> deg_points;
    for (std::size_t s = 0; s < wanted; ++s) {
        std::vector<Rational> z;
        for (std::size_t i = 0; i < degenerate.context()->size(); ++i) z.push_back(small_rational(rng));
        std::vector<Rational> pt;
        for (const auto& entry : degenerate.entries) pt.push_back(poly_eval(entry, z));
        deg_points.push_back(std::move(pt));
    }
    const EquationSearchResult result = find_equations(deg_points, 1);
    REQUIRE(result.basis.size() == 1);
    const ContextPtr xc = indexed_context("x", 2);
    Poly expected(xc);
    expected.add_term({1, 0}, Rational(1));
    expected.add_term({0, 1}, Rational(-1));
    CHECK(result.basis[0] == expected);
}
