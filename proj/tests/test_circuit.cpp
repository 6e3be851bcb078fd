#include <catch2/catch_amalgamated.hpp>

#include <kigen/circuit.hpp>
#include <kigen/json_io.hpp>
#include <kigen/rng.hpp>

#include <map>
#include <vector>

using namespace kigen;
using Poly = SparsePoly<Rational>;

namespace {

Circuit x_plus_one_times_x()
{
    // gates: x, 1, add(x,1), mul(add, x)
    return Circuit({Gate::input("x"), Gate::constant(Rational(1)), Gate::add({0, 1}), Gate::mul({2, 0})}, {3});
}

Circuit x_minus_x()
{
    // x - x via coefficient gates 1 and -1.
    return Circuit({Gate::input("x"), Gate::constant(Rational(1)), Gate::constant(Rational(-1)),
                    Gate::mul({0, 1}), Gate::mul({0, 2}), Gate::add({3, 4})},
                   {5});
}

} // namespace

TEST_CASE("circuit evaluation", "[circuit]")
{
    const std::map<std::string, Rational> at3{{"x", Rational(3)}};
    CHECK(circuit_eval(x_plus_one_times_x(), at3) == std::vector<Rational>{Rational(12)});

    for (long v : {-5L, 0L, 7L}) {
        const std::map<std::string, Rational> a{{"x", Rational(v)}};
        CHECK(circuit_eval(x_minus_x(), a) == std::vector<Rational>{Rational(0)});
    }

    const Circuit consts({Gate::constant(Rational(2)), Gate::constant(Rational(3)), Gate::mul({0, 1})}, {2});
    CHECK(circuit_eval(consts, {}) == std::vector<Rational>{Rational(6)});

    CHECK_THROWS_AS(circuit_eval(x_plus_one_times_x(), std::map<std::string, Rational>{}), ParameterError);
}

TEST_CASE("circuit size counts every node", "[circuit]")
{
    CHECK(circuit_size(Circuit({Gate::input("x")}, {0})) == 1);
    CHECK(circuit_size(x_plus_one_times_x()) == 4);

    // Disjoint union of two copies, both outputs kept.
    const Circuit c = x_plus_one_times_x();
    std::vector<Gate> gates = c.gates();
    for (const Gate& g : c.gates()) {
        Gate copy = g;
        for (auto& a : copy.args) a += c.size();
        gates.push_back(std::move(copy));
    }
    const Circuit doubled(std::move(gates), {3, 7});
    CHECK(circuit_size(doubled) == 2 * c.size());
    const std::map<std::string, Rational> at2{{"x", Rational(2)}};
    CHECK(circuit_eval(doubled, at2) == std::vector<Rational>{Rational(6), Rational(6)});
}

TEST_CASE("circuit validation", "[circuit]")
{
    CHECK_THROWS_AS(Circuit({Gate::input("x"), Gate::add({1, 0})}, {1}), ParameterError); // forward ref
    CHECK_THROWS_AS(Circuit({Gate::input("x")}, {}), ParameterError);                     // no outputs
    CHECK_THROWS_AS(Circuit({Gate::input("x")}, {4}), ParameterError);                    // bad output
    CHECK_THROWS_AS(Circuit({Gate::add({})}, {0}), ParameterError);                       // no children
}

TEST_CASE("random circuits are deterministic in the seed", "[circuit]")
{
    const Circuit a = random_circuit(7, 2, 5);
    const Circuit b = random_circuit(7, 2, 5);
    CHECK(to_json(a) == to_json(b));
    CHECK(circuit_size(a) == 5);

    // A different seed may differ; the contract is only determinism per seed.
    const Circuit c = random_circuit(8, 2, 5);
    CHECK(circuit_size(c) == 5);

    CHECK_THROWS_AS(random_circuit(1, 3, 2), ParameterError);
    CHECK_THROWS_AS(random_circuit(1, 0, 2), ParameterError);
}

TEST_CASE("random circuits reference every input when the budget allows", "[circuit]")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Circuit c = random_circuit(seed, 3, 9);
        std::vector<bool> referenced(c.size(), false);
        for (const Gate& g : c.gates()) {
            for (std::size_t a : g.args) referenced[a] = true;
        }
        for (std::size_t i = 0; i < 3; ++i) CHECK(referenced[i]);
        CHECK(circuit_size(c) == 9);
    }
}

TEST_CASE("probabilistic nonzeroness is one-sided", "[circuit]")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        CHECK_FALSE(is_nonzero_probabilistic(x_minus_x(), 101, 5, seed));
    }

    const Circuit x_plus_one({Gate::input("x"), Gate::constant(Rational(1)), Gate::add({0, 1})}, {2});
    CHECK(is_nonzero_probabilistic(x_plus_one, 101, 20, 1));

    const Circuit five({Gate::constant(Rational(5))}, {0});
    CHECK(is_nonzero_probabilistic(five, 7, 1, 1));

    CHECK_THROWS_AS(is_nonzero_probabilistic(five, 7, 0, 1), ParameterError);
}

TEST_CASE("probabilistic test never claims a zero circuit nonzero", "[circuit]")
{
    Rng rng(3);
    int zero_expansions = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Circuit c = random_circuit(seed, 2, 7);
        const auto polys = expand_to_polys(c);
        if (!polys[0].is_zero()) continue;
        ++zero_expansions;
        CHECK_FALSE(is_nonzero_probabilistic(c, 101, 10, rng.next_u64()));
    }
    INFO("zero expansions seen: " << zero_expansions);
    CHECK_FALSE(is_nonzero_probabilistic(x_minus_x(), 13, 50, 99));
}

TEST_CASE("expansion agrees with direct evaluation up to size 12", "[circuit]")
{
    Rng rng(17);
    for (std::size_t size = 2; size <= 12; ++size) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const std::size_t nvars = 1 + seed % std::min<std::size_t>(size, 3);
            const Circuit c = random_circuit(seed * 31 + size, nvars, size);
            const auto polys = expand_to_polys(c);
            std::map<std::string, Rational> assignment;
            std::vector<Rational> point;
            for (const auto& label : c.input_labels()) {
                const Rational v(rng.in_range(-5, 5), rng.in_range(1, 4));
                assignment.emplace(label, v);
            }
            const ContextPtr ctx = make_context(c.input_labels());
            for (std::size_t i = 0; i < ctx->size(); ++i) point.push_back(assignment.at(ctx->label(i)));
            const auto direct = circuit_eval(c, assignment);
            for (std::size_t o = 0; o < polys.size(); ++o) {
                CHECK(poly_eval(polys[o], point) == direct[o]);
            }
        }
    }
}

TEST_CASE("syntactic degree bounds", "[circuit]")
{
    CHECK(syntactic_degree(x_plus_one_times_x()) == 2);
    CHECK(syntactic_degree(x_minus_x()) == 1);
    CHECK(syntactic_degree(Circuit({Gate::constant(Rational(9))}, {0})) == 0);
}

TEST_CASE("circuit from polynomial and composition", "[circuit]")
{
    const ContextPtr xc = make_context({"x0", "x1"});
    Poly f(xc);
    f.add_term({2, 0}, Rational(1));
    f.add_term({0, 1}, Rational(-3)); // x0^2 - 3 x1

    const Circuit c = circuit_from_poly(f);
    const std::map<std::string, Rational> a{{"x0", Rational(2)}, {"x1", Rational(5)}};
    CHECK(circuit_eval(c, a) == std::vector<Rational>{Rational(-11)});

    // Compose with the map (z0+z1, z0*z1).
    const ContextPtr zc = make_context({"z0", "z1"});
    const Poly z0 = Poly::variable(zc, 0);
    const Poly z1 = Poly::variable(zc, 1);
    const PolyMap images(std::vector<Poly>{z0 + z1, z0 * z1});
    const Circuit composed = compose_circuit(c, images);
    const std::map<std::string, Rational> za{{"z0", Rational(1)}, {"z1", Rational(4)}};
    // (1+4)^2 - 3*4 = 13
    CHECK(circuit_eval(composed, za) == std::vector<Rational>{Rational(13)});

    const auto expanded = expand_to_polys(composed, zc);
    CHECK(expanded[0] == poly_substitute(f, images.entries));
}
