#include <catch2/catch_amalgamated.hpp>

#include <kigen/json_io.hpp>

#include <vector>

using namespace kigen;
using Poly = SparsePoly<Rational>;

TEST_CASE("polynomial JSON shape and term order", "[json]")
{
    const ContextPtr ctx = make_context({"x", "y"});
    Poly f(ctx);
    f.add_term({0, 2}, Rational(1));
    f.add_term({1, 0}, Rational(-1, 2));
    f.add_term({0, 0}, Rational(3));

    const Json j = to_json(f);
    CHECK(j.at("vars") == Json::array({"x", "y"}));
    REQUIRE(j.at("terms").size() == 3);
    // Graded-lex: constant, then x, then y^2.
    CHECK(j.at("terms")[0].at("exp") == Json::array({0, 0}));
    CHECK(j.at("terms")[0].at("coeff") == "3");
    CHECK(j.at("terms")[1].at("exp") == Json::array({1, 0}));
    CHECK(j.at("terms")[1].at("coeff") == "-1/2");
    CHECK(j.at("terms")[2].at("exp") == Json::array({0, 2}));

    CHECK(poly_from_json(j) == f);
}

TEST_CASE("polynomial JSON round trip on random instances", "[json]")
{
    Rng rng(77);
    const ContextPtr ctx = make_context({"a", "b", "c"});
    for (int trial = 0; trial < 25; ++trial) {
        Poly f(ctx);
        for (int t = 0; t < 6; ++t) {
            ExpVec e{static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4)),
                     static_cast<int>(rng.below(4))};
            f.add_term(std::move(e), Rational(rng.in_range(-6, 6), rng.in_range(1, 6)));
        }
        CHECK(poly_from_json(to_json(f)) == f);
    }
}

TEST_CASE("design JSON uses the ell/m/n/sets schema", "[json]")
{
    const Design d = rs_design(3, 2);
    const Json j = to_json(d);
    CHECK(j.at("ell") == 9);
    CHECK(j.at("m") == 3);
    CHECK(j.at("n") == 2);
    CHECK(j.at("sets").size() == 9);

    const Design back = design_from_json(j);
    CHECK(back.universe_size == d.universe_size);
    CHECK(back.sets == d.sets);
}

TEST_CASE("circuit JSON round trip", "[json]")
{
    const Circuit c = random_circuit(5, 2, 7);
    const Json j = to_json(c);
    CHECK(j.at("gates").size() == 7);
    const Circuit back = circuit_from_json(j);
    CHECK(to_json(back) == j);

    Json bad = j;
    bad["gates"][0]["op"] = "div";
    CHECK_THROWS_AS(circuit_from_json(bad), ParameterError);
}

TEST_CASE("rationals serialize as num/den strings", "[json]")
{
    CHECK(to_json(Rational(5)) == "5");
    CHECK(to_json(Rational(-3, 2)) == "-3/2");
    CHECK(to_json(Rational(4, 6)) == "2/3");
}

TEST_CASE("codewords serialize as row-major bit strings", "[json]")
{
    CHECK(to_json(Codeword({1, 0, 1, 1}, 5, 2)) == "1011");
    CHECK(to_json(Codeword({0}, 2, 1)) == "0");
}

TEST_CASE("generator polynomial JSON carries y-exponents and z-polynomials", "[json]")
{
    const GeneratorPolynomial g = build_generator_polynomial(1, 1, 2);
    const Json j = to_json(g);
    CHECK(j.at("n") == 1);
    CHECK(j.at("a") == 1);
    CHECK(j.at("p") == 2);
    REQUIRE(j.at("terms").size() == 2);
    CHECK(j.at("terms")[0].at("y_exp") == Json::array({0}));
    CHECK(j.at("terms")[1].at("y_exp") == Json::array({1}));

    const auto cv = coefficient_vector(g, 1);
    const Json cj = to_json(cv);
    CHECK(cj.at("entries").size() == 2);
    CHECK(cj.at("entries")[0].at("z_poly").at("terms")[0].at("exp")[0] == 1);
}
