#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradsos/errors.hpp"
#include "gradsos/mpoly.hpp"
#include "gradsos/rational.hpp"
#include "gradsos/upoly.hpp"

#include <random>

using namespace gradsos;

TEST_CASE("height of rationals") {
    CHECK(height(Rational(3)) == 3);
    CHECK(height(Rational(0)) == 1);
    CHECK(height(Rational(5, 8)) == 7);
    CHECK(height(Rational(1)) == 2);
    CHECK(height(Rational(-3)) == 3);
    CHECK(height(Rational(-5, 8)) == 7);
    // canonicalization before measuring
    CHECK(height(Rational(10, 16)) == 7);
    CHECK(height(Rational(1024)) == 12);
}

TEST_CASE("bitlen") {
    CHECK(bitlen(Int(0)) == 1);
    CHECK(bitlen(Int(1)) == 1);
    CHECK(bitlen(Int(2)) == 2);
    CHECK(bitlen(Int(-8)) == 4);
    CHECK(bitlen(Int(255)) == 8);
    CHECK(bitlen(Int(256)) == 9);
}

TEST_CASE("upoly basics") {
    UPoly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    UPoly p(std::vector<Rational>{Rational(1), Rational(0), Rational(-2)});  // -2x^2 + 1
    CHECK(p.degree() == 2);
    CHECK(p.lc() == -2);
    CHECK(p.eval(Rational(3)) == Rational(-17));
    CHECK((p * p).degree() == 4);
    CHECK(p - p == UPoly());
    CHECK(p.derivative() == UPoly(std::vector<Rational>{Rational(0), Rational(-4)}));
    CHECK(p.monic().lc() == 1);
    UPoly x = UPoly::monomial(1);
    CHECK(p.compose(x + UPoly(Rational(1))).eval(Rational(2)) == p.eval(Rational(3)));
    CHECK(height(p) == 3);
    CHECK(height(UPoly()) == 1);
}

TEST_CASE("upoly ring identities, randomized") {
    std::mt19937_64 rng(7);
    auto rnd = [&](int maxdeg) {
        std::vector<Rational> c;
        int d = static_cast<int>(rng() % (maxdeg + 1));
        for (int i = 0; i <= d; ++i)
            c.emplace_back(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 4) + 1);
        return UPoly(c);
    };
    for (int it = 0; it < 200; ++it) {
        UPoly a = rnd(6), b = rnd(6), c = rnd(6);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - b) + b == a);
        Rational x(static_cast<long>(rng() % 11) - 5, 3);
        CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
        CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    }
}

TEST_CASE("mpoly arithmetic and calculus") {
    unsigned n = 3;
    MPoly x1 = MPoly::variable(1, n), x2 = MPoly::variable(2, n), x3 = MPoly::variable(3, n);
    MPoly f = x1 * x1 * x2 + x3.pow(3) - MPoly::constant(Rational(4), n);
    CHECK(f.total_degree() == 3);
    CHECK(f.degree_in(1) == 2);
    CHECK(f.degree_in(3) == 3);
    CHECK(f.partial_derivative(1) == x1 * x2.scaled(Rational(2)));
    CHECK(f.partial_derivative(3) == x3 * x3.scaled(Rational(3)));
    CHECK(f.eval({Rational(1), Rational(2), Rational(-1)}) == Rational(-3));
    MPoly g = f.substituted(2, x3 + x1);
    CHECK(g.eval({Rational(1), Rational(99), Rational(2)}) ==
          f.eval({Rational(1), Rational(3), Rational(2)}));
    CHECK((f - f).is_zero());
    CHECK(f.pow(2) == f * f);
}

TEST_CASE("mpoly/upoly conversions") {
    UPoly p(std::vector<Rational>{Rational(1, 2), Rational(0), Rational(3)});
    MPoly m = MPoly::from_upoly(p, 2, 3);
    CHECK(m.degree_in(2) == 2);
    CHECK(m.to_upoly(2) == p);
    CHECK_THROWS_AS(m.to_upoly(1), std::invalid_argument);
    auto cs = MPoly::from_upoly(p, 1, 2).coeffs_in(1);
    CHECK(cs.size() == 3);
    CHECK(cs[0] == MPoly::constant(Rational(1, 2), 2));
}

TEST_CASE("parser accepts the shared syntax") {
    MPoly f = parse_poly("2*x1^4 + 2*x1*x2 + x2^2 + 10", 2);
    MPoly x1 = MPoly::variable(1, 2), x2 = MPoly::variable(2, 2);
    CHECK(f == x1.pow(4).scaled(Rational(2)) + (x1 * x2).scaled(Rational(2)) + x2.pow(2) +
                   MPoly::constant(Rational(10), 2));
    CHECK(parse_poly("x1^3 - 1/4*x1", 1) ==
          MPoly::variable(1, 1).pow(3) - MPoly::variable(1, 1).scaled(Rational(1, 4)));
    CHECK(parse_poly("-x1 + x1", 1).is_zero());
    CHECK(parse_poly("0", 1).is_zero());
    CHECK(parse_poly("  7/2  ", 4) == MPoly::constant(Rational(7, 2), 4));
    CHECK(parse_poly("x1*x1*x1", 1) == MPoly::variable(1, 1).pow(3));
    CHECK(parse_poly("3*x2*x1^2", 2) ==
          (MPoly::variable(1, 2).pow(2) * MPoly::variable(2, 2)).scaled(Rational(3)));
}

TEST_CASE("parser rejects malformed input with a byte offset") {
    CHECK_THROWS_AS(parse_poly("x3", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("x0", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("2x1", 2), ParseError);       // '*' required
    CHECK_THROWS_AS(parse_poly("x1 + ", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("x1 * * x2", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("x1 & x2", 2), ParseError);
    try {
        parse_poly("x1 + x9", 3);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.offset >= 5);
    }
}

TEST_CASE("print/parse round trip is the identity") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        unsigned n = 1 + rng() % 4;
        MPoly f(n);
        unsigned terms = rng() % 6;
        for (unsigned t = 0; t < terms; ++t) {
            Monomial m = Monomial::one(n);
            for (unsigned i = 0; i < n; ++i) m.e[i] = rng() % 4;
            f.add_term(m, Rational(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 5) + 1));
        }
        CHECK(parse_poly(to_string(f), n) == f);
    }
    // printing is deterministic and graded
    MPoly f = parse_poly("x2^2 + 10 + 2*x1^4 + 2*x1*x2", 2);
    CHECK(to_string(f) == "2*x1^4 + 2*x1*x2 + x2^2 + 10");
    CHECK(to_string(parse_poly("x1^3 - 1/4*x1", 1)) == "x1^3 - 1/4*x1");
    CHECK(to_string(MPoly(2)) == "0");
}

TEST_CASE("polynomial heights") {
    CHECK(height(parse_poly("2*x1^4 + 2*x1*x2 + x2^2 + 10", 2)) == 5);  // height(10) = 5
    CHECK(height(parse_poly("x1 + 5/8*x2", 2)) == 7);
    CHECK(height(MPoly(2)) == 1);
}
