#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradsos/eliminate.hpp"

#include <random>

using namespace gradsos;

namespace {

UPoly up(const std::string& s) { return parse_poly(s, 1).to_upoly(1); }

// The defining reconstruction: with K = r_pow,
//   a0^K * g == sum_i Phi_i * a0^(K - e_i - 1) * (a0*x_i - a_i) + R * x1-free tail.
void check_reconstruction(const MPoly& g, const UPoly& a0, const std::vector<UPoly>& a,
                          const Elimination& el) {
    unsigned n = g.nvars();
    const bool unit_den = a0.degree() == 0 && a0.lc() == 1;
    MPoly A0 = MPoly::from_upoly(a0, 1, n);
    MPoly lhs = g * A0.pow(el.r_pow);
    MPoly rhs = MPoly::from_upoly(el.r_num, 1, n);
    for (unsigned i = 2; i <= n; ++i) {
        const FracPoly& fp = el.phi[i - 2];
        if (fp.num.is_zero()) continue;
        MPoly lin = A0 * MPoly::variable(i, n) - MPoly::from_upoly(a[i - 2], 1, n);
        unsigned scale = 0;
        if (!unit_den) {
            REQUIRE(el.r_pow >= fp.a0_pow + 1);
            scale = el.r_pow - fp.a0_pow - 1;
        }
        rhs += fp.num * A0.pow(scale) * lin;
    }
    CHECK(lhs == rhs);
    // remainder must be free of x2..xn
    for (unsigned i = 2; i <= n; ++i) CHECK(MPoly::from_upoly(el.r_num, 1, n).degree_in(i) == 0);
}

MPoly random_mpoly(std::mt19937_64& rng, unsigned n, unsigned maxdeg, unsigned terms) {
    MPoly f(n);
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m = Monomial::one(n);
        unsigned budget = maxdeg;
        for (unsigned i = 0; i < n; ++i) {
            m.e[i] = rng() % (budget + 1);
            budget -= m.e[i];
        }
        f.add_term(m, Rational(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 3) + 1));
    }
    return f;
}

UPoly random_upoly(std::mt19937_64& rng, unsigned maxdeg, bool nonzero) {
    std::vector<Rational> c(1 + rng() % (maxdeg + 1));
    for (auto& x : c) x = Rational(static_cast<long>(rng() % 9) - 4);
    UPoly p(c);
    if (nonzero && p.is_zero()) p = UPoly(Rational(2));
    return p;
}

}  // namespace

TEST_CASE("unit denominator is plain substitution") {
    MPoly g = parse_poly("x1*x2^2 + x3 - 5", 3);
    std::vector<UPoly> a{up("x1 + 1"), up("2*x1")};
    Elimination el = eliminate(g, up("1"), a);
    CHECK(el.r_pow == 0);
    // g(x1, x1+1, 2x1) = x1(x1+1)^2 + 2x1 - 5
    CHECK(el.r_num == up("x1^3 + 2*x1^2 + 3*x1 - 5"));
    check_reconstruction(g, up("1"), a, el);
}

TEST_CASE("single-variable input passes through untouched") {
    MPoly g = parse_poly("x1^4 - 3*x1", 1);
    Elimination el = eliminate(g, up("x1"), {});
    CHECK(el.phi.empty());
    CHECK(el.r_pow == 0);
    CHECK(el.r_num == up("x1^4 - 3*x1"));
}

TEST_CASE("worked fraction example") {
    // g = x2^2, substitute x2 <- a/a0: r = a^2/a0^2, phi = (x2 + a/a0)
    MPoly g = parse_poly("x2^2", 2);
    UPoly a0 = up("x1"), a2 = up("x1 + 1");
    Elimination el = eliminate(g, a0, {a2});
    CHECK(el.r_pow == 2);
    CHECK(el.r_num == up("x1^2 + 2*x1 + 1"));
    // phi = (a0*x2 + a) / a0:  num = x1*x2 + x1 + 1, e = 1
    CHECK(el.phi[0].a0_pow == 1);
    CHECK(el.phi[0].num == parse_poly("x1*x2 + x1 + 1", 2));
    check_reconstruction(g, a0, {a2}, el);
}

TEST_CASE("missing variables produce zero cofactors") {
    MPoly g = parse_poly("x1^2 + x3", 3);
    Elimination el = eliminate(g, up("x1 - 2"), {up("7"), up("x1")});
    CHECK(el.phi[0].num.is_zero());
    CHECK_FALSE(el.phi[1].num.is_zero());
    check_reconstruction(g, up("x1 - 2"), {up("7"), up("x1")}, el);
}

TEST_CASE("randomized reconstruction, fraction-free invariant") {
    std::mt19937_64 rng(61);
    int done = 0;
    while (done < 200) {
        unsigned n = 2 + rng() % 3;
        MPoly g = random_mpoly(rng, n, 6, 5);
        if (g.is_zero()) continue;
        UPoly a0 = random_upoly(rng, 2, true);
        std::vector<UPoly> a;
        for (unsigned i = 2; i <= n; ++i) a.push_back(random_upoly(rng, 3, false));
        Elimination el = eliminate(g, a0, a);
        check_reconstruction(g, a0, a, el);
        ++done;
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(eliminate(parse_poly("x1", 2), UPoly(), {up("1")}), std::invalid_argument);
    CHECK_THROWS_AS(eliminate(parse_poly("x1", 2), up("1"), {}), std::invalid_argument);
}
