#pragma once

#include "gradsos/upoly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gradsos {

// Quotient and remainder of exact division with remainder: a = q*b + r,
// deg r < deg b.  pre: b != 0.
std::pair<UPoly, UPoly> euclid_div(const UPoly& a, const UPoly& b);

// gcd, normalized monic (gcd(0,0) = 0).
UPoly gcd_upoly(UPoly a, UPoly b);

// Extended gcd: returns (g, s, t) with s*a + t*b = g and g monic
// (g = 0 when a = b = 0).
struct ExtGcd {
    UPoly g, s, t;
};
ExtGcd ext_gcd(const UPoly& a, const UPoly& b);

// Exact division; throws std::invalid_argument if b does not divide a.
UPoly exact_div(const UPoly& a, const UPoly& b);

// Squarefree decomposition (Yun): h = lc * prod f_i^{e_i} with the f_i monic,
// squarefree, pairwise coprime, and e_1 < e_2 < ... listed in increasing
// multiplicity.  pre: h != 0.
struct SquarefreeFactor {
    UPoly f;
    unsigned multiplicity;
};
struct SquarefreeDecomposition {
    Rational lc;
    std::vector<SquarefreeFactor> factors;
};
SquarefreeDecomposition squarefree_decomposition(const UPoly& h);

bool is_squarefree(const UPoly& h);

// Strict bound B with every real root of h in (-B, B): 1 + max_i |a_i / lc|.
Rational root_bound(const UPoly& h);

// Number of distinct real roots of h, via a Sturm chain on the squarefree
// part.  With an interval (a, b], counts distinct real roots there (half-open
// semantics: a root exactly at `a` is not counted, one at `b` is).
// Without an interval, counts over the whole real line.  pre: h != 0.
int count_real_roots(const UPoly& h);
int count_real_roots(const UPoly& h, const Rational& a, const Rational& b);

// Exact test for h(x) >= 0 for all real x.  Decides via the sign of the
// leading coefficient, parity of the degree, and realness of the roots of
// the odd-multiplicity squarefree factors.  h = 0 counts as nonnegative.
bool is_nonnegative_on_R(const UPoly& h);

}  // namespace gradsos
