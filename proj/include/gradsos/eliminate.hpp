#pragma once

#include "gradsos/mpoly.hpp"
#include "gradsos/upoly.hpp"

#include <vector>

namespace gradsos {

// num / a0(x1)^a0_pow with the denominator kept as an explicit power.
struct FracPoly {
    MPoly num;
    unsigned a0_pow = 0;
};

// Result of substituting x_i <- a_i(x1)/a0(x1) for i = n..2 into g, with the
// cofactors of the eliminated variables tracked exactly:
//
//   a0^K * g = sum_i  N_i * a0^(K - phi[i].a0_pow - 1) * (a0*x_i - a_i)  +  R * a0^(K - r_pow)
//
// where phi[i] = (N_i, e_i) denotes N_i / a0^e_i, (R, r_pow) denotes the
// remainder r = R / a0^r_pow (univariate in x1), and K = r_pow bounds every
// e_i + 1.  With a0 = 1 the remainder is plain substitution of the a_i.
struct Elimination {
    std::vector<FracPoly> phi;  // phi[i] is the cofactor of x_{i+2}
    UPoly r_num;
    unsigned r_pow = 0;
};

// pre: g has n variables, a.size() == n-1 (a[i] paired with x_{i+2}),
// a0 != 0.  Works down from x_n to x_2; the remainder depends on x1 only.
Elimination eliminate(const MPoly& g, const UPoly& a0, const std::vector<UPoly>& a);

}  // namespace gradsos
