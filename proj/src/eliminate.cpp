#include "gradsos/eliminate.hpp"

#include <stdexcept>

namespace gradsos {

// Substitute x_i <- a_i/a0 for i = n, ..., 2 by synthetic division.  All
// arithmetic is fraction free: a stage that removes degree m in x_i scales
// the running polynomial by a0^m, so the remainder of stage i is
// r_i = R_i / a0^(sum of the m's so far).  The cofactor of (x_i - a_i/a0)
// harvested at stage i is the synthetic quotient, with the uniform
// denominator a0^(pow_before + m - 1).
Elimination eliminate(const MPoly& g, const UPoly& a0, const std::vector<UPoly>& a) {
    unsigned n = g.nvars();
    if (a.size() + 1 != n)
        throw std::invalid_argument("eliminate: need one substitution per variable beyond x1");
    if (a0.is_zero()) throw std::invalid_argument("eliminate: zero denominator");

    const bool unit_den = (a0.degree() == 0 && a0.lc() == 1);
    MPoly A0 = MPoly::from_upoly(a0, 1, n);
    std::vector<MPoly> a0pow{MPoly::constant(Rational(1), n)};  // a0^k cache
    auto a0p = [&](unsigned k) -> const MPoly& {
        while (a0pow.size() <= k) a0pow.push_back(a0pow.back() * A0);
        return a0pow[k];
    };

    Elimination out;
    out.phi.assign(n >= 1 ? n - 1 : 0, FracPoly{MPoly(n), 0});
    MPoly R = g;
    unsigned pow = 0;
    for (unsigned i = n; i >= 2; --i) {
        unsigned m = R.degree_in(i);
        if (m == 0) {
            out.phi[i - 2] = FracPoly{MPoly(n), 0};
            continue;
        }
        std::vector<MPoly> C = R.coeffs_in(i);  // C[k] multiplies x_i^k
        MPoly Ai = MPoly::from_upoly(a[i - 2], 1, n);

        // synthetic quotient: Qhat_{m-1} = C_m, Qhat_{k-1} = C_k*a0^(m-k) + Qhat_k*a_i;
        // Phi = sum_k Qhat_k * a0^k * x_i^k over the denominator a0^(pow + m - 1)
        MPoly xi = MPoly::variable(i, n);
        MPoly Qhat = C[m];
        MPoly Phi(n);
        for (unsigned k = m; k-- > 0;) {  // Qhat holds Qhat_k at the top of the body
            MPoly piece = Qhat;
            if (!unit_den && k > 0) piece *= a0p(k);
            piece *= xi.pow(k);
            Phi += piece;
            if (k > 0) Qhat = (unit_den ? C[k] : C[k] * a0p(m - k)) + Qhat * Ai;
        }
        out.phi[i - 2] = FracPoly{std::move(Phi), unit_den ? 0u : pow + m - 1};

        // Horner substitution: N = C_m; N = N*a_i + C_k*a0^(m-k)
        MPoly N = C[m];
        for (unsigned k = m; k-- > 0;) N = N * Ai + (unit_den ? C[k] : C[k] * a0p(m - k));
        R = std::move(N);
        pow += m;
    }
    out.r_num = R.to_upoly(1);
    out.r_pow = unit_den ? 0u : pow;
    return out;
}

}  // namespace gradsos
