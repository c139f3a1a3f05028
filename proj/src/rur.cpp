#include "gradsos/rur.hpp"

#include "gradsos/errors.hpp"
#include "gradsos/univar.hpp"

#include <stdexcept>

namespace gradsos {

RationalParam shape_to_param(const ShapeBasis& sb) {
    if (sb.w.is_zero() || sb.w.lc() != 1)
        throw std::invalid_argument("shape basis must have a monic w");
    RationalParam rp;
    rp.nvars = sb.nvars;
    rp.w = sb.w;
    rp.lambda_j = 0;
    UPoly wp = sb.w.derivative();
    // kappa_1 = t*w' mod w enforces the separating-form condition by
    // construction; kappa_i twists v_i by w'.
    rp.kappa.push_back(euclid_div(UPoly::monomial(1) * wp, sb.w).second);
    for (const auto& vi : sb.v) rp.kappa.push_back(euclid_div(vi * wp, sb.w).second);
    return rp;
}

ShapeBasis param_to_shape(const RationalParam& rp) {
    if (rp.lambda_j != 0)
        throw std::invalid_argument("param_to_shape expects the x1-separating form (lambda_j = 0)");
    if (rp.w.is_zero() || rp.w.lc() != 1)
        throw std::invalid_argument("parametrization must have a monic w");
    if (rp.kappa.size() != rp.nvars)
        throw std::invalid_argument("parametrization must carry one kappa per variable");
    UPoly wp = rp.w.derivative();
    auto [g, a, b] = ext_gcd(rp.w, wp);
    if (g.degree() != 0)
        throw std::invalid_argument("w must be squarefree (the variety must be radical)");
    // b inverts w' modulo w; untwist each coordinate
    ShapeBasis sb;
    sb.nvars = rp.nvars;
    sb.w = rp.w;
    for (std::size_t i = 1; i < rp.kappa.size(); ++i)
        sb.v.push_back(euclid_div(b * rp.kappa[i], rp.w).second);
    return sb;
}

RationalParam param_of_gradient_variety(const MPoly& f) {
    GradientShape gs = shape_of_gradient_ideal(f);
    if (!is_radical_shape(gs.sb))
        throw HypothesisViolated(
            "gradient ideal is not radical: the shape polynomial has a repeated factor");
    RationalParam rp = shape_to_param(gs.sb);
    if (gs.cov) {
        // move the parametrization back to the original coordinates:
        // x1 = y1 - j*y2 - ... - j^(n-1)*yn, x_i = y_i
        unsigned j = gs.cov->j;
        rp.lambda_j = j;
        Rational jp(1);
        UPoly k1 = rp.kappa[0];
        for (std::size_t i = 1; i < rp.kappa.size(); ++i) {
            jp *= Rational(static_cast<long>(j));
            k1 -= rp.kappa[i].scaled(jp);
        }
        rp.kappa[0] = euclid_div(k1, rp.w).second;
    }
    return rp;
}

}  // namespace gradsos
