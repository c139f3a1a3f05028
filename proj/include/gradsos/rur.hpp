#pragma once

#include "gradsos/grobner.hpp"

namespace gradsos {

// Rational univariate representation of a finite variety:
//   V = { (kappa_1(t), ..., kappa_n(t)) / w'(t)  :  w(t) = 0 },
// with w monic squarefree, deg kappa_i < deg w, and the separating linear
// form lambda (x1 when lambda_j = 0, else x1 + j*x2 + ... + j^(n-1)*xn)
// satisfying lambda(kappa_1, ..., kappa_n) = t * w'(t) mod w.
struct RationalParam {
    UPoly w;
    std::vector<UPoly> kappa;  // kappa[i] is kappa_{i+1}, one per variable
    unsigned lambda_j = 0;
    unsigned nvars = 1;
};

// Shape basis -> parametrization with lambda = x1:
//   kappa_1 = t*w' mod w,  kappa_i = v_i*w' mod w.
RationalParam shape_to_param(const ShapeBasis& sb);

// Parametrization -> shape basis, inverting the w' twist with a Bezout
// identity for gcd(w, w') = 1.  pre: lambda_j = 0, w squarefree.
ShapeBasis param_to_shape(const RationalParam& rp);

// Full route: Groebner basis of the gradient ideal, shape position (with
// the Case-2 change of variables when needed), radicality check, and the
// parametrization of the critical points of f in the original coordinates.
RationalParam param_of_gradient_variety(const MPoly& f);

}  // namespace gradsos
