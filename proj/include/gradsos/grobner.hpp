#pragma once

#include "gradsos/mpoly.hpp"
#include "gradsos/upoly.hpp"

#include <optional>
#include <vector>

namespace gradsos {

// Lex Groebner basis [w(x1), x2 - v2(x1), ..., xn - vn(x1)] of a
// zero-dimensional radical-candidate ideal in shape position for the
// variable order x1 < x2 < ... < xn.  deg v_i < deg w; w monic.
struct ShapeBasis {
    UPoly w;
    std::vector<UPoly> v;  // v[i] is v_{i+2}
    unsigned nvars = 1;

    unsigned delta() const { return static_cast<unsigned>(w.degree()); }
};

// x = T y <-> y1 = x1 + j*x2 + ... + j^(n-1)*xn, y_i = x_i (i >= 2).
struct ChangeOfVariables {
    unsigned j = 1;
    unsigned nvars = 2;
};

// The n partial derivatives of f.
std::vector<MPoly> gradient_ideal(const MPoly& f);

// Reduced lex Groebner basis (x1 < ... < xn), deterministic output order
// (increasing leading term).  Returns [1] for the unit ideal.
std::vector<MPoly> buchberger_lex(const std::vector<MPoly>& gens);

// Full normal form of p modulo a (Groebner) basis under lex.
MPoly normal_form(const MPoly& p, const std::vector<MPoly>& gb);

// True iff for every variable some leading term is a pure power of it.
bool is_zero_dimensional(const std::vector<MPoly>& gb);

// Vector-space dimension of the quotient ring (number of standard
// monomials).  pre: is_zero_dimensional(gb).
unsigned quotient_dimension(const std::vector<MPoly>& gb);

// Recognize a reduced lex basis in shape position; nullopt signals the
// caller to fall back to a change of variables.
std::optional<ShapeBasis> to_shape_basis(const std::vector<MPoly>& gb);

// The shape basis describes a radical ideal iff w is squarefree.
bool is_radical_shape(const ShapeBasis& sb);

// inverse = false: f(T x) (substitutes x1 + j*x2 + ... for x1);
// inverse = true:  f(T^-1 x) (substitutes x1 - j*x2 - ... for x1).
MPoly apply_change_of_variables(const MPoly& f, const ChangeOfVariables& T, bool inverse);

// Smallest j in 1 .. (n-1)*delta*(delta-1)/2 for which the gradient ideal
// of f(T^-1 x) is in shape position.  Throws HypothesisViolated if no j in
// the bound works.
ChangeOfVariables find_separating_j(const MPoly& f, unsigned delta);

// Shared front half of the certification pipelines: Groebner basis of the
// gradient ideal, shape recognition, and the Case-2 fallback.
struct GradientShape {
    std::vector<MPoly> gb;  // basis for the working frame
    ShapeBasis sb;
    std::optional<ChangeOfVariables> cov;  // engaged when f needed a change of frame
    MPoly work;                            // f itself, or f(T^-1 x) when cov is set
};
GradientShape shape_of_gradient_ideal(const MPoly& f);

}  // namespace gradsos
