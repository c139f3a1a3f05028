#pragma once

#include "gradsos/rational.hpp"
#include "gradsos/upoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace gradsos {

// Exponent vector; e[i] is the exponent of x_{i+1}.
struct Monomial {
    std::vector<unsigned> e;

    unsigned total_degree() const;
    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;  // pre: o divides *this
    bool operator==(const Monomial& o) const { return e == o.e; }

    static Monomial one(unsigned nvars) { return Monomial{std::vector<unsigned>(nvars, 0u)}; }
    static Monomial lcm(const Monomial& a, const Monomial& b);
};

// Graded order used for storage and printing: higher total degree first,
// ties broken by comparing exponents of x1, x2, ... with the larger first.
bool grlex_greater(const Monomial& a, const Monomial& b);

// Pure lexicographic order for the variable order x1 < x2 < ... < xn
// (xn is the most significant variable).
bool lex_greater(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

// Sparse multivariate polynomial over Q with a fixed variable count.
// Terms are kept in the graded order above, so iteration (and printing)
// is deterministic.
class MPoly {
  public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    explicit MPoly(unsigned nvars = 1) : n_(nvars) {}
    static MPoly constant(const Rational& c, unsigned nvars);
    static MPoly variable(unsigned index, unsigned nvars);  // index is 1-based
    static MPoly from_upoly(const UPoly& p, unsigned var_index, unsigned nvars);

    unsigned nvars() const { return n_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    int total_degree() const;              // -1 for the zero polynomial
    unsigned degree_in(unsigned var) const;  // var is 1-based
    const TermMap& terms() const { return t_; }
    std::size_t term_count() const { return t_.size(); }

    Rational coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Rational& c);

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    bool operator==(const MPoly& o) const { return n_ == o.n_ && t_ == o.t_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly scaled(const Rational& s) const;
    MPoly pow(unsigned e) const;
    MPoly partial_derivative(unsigned var) const;  // var is 1-based
    Rational eval(const std::vector<Rational>& point) const;

    // Substitute a polynomial for variable `var` (1-based); the result keeps
    // this polynomial's variable count (rep must have the same nvars).
    MPoly substituted(unsigned var, const MPoly& rep) const;

    // Coefficients of this polynomial viewed as univariate in `var` with
    // multivariate coefficients; entry k is the coefficient of var^k.
    std::vector<MPoly> coeffs_in(unsigned var) const;

    // Conversion to univariate; pre: no variable other than `var` occurs.
    UPoly to_upoly(unsigned var = 1) const;

  private:
    unsigned n_;
    TermMap t_;
};

unsigned height(const MPoly& p);

// ---- shared polynomial text syntax ----
//
//   expression := ['+'|'-'] term (('+'|'-') term)*
//   term       := coeff ('*' factor)* | factor ('*' factor)*
//   factor     := 'x' INDEX ('^' EXPONENT)?
//   coeff      := INT ('/' POSINT)?
//
// Whitespace is insignificant.  Variable indices run from 1 to nvars;
// anything else is rejected with the byte offset of the offender.
MPoly parse_poly(const std::string& text, unsigned nvars);
std::string to_string(const MPoly& p);

}  // namespace gradsos
