#pragma once

#include "gradsos/rational.hpp"

#include <string>
#include <vector>

namespace gradsos {

// Dense univariate polynomial over Q.  Coefficient i is the coefficient of
// x^i; the top coefficient is kept nonzero (the zero polynomial has an empty
// coefficient vector and degree() == -1).
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(const Rational& c);
    explicit UPoly(std::vector<Rational> coeffs);  // trimmed on construction
    static UPoly monomial(unsigned deg, const Rational& c = Rational(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    // Coefficient access; reads beyond the degree return 0.
    const Rational& operator[](std::size_t i) const;
    void set_coeff(std::size_t i, const Rational& v);

    const Rational& lc() const;  // leading coefficient; 0 for the zero poly
    const std::vector<Rational>& coeffs() const { return c_; }

    UPoly operator-() const;
    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return c_ != o.c_; }

    UPoly scaled(const Rational& s) const;   // s * this
    UPoly monic() const;                     // this / lc (pre: nonzero)
    UPoly derivative() const;
    UPoly pow(unsigned e) const;
    UPoly shifted(unsigned k) const;         // this * x^k

    Rational eval(const Rational& x) const;  // Horner
    // this(g): substitute another polynomial for the variable.
    UPoly compose(const UPoly& g) const;

    void trim();

  private:
    std::vector<Rational> c_;
};

unsigned height(const UPoly& p);  // max coefficient height; 1 for the zero poly

// Rendering in the shared polynomial syntax, with the variable shown as
// "x<var_index>" (default x1).  parse lives with the multivariate code.
std::string to_string(const UPoly& p, unsigned var_index = 1);

}  // namespace gradsos
