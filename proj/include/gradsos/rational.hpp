#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace gradsos {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Bit length of an integer: floor(log2|z|) + 1, with bitlen(0) = 1.
unsigned bitlen(const Int& z);

// Height of a rational a/b in lowest terms: bitlen(a) + bitlen(b), except
// that height(0) = 1.  Integers k != 0 therefore have height bitlen(k) + 1:
// height(3) = 3, height(5/8) = 7.
unsigned height(const Rational& q);

// Decimal rendering in lowest terms, "a" or "a/b" with b > 1.
std::string to_string(const Rational& q);

inline Rational pow_rat(Rational base, unsigned e) {
    Rational r(1);
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int pow_int(Int base, unsigned e) {
    Int r(1);
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace gradsos
