#include "gradsos/rational.hpp"

namespace gradsos {

unsigned bitlen(const Int& z) {
    if (z == 0) return 1;
    return static_cast<unsigned>(mpz_sizeinbase(z.backend().data(), 2));
}

unsigned height(const Rational& q) {
    if (q == 0) return 1;
    return bitlen(numerator(q)) + bitlen(denominator(q));
}

std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

}  // namespace gradsos
