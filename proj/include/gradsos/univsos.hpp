#pragma once

#include "gradsos/upoly.hpp"

#include <utility>
#include <vector>

namespace gradsos {

// h = sum_j c_j * q_j^2 with every c_j a positive rational.
struct WeightedSOS {
    std::vector<std::pair<Rational, UPoly>> terms;
};

// Exact weighted sum-of-squares decomposition of a nonnegative univariate
// polynomial.  deg q_j <= deg(h)/2 for every term.
//
// Throws NotNonnegative when h is provably negative somewhere on R (the
// proof is either structural, a Sturm-chain test, or an exact rational
// witness), and PrecisionExhausted when the numeric search runs out of
// retry budget without an exact decomposition.
WeightedSOS weighted_sos(const UPoly& h);

// Exact check that h == sum c_j q_j^2 and every c_j > 0.
bool verify_weighted_sos(const UPoly& h, const WeightedSOS& sos);

unsigned height(const WeightedSOS& sos);  // max over weights and squares

}  // namespace gradsos
