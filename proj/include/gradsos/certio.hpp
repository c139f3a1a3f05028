#pragma once

#include "gradsos/certify.hpp"

#include <iosfwd>
#include <string>

namespace gradsos {

// Problem input file: a header line "nvars = k" followed by the polynomial
// (which may span several lines).
struct ProblemInput {
    unsigned nvars = 1;
    MPoly f{1};
};
ProblemInput parse_problem(const std::string& text);

// Certificate text format.  Sections appear in a fixed order, each closed
// by END; unknown or out-of-order sections are rejected:
//
//   FIELDS   mode/nvars/degree/delta (+ cov_j when a change of variables
//            was used)
//   W        the univariate w
//   V | KAPPA  one line per entry (V for mode=poly, KAPPA for mode=frac)
//   SOS      lines "c : q"
//   PHI      mode=poly: one multiplier per line (with cov_j the first line
//            is the multiplier of w); mode=frac: lines "e : N" for N/(w')^e
//   META     algorithm name, bitsize metrics, timings
std::string write_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

}  // namespace gradsos
