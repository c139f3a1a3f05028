#pragma once

#include <stdexcept>
#include <string>

namespace gradsos {

// Base class for all conditions this library reports deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (polynomials, certificate files, input files).
struct ParseError : Error {
    std::size_t offset;  // byte offset into the offending text
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

// Structural hypothesis of the certification pipelines is violated:
// gradient ideal not zero-dimensional, not radical, unit ideal, or no
// separating linear form within the search bound.
struct HypothesisViolated : Error {
    using Error::Error;
};

// A univariate input to the weighted-SOS decomposer is provably negative
// somewhere on the real line.
struct NotNonnegative : Error {
    using Error::Error;
};

// The restriction of the input to its critical points / critical curve is
// provably negative, refuting global nonnegativity.
struct NotNonnegativeOnCriticalCurve : Error {
    using Error::Error;
};

// The numeric kernel ran out of retry budget without producing an exact
// certificate (and without finding a refutation witness).
struct PrecisionExhausted : Error {
    using Error::Error;
};

}  // namespace gradsos
