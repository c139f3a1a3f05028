#pragma once

#include "gradsos/certify.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace gradsos {

struct BenchOptions {
    unsigned nvars = 2;
    unsigned degree = 4;        // 4 or 6
    unsigned count = 10;
    std::uint64_t seed = 0;
    std::string mode = "frac";  // "frac" or "poly"
    std::string recipe = "t1";  // "t1" or "t2" (degree-4 coefficient ranges)
    unsigned jobs = 1;
    // Wall-clock budget for the whole batch; instances not yet started when
    // it runs out are reported as "timeout" and skipped.  0 disables it.
    double timeout_sec = 0;
};

// Deterministic instance generator: instance `index` depends only on
// (nvars, degree, recipe, seed, index).  Every instance is a sum of an
// even power, squares, a cubic perturbation, and a large positive constant,
// so it is nonnegative with overwhelming margin but structurally dense.
MPoly bench_instance(const BenchOptions& opts, unsigned index);

struct BenchResult {
    unsigned index = 0;
    std::string status;  // "ok" or an error class name
    Metrics metrics;
    bool verified = false;
    double total_ms = 0;
};

// Certify + verify one instance under the options' mode.
BenchResult bench_one(const BenchOptions& opts, unsigned index);

// Run the whole batch, streaming one tab-separated row per instance plus a
// header and a summary line.  Returns a process exit code (0 = every
// instance produced a verified certificate).
int run_bench(const BenchOptions& opts, std::ostream& out);

}  // namespace gradsos
