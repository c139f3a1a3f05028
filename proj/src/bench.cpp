#include "gradsos/bench.hpp"

#include "gradsos/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace gradsos {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Unbiased uniform draw from [0, range); rejection keeps the mapping
// engine-exact and platform-independent.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t range) {
    std::uint64_t reject_below = (-range) % range;  // 2^64 mod range
    for (;;) {
        std::uint64_t u = rng();
        if (u >= reject_below) return u % range;
    }
}

int draw_in(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

// nonzero sets used by the instance recipes
int draw_pm1(std::mt19937_64& rng) { return draw_below(rng, 2) == 0 ? -1 : 1; }
int draw_pm12(std::mt19937_64& rng) {
    static const int vals[4] = {-2, -1, 1, 2};
    return vals[draw_below(rng, 4)];
}

// all monomials of total degree <= deg in nvars variables, descending grlex
// (the storage/printing order), fixing the coefficient draw order
std::vector<Monomial> dense_support(unsigned nvars, unsigned deg) {
    std::vector<Monomial> out;
    Monomial m = Monomial::one(nvars);
    // odometer over exponent vectors with total degree <= deg
    for (;;) {
        out.push_back(m);
        unsigned i = 0;
        for (; i < nvars; ++i) {
            if (m.total_degree() + 1 <= deg) {
                ++m.e[i];
                break;
            }
            m.e[i] = 0;
        }
        if (i == nvars) break;
    }
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return grlex_greater(a, b); });
    return out;
}

template <class Draw>
MPoly dense_poly(std::mt19937_64& rng, unsigned nvars, unsigned deg, Draw&& draw) {
    MPoly p(nvars);
    for (const Monomial& m : dense_support(nvars, deg)) {
        int c = draw(rng);
        if (c != 0) p.add_term(m, Rational(c));
    }
    return p;
}

std::string row(const BenchResult& r) {
    std::ostringstream os;
    os << r.index << '\t' << r.status << '\t' << r.metrics.delta << '\t' << r.metrics.d_h << '\t'
       << r.metrics.tau_h << '\t' << r.metrics.tau_sos << '\t' << std::fixed
       << std::setprecision(3) << r.metrics.t_h_ms << '\t' << r.metrics.t_sos_ms << '\t'
       << (r.verified ? 1 : 0) << '\t' << r.total_ms;
    return os.str();
}

}  // namespace

MPoly bench_instance(const BenchOptions& opts, unsigned index) {
    std::uint64_t state = opts.seed ^ (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1));
    std::mt19937_64 rng(splitmix64(state));
    unsigned n = opts.nvars;
    bool wide = opts.recipe == "t2" || opts.degree == 6;  // {+-1,+-2} linear part

    MPoly a = dense_poly(rng, n, 1, wide ? draw_pm12 : draw_pm1);
    MPoly f = a.pow(opts.degree);
    if (opts.degree == 4) {
        for (unsigned i = 0; i < n; ++i) {
            MPoly b = dense_poly(rng, n, 2, [](std::mt19937_64& g) { return draw_in(g, -3, 3); });
            f += b * b;
        }
    } else {
        MPoly b = dense_poly(rng, n, 3, [](std::mt19937_64& g) { return draw_in(g, -3, 3); });
        f += b * b;
    }
    MPoly c = dense_poly(rng, n, 3, [](std::mt19937_64& g) { return draw_in(g, -1, 1); });
    f += c;
    f += MPoly::constant(Rational(1000000), n);
    return f;
}

BenchResult bench_one(const BenchOptions& opts, unsigned index) {
    BenchResult r;
    r.index = index;
    auto t0 = Clock::now();
    try {
        MPoly f = bench_instance(opts, index);
        Certificate cert = opts.mode == "poly" ? Certificate{sos_shape(f)} : Certificate{sos_grad(f)};
        r.metrics = bitsize_metrics(cert);
        r.verified = verify(f, cert).pass();
        r.status = r.verified ? "ok" : "verify-failed";
    } catch (const HypothesisViolated&) {
        r.status = "hypothesis";
    } catch (const NotNonnegativeOnCriticalCurve&) {
        r.status = "refuted";
    } catch (const PrecisionExhausted&) {
        r.status = "precision";
    } catch (const std::exception&) {
        r.status = "error";
    }
    r.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return r;
}

int run_bench(const BenchOptions& opts, std::ostream& out) {
    if ((opts.degree != 4 && opts.degree != 6) || opts.nvars < 2 || opts.count < 1 ||
        (opts.mode != "poly" && opts.mode != "frac") ||
        (opts.recipe != "t1" && opts.recipe != "t2") || opts.jobs < 1 || opts.timeout_sec < 0) {
        out << "invalid benchmark parameters\n";
        return 2;
    }

    auto start = Clock::now();
    auto out_of_time = [&]() {
        if (opts.timeout_sec <= 0) return false;
        return std::chrono::duration<double>(Clock::now() - start).count() > opts.timeout_sec;
    };
    auto skipped = [](unsigned i) {
        BenchResult r;
        r.index = i;
        r.status = "timeout";
        return r;
    };

    out << "index\tstatus\tdelta\td_h\ttau_h\ttau_sos\tt_h_ms\tt_sos_ms\tverified\ttotal_ms\n";
    std::vector<BenchResult> results(opts.count);
    if (opts.jobs == 1) {
        for (unsigned i = 0; i < opts.count; ++i) {
            results[i] = out_of_time() ? skipped(i) : bench_one(opts, i);
            out << row(results[i]) << "\n";
        }
    } else {
        std::atomic<unsigned> cursor{0};
        auto worker = [&]() {
            for (;;) {
                unsigned i = cursor.fetch_add(1);
                if (i >= opts.count) return;
                results[i] = out_of_time() ? skipped(i) : bench_one(opts, i);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < opts.jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (const auto& r : results) out << row(r) << "\n";
    }

    unsigned ok = 0;
    double sd = 0, sdh = 0, sth = 0, stsos = 0, mth = 0, mtsos = 0, mtot = 0;
    for (const auto& r : results)
        if (r.verified) {
            ++ok;
            sd += r.metrics.delta;
            sdh += r.metrics.d_h;
            sth += r.metrics.tau_h;
            stsos += r.metrics.tau_sos;
            mth += r.metrics.t_h_ms;
            mtsos += r.metrics.t_sos_ms;
            mtot += r.total_ms;
        }
    out << "mean\tok=" << ok << "/" << opts.count;
    if (ok > 0) {
        out << std::fixed << std::setprecision(1) << '\t' << sd / ok << '\t' << sdh / ok << '\t'
            << sth / ok << '\t' << stsos / ok << std::setprecision(3) << '\t' << mth / ok << '\t'
            << mtsos / ok << '\t' << ok << '\t' << mtot / ok << "\n";
    } else {
        out << "\t-\t-\t-\t-\t-\t-\t0\t-\n";
    }
    return ok == opts.count ? 0 : 1;
}

}  // namespace gradsos
