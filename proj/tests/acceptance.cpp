// Acceptance gate: one PASS/FAIL line per criterion on stdout, nonzero exit
// when anything fails.  Row-level progress for the long benchmark criterion
// goes to stderr.  Optional argv: a list of criterion numbers to run.

#include "gradsos/bench.hpp"
#include "gradsos/certify.hpp"
#include "gradsos/errors.hpp"
#include "gradsos/univar.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <random>

using namespace gradsos;

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// First failure wins; later checks still run so construction bugs surface
// in the trial runs, but the reported reason stays the earliest one.
struct Criterion {
    bool ok = true;
    std::string why;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

UPoly up(std::initializer_list<Rational> asc) { return UPoly{std::vector<Rational>(asc)}; }

int rnd_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

Rational rnd_coeff(std::mt19937_64& rng, int range) {
    return Rational(rnd_int(rng, -range, range));
}

// Degree picked uniformly up to maxdeg; a zero top draw trims lower (or to
// the zero polynomial), which is exactly the kind of input we want mixed in.
UPoly rnd_upoly(std::mt19937_64& rng, unsigned maxdeg, int range = 9) {
    std::vector<Rational> c(rng() % (maxdeg + 1) + 1);
    for (auto& x : c) x = rnd_coeff(rng, range);
    return UPoly(std::move(c));
}

UPoly rnd_upoly_nonzero(std::mt19937_64& rng, unsigned maxdeg, int range = 9) {
    for (;;) {
        UPoly p = rnd_upoly(rng, maxdeg, range);
        if (!p.is_zero()) return p;
    }
}

UPoly rnd_monic(std::mt19937_64& rng, unsigned deg, int range = 5) {
    std::vector<Rational> c(deg + 1);
    for (unsigned i = 0; i < deg; ++i)
        c[i] = Rational(rnd_int(rng, -range, range), rnd_int(rng, 1, 3));
    c[deg] = 1;
    return UPoly(std::move(c));
}

MPoly rnd_mpoly(std::mt19937_64& rng, unsigned n, unsigned maxdeg, unsigned terms) {
    MPoly g(n);
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m{std::vector<unsigned>(n, 0)};
        unsigned budget = rng() % (maxdeg + 1);
        for (unsigned v = 0; v < n; ++v) {
            unsigned e = budget ? rng() % (budget + 1) : 0;
            m.e[v] = e;
            budget -= e;
        }
        Rational c = rnd_coeff(rng, 9);
        if (!c.is_zero()) g.add_term(m, c);
    }
    return g;
}

// ---------------------------------------------------------------------------
// 1. Worked two-variable quartic, pinned end to end.

Criterion c1() {
    Criterion c;
    auto t0 = Clock::now();
    MPoly f = parse_poly("2*x1^4 + 2*x1*x2 + x2^2 + 10", 2);
    PolyCertificate cert = sos_shape(f);
    double dt = secs_since(t0);

    c.require(!cert.cov.has_value(), "unexpected change of variables");
    c.require(cert.shape.w == up({Rational(0), Rational(-1, 4), Rational(0), Rational(1)}),
              "w != x1^3 - 1/4*x1");
    c.require(cert.shape.v.size() == 1 && cert.shape.v[0] == up({Rational(0), Rational(-1)}),
              "second basis element != x2 + x1");
    c.require(cert.phi.size() == 1 && cert.phi[0] == parse_poly("x1 + x2", 2),
              "multiplier of the second basis element != x1 + x2");
    c.require(cert.h == up({Rational(10), Rational(0), Rational(-1), Rational(0), Rational(2)}),
              "h != 2x1^4 - x1^2 + 10");
    c.require(cert.shape.delta() == 3, "delta != 3");
    c.require(verify(f, cert).pass(), "verifier rejected the certificate");
    c.require(dt < 1.0, "slower than 1 s");
    return c;
}

// ---------------------------------------------------------------------------
// 2. Degree-4 bivariate with an irrational SOS obstruction: the printed
// parametrization and the degree-36 restriction, matched up to the single
// scalar that relates our monic w to the published leading coefficient.
// The published values parametrize by the other variable, so the input is
// fed with its variables swapped.

Criterion c2() {
    Criterion c;
    auto t0 = Clock::now();
    MPoly F = parse_poly(
        "x2^4 + x2*x1^3 + x1^4 + 3*x2^2*x1 + 4*x2*x1^2 + 2*x2^2 - x2 - x1 + 1", 2);
    FracCertificate cert = sos_grad(F);
    double dt = secs_since(t0);

    const UPoly w_ref = up({Rational(-1), Rational(0), Rational(-4), Rational(-4), Rational(0),
                            Rational(-16), Rational(1), Rational(0), Rational(0), Rational(4)});
    const UPoly k1_ref = up({Rational(-4), Rational(-6), Rational(0), Rational(-36), Rational(-9),
                             Rational(0), Rational(-32), Rational(15)});
    const UPoly k2_ref = up({Rational(9), Rational(0), Rational(28), Rational(24), Rational(0),
                             Rational(64), Rational(-3)});

    c.require(!cert.cov.has_value(), "unexpected change of variables");
    c.require(cert.param.lambda_j == 0, "unexpected nontrivial separating form");
    c.require(!cert.param.w.is_zero() && cert.param.w.degree() == w_ref.degree(),
              "deg w != 9");
    if (c.ok) {
        const Rational s = w_ref.lc() / cert.param.w.lc();
        c.require(s > 0, "normalization scalar not positive");
        c.require(cert.param.w.scaled(s) == w_ref, "w mismatch");
        c.require(cert.param.kappa.size() == 2, "kappa count != 2");
        if (cert.param.kappa.size() == 2) {
            c.require(cert.param.kappa[0].scaled(s) == k1_ref, "kappa1 mismatch");
            c.require(cert.param.kappa[1].scaled(s) == k2_ref, "kappa2 mismatch");
        }

        // The restriction scales with the d-th power of the same scalar.
        Rational sh(1);
        for (unsigned i = 0; i < cert.degree; ++i) sh *= s;
        UPoly hbar = cert.h.scaled(sh);

        static const std::pair<unsigned, long> hbar_terms[] = {
            {36, 1679616},   {34, 3359232},   {33, -559872},  {32, -13670208},
            {31, 11197440},  {30, -32799168}, {29, 7301664},  {28, 40124160},
            {27, -56581740}, {26, 118393488}, {25, -29030400},{24, -11429649},
            {23, 91968984},  {22, -162286560},{21, 52664472}, {20, -95470992},
            {19, -51948224}, {18, 37314854},  {17, -36173624},{16, 103156448},
            {15, 27660704},  {14, 94133752},  {13, 56849248}, {12, 51186288},
            {11, 42348048},  {10, 20765728},  {9, 17391200},  {8, 7273168},
            {7, 4607744},    {6, 1946186},    {5, 880960},    {4, 413632},
            {3, 86580},      {2, 75816},      {0, 6561},
        };
        UPoly h_ref;
        for (const auto& [e, v] : hbar_terms) h_ref.set_coeff(e, Rational(v));
        h_ref.trim();
        c.require(hbar.degree() == 36 && hbar.lc() == 1679616, "restriction leading term");
        c.require(hbar[0] == 6561, "restriction constant term");
        c.require(hbar == h_ref, "restriction mismatch");
    }
    c.require(verify(F, cert).pass(), "verifier rejected the certificate");
    c.require(dt < 300.0, "slower than 5 min");
    return c;
}

// ---------------------------------------------------------------------------
// 3. Degree-6 bivariate that is nonnegative but not a plain sum of squares;
// the parametrized route must still produce a verifying certificate.

Criterion c3() {
    Criterion c;
    MPoly fR = parse_poly(
        "x1^6 + x2^6 - x1^4*x2^2 + 3*x1^2*x2^2 - x1^2*x2^4 - x1^4 - x2^4 - x1^2 - x2^2 + 1", 2);
    FracCertificate cert = sos_grad(fR);
    VerifyReport rep = verify(fR, cert);
    c.require(rep.identity_holds, "identity check failed");
    c.require(rep.weights_positive, "weight positivity check failed");
    c.require(rep.multipliers_in_gradient_ideal, "multiplier membership check failed");
    return c;
}

// ---------------------------------------------------------------------------
// 4. Shape basis <-> parametrization round trip plus the twisted-coordinate
// congruences, on random squarefree shape bases.

Criterion c4() {
    Criterion c;
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 100) {
        unsigned n = 2 + rng() % 3;
        unsigned dw = 1 + rng() % 12;
        UPoly w = rnd_monic(rng, dw);
        if (!is_squarefree(w)) continue;
        std::vector<UPoly> v;
        for (unsigned i = 2; i <= n; ++i) v.push_back(rnd_upoly(rng, dw - 1, 5));

        ShapeBasis sb{w, v, n};
        RationalParam rp = shape_to_param(sb);
        ShapeBasis back = param_to_shape(rp);
        c.require(back.w == sb.w && back.v == sb.v && back.nvars == sb.nvars,
                  "round trip not the identity");

        const UPoly wp = w.derivative();
        c.require(rp.kappa.size() == n, "kappa count != nvars");
        if (rp.kappa.size() == n) {
            c.require(euclid_div(up({Rational(0), Rational(1)}) * wp, w).second == rp.kappa[0],
                      "kappa1 != t*w' mod w");
            for (unsigned i = 0; i + 1 < n; ++i)
                c.require(euclid_div(v[i] * wp, w).second == rp.kappa[i + 1],
                          "kappa_i != v_i*w' mod w");
        }
        ++done;
    }
    return c;
}

// ---------------------------------------------------------------------------
// 5. Substitution with tracked cofactors: the cleared-denominator
// reconstruction identity, with a remainder depending on x1 only.

Criterion c5() {
    Criterion c;
    std::mt19937_64 rng(515);
    for (int it = 0; it < 200; ++it) {
        unsigned n = 2 + rng() % 3;
        MPoly g = rnd_mpoly(rng, n, 6, 1 + rng() % 8);
        UPoly a0 = rnd_upoly_nonzero(rng, 6, 5);
        std::vector<UPoly> a;
        for (unsigned i = 2; i <= n; ++i) a.push_back(rnd_upoly(rng, 6, 5));

        Elimination el = eliminate(g, a0, a);
        c.require(el.phi.size() == n - 1, "cofactor count != nvars - 1");
        if (el.phi.size() != n - 1) continue;

        const bool unit_den = a0.degree() == 0 && a0.lc() == 1;
        const MPoly A0 = MPoly::from_upoly(a0, 1, n);
        MPoly rem = A0.pow(el.r_pow) * g;
        bool powers_ok = true;
        for (unsigned i = 0; i < el.phi.size(); ++i) {
            if (el.phi[i].num.is_zero()) continue;
            unsigned scale = 0;
            if (!unit_den) {
                if (el.r_pow < el.phi[i].a0_pow + 1) {
                    powers_ok = false;
                    break;
                }
                scale = el.r_pow - el.phi[i].a0_pow - 1;
            }
            MPoly gen = A0 * MPoly::variable(i + 2, n) - MPoly::from_upoly(a[i], 1, n);
            rem -= el.phi[i].num * A0.pow(scale) * gen;
        }
        c.require(powers_ok, "cofactor denominator exceeds the clearing power");
        if (!powers_ok) continue;
        for (unsigned v = 2; v <= n; ++v)
            c.require(rem.degree_in(v) == 0, "remainder depends on an eliminated variable");
        c.require(rem == MPoly::from_upoly(el.r_num, 1, n), "reconstruction identity failed");
    }
    return c;
}

// ---------------------------------------------------------------------------
// 6. Univariate layer: division/gcd contracts, the nonnegativity decision
// against a bisection oracle, and weighted-SOS round trips.

// Brute-force nonnegativity: escape to +-B where the sign is decided by the
// leading term, then branch-and-bound on [-B, B] with a global slope bound.
// Exact rational arithmetic throughout, so a "false" always carries an exact
// witness and a "true" is a covering of [-B, B] by certified boxes.  A
// midpoint landing exactly on a root deflates it: odd multiplicity is a sign
// change, even multiplicity restarts on the exact quotient.  nullopt only
// when the node budget runs out (a minimum sitting exactly at zero at a
// point bisection cannot reach).
std::optional<bool> brute_nonneg(const UPoly& p) {
    if (p.is_zero()) return true;
    if (p.is_constant()) return p[0] >= 0;

    const int d = p.degree();
    Rational m(0);
    for (int i = 0; i < d; ++i) {
        Rational q = abs(p[i] / p.lc());
        if (q > m) m = q;
    }
    const Rational B = m + 1;  // every real root lies in (-B, B)
    if (p.eval(B) < 0 || p.eval(-B) < 0) return false;

    Rational L(0), Bp(1);  // L = sum i*|c_i|*B^(i-1) bounds |p'| on [-B, B]
    for (int i = 1; i <= d; ++i) {
        L += Rational(i) * abs(p[i]) * Bp;
        Bp *= B;
    }

    struct Iv {
        Rational a, b;
    };
    std::vector<Iv> todo{{-B, B}};
    long budget = 500000;
    while (!todo.empty()) {
        if (--budget < 0) return std::nullopt;
        Iv iv = std::move(todo.back());
        todo.pop_back();
        const Rational mid = (iv.a + iv.b) / 2;
        const Rational val = p.eval(mid);
        if (val < 0) return false;
        if (val.is_zero()) {
            const UPoly lin = up({-mid, Rational(1)});
            UPoly q = p;
            unsigned mult = 0;
            while (q.eval(mid).is_zero()) {
                q = euclid_div(q, lin).first;
                ++mult;
            }
            if (mult % 2) return false;  // p changes sign through the root
            return brute_nonneg(q);      // (x - mid)^mult >= 0 carries no sign
        }
        if (2 * val >= L * (iv.b - iv.a)) continue;  // p >= val - L*(b-a)/2 >= 0 here
        todo.push_back({iv.a, mid});
        todo.push_back({mid, iv.b});
    }
    return true;
}

Criterion c6() {
    Criterion c;
    std::mt19937_64 rng(606);

    for (int it = 0; it < 500; ++it) {
        UPoly a = rng() % 10 ? rnd_upoly(rng, 10) : UPoly();
        UPoly b = rnd_upoly_nonzero(rng, 8);
        auto [q, r] = euclid_div(a, b);
        c.require(q * b + r == a, "euclid_div reconstruction failed");
        c.require(r.degree() < b.degree(), "remainder degree not reduced");
    }

    for (int it = 0; it < 500; ++it) {
        UPoly a = rng() % 10 ? rnd_upoly(rng, 8) : UPoly();
        UPoly b = rng() % 10 ? rnd_upoly(rng, 8) : UPoly();
        ExtGcd e = ext_gcd(a, b);
        c.require(e.s * a + e.t * b == e.g, "Bezout identity failed");
        if (e.g.is_zero()) {
            c.require(a.is_zero() && b.is_zero(), "zero gcd of nonzero inputs");
        } else {
            c.require(e.g.lc() == 1, "gcd not monic");
            c.require(euclid_div(a, e.g).second.is_zero() &&
                          euclid_div(b, e.g).second.is_zero(),
                      "gcd does not divide the inputs");
        }
    }

    for (int it = 0; it < 300; ++it) {
        UPoly p;
        switch (it % 3) {
            case 0:  // raw draw, usually dips somewhere
                p = rnd_upoly(rng, 8);
                break;
            case 1: {  // two squares plus a half-integer shift: mixed verdicts
                UPoly q1 = rnd_upoly(rng, 4, 4), q2 = rnd_upoly(rng, 4, 4);
                p = q1 * q1 + q2 * q2 + UPoly(Rational(2 * rnd_int(rng, -3, 3) + 1, 2));
                break;
            }
            default:  // forced-negative family: odd degree or negative lead
                p = rnd_upoly(rng, 8);
                if (!p.is_zero() && p.lc() > 0) p = -p;
                break;
        }
        std::optional<bool> want = brute_nonneg(p);
        c.require(want.has_value(), "bisection oracle inconclusive");
        if (want) c.require(is_nonnegative_on_R(p) == *want, "nonnegativity decision disagrees");
    }

    for (int it = 0; it < 200; ++it) {
        UPoly h;
        const int k = 1 + rng() % 3;
        for (int j = 0; j < k; ++j) {
            UPoly q = rnd_upoly(rng, 4, 6);
            Rational cj(rnd_int(rng, 1, 9), rnd_int(rng, 1, 4));
            h += (q * q).scaled(cj);
        }
        if (rng() % 2) h += UPoly(Rational(rnd_int(rng, 0, 9)));
        if (h.is_zero()) continue;
        WeightedSOS ws = weighted_sos(h);
        c.require(verify_weighted_sos(h, ws), "weighted SOS failed re-verification");
        for (const auto& [wj, qj] : ws.terms) {
            c.require(wj > 0, "nonpositive weight emitted");
            c.require(2 * qj.degree() <= h.degree(), "square exceeds half the degree");
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 7. Benchmark shape at desk scale: every seeded instance certifies and
// verifies, with the counting and degree metrics inside the published
// bounds.  Timing columns are hardware-bound and deliberately not checked;
// the verified rate stands in for them.  Frac mode carries the 50-instance
// rows; poly mode is sampled to pin its tighter degree bound.

Criterion c7() {
    Criterion c;
    auto t0 = Clock::now();
    struct Row {
        unsigned n;
        const char* mode;
        unsigned count;
        unsigned dh_max;
    };
    const Row rows[] = {
        {2, "frac", 50, 36},
        {2, "poly", 5, 32},
        {3, "frac", 50, 108},
        {3, "poly", 5, 104},
    };
    for (const Row& row : rows) {
        BenchOptions o;
        o.nvars = row.n;
        o.degree = 4;
        o.recipe = "t1";
        o.mode = row.mode;
        o.seed = 7;
        o.count = row.count;
        auto trow = Clock::now();
        for (unsigned i = 0; i < row.count && c.ok; ++i) {
            BenchResult r = bench_one(o, i);
            std::ostringstream tag;
            tag << "n=" << row.n << " mode=" << row.mode << " instance " << i;
            c.require(r.status == "ok" && r.verified, tag.str() + ": not verified");
            c.require(r.metrics.d_h <= row.dh_max, tag.str() + ": d_h out of bounds");
            if (row.n == 2) c.require(r.metrics.delta <= 9, tag.str() + ": delta out of bounds");
        }
        std::fprintf(stderr, "criterion 7: n=%u %s x%u done in %.1f s\n", row.n, row.mode,
                     row.count, secs_since(trow));
    }
    c.require(secs_since(t0) <= 1800.0, "slower than 30 min");
    return c;
}

// ---------------------------------------------------------------------------
// 8. Negative paths: cube rejection, degenerate gradient ideal, a genuine
// negative-on-critical-points refutation, and a tamper battery.

Criterion c8() {
    Criterion c;

    const auto rejects = [](const std::function<void()>& run) {
        try {
            run();
        } catch (const HypothesisViolated&) {
            return true;  // the cube's restriction is x1^2: not squarefree
        } catch (const NotNonnegativeOnCriticalCurve&) {
            return true;
        } catch (const NotNonnegative&) {
            return true;
        }
        return false;
    };
    MPoly cube = parse_poly("x1^3", 1);
    c.require(rejects([&] { sos_shape(cube); }), "x1^3 accepted by the restriction route");
    c.require(rejects([&] { sos_grad(cube); }), "x1^3 accepted by the parametrized route");

    const auto hypothesis = [](const std::function<void()>& run) {
        try {
            run();
        } catch (const HypothesisViolated&) {
            return true;
        } catch (...) {
            return false;
        }
        return false;
    };
    MPoly flat = parse_poly("x1^4", 2);
    c.require(hypothesis([&] { sos_shape(flat); }),
              "positive-dimensional input not flagged by the restriction route");
    c.require(hypothesis([&] { sos_grad(flat); }),
              "positive-dimensional input not flagged by the parametrized route");

    // A well-posed input whose restriction to the critical points goes
    // negative must be refuted by the restriction's nonnegativity test.
    const auto refuted = [](const std::function<void()>& run) {
        try {
            run();
        } catch (const NotNonnegativeOnCriticalCurve&) {
            return true;
        } catch (...) {
            return false;
        }
        return false;
    };
    MPoly saddle = parse_poly("x1^4 + x2^4 - 4*x1*x2", 2);
    c.require(refuted([&] { sos_shape(saddle); }), "negative minimum not refuted (restriction)");
    c.require(refuted([&] { sos_grad(saddle); }), "negative minimum not refuted (parametrized)");

    // Tampering: every mutated certificate must fail re-verification.
    MPoly f = parse_poly("2*x1^4 + 2*x1*x2 + x2^2 + 10", 2);
    PolyCertificate pc = sos_shape(f);
    FracCertificate fc = sos_grad(f);
    c.require(verify(f, pc).pass() && verify(f, fc).pass(), "baseline certificates rejected");

    {
        PolyCertificate t = pc;
        t.sos.terms[0].first = -t.sos.terms[0].first;
        c.require(!verify(f, t).pass(), "negated weight accepted");
    }
    {
        PolyCertificate t = pc;
        t.sos.terms[0].second += UPoly(Rational(1));
        c.require(!verify(f, t).pass(), "perturbed square accepted");
    }
    {
        PolyCertificate t = pc;
        t.phi[0] += MPoly::constant(Rational(1), 2);
        c.require(!verify(f, t).pass(), "perturbed multiplier accepted");
    }
    {
        PolyCertificate t = pc;
        t.shape.v[0] += UPoly(Rational(1));
        c.require(!verify(f, t).pass(), "perturbed basis element accepted");
    }
    {
        PolyCertificate t = pc;
        t.shape.w.set_coeff(0, t.shape.w[0] + 1);
        c.require(!verify(f, t).pass(), "perturbed w accepted");
    }
    c.require(!verify(f + MPoly::constant(Rational(1), 2), pc).pass(),
              "certificate accepted against a different input");
    {
        FracCertificate t = fc;
        t.param.kappa[1] += UPoly(Rational(1));
        c.require(!verify(f, t).pass(), "perturbed kappa accepted");
    }
    {
        FracCertificate t = fc;
        t.sos.terms[0].first = t.sos.terms[0].first.is_zero()
                                   ? Rational(-1)
                                   : -t.sos.terms[0].first;
        c.require(!verify(f, t).pass(), "negated weight accepted (parametrized)");
    }
    {
        FracCertificate t = fc;
        if (!t.phi.empty()) {
            t.phi[0].num += MPoly::constant(Rational(1), 2);
            c.require(!verify(f, t).pass(), "perturbed cofactor accepted");
        }
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<std::pair<int, std::function<Criterion()>>> criteria = {
        {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5}, {6, c6}, {7, c7}, {8, c8},
    };

    bool all_ok = true;
    for (const auto& [id, fn] : criteria) {
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = Clock::now();
        Criterion c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why = std::string("unexpected exception: ") + e.what();
        }
        std::printf("criterion %d: %s (%.1f s)%s%s\n", id, c.ok ? "PASS" : "FAIL",
                    secs_since(t0), c.ok ? "" : " -- ", c.ok ? "" : c.why.c_str());
        std::fflush(stdout);
        all_ok = all_ok && c.ok;
    }
    return all_ok ? 0 : 1;
}
