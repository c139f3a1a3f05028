#include "gradsos/univsos.hpp"

#include "gradsos/errors.hpp"
#include "gradsos/univar.hpp"

#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <climits>
#include <optional>
#include <vector>

namespace gradsos {

namespace {

// ---- thin arbitrary-precision float layer -------------------------------
//
// All new values are allocated at g_prec bits; raising g_prec between
// refinement rungs and copying values through promotes them.  Raw mpfr is
// used so the precision of every operation is explicit and deterministic.

thread_local unsigned g_prec = 128;

struct Real {
    mpfr_t v;
    Real() {
        mpfr_init2(v, g_prec);
        mpfr_set_zero(v, 1);
    }
    explicit Real(double d) : Real() { mpfr_set_d(v, d, MPFR_RNDN); }
    explicit Real(const Rational& q) : Real() {
        mpfr_set_q(v, q.backend().data(), MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v, g_prec);
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        v[0] = o.v[0];
        mpfr_init2(o.v, MPFR_PREC_MIN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) mpfr_set(v, o.v, MPFR_RNDN);
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v, o.v);
        return *this;
    }
    ~Real() { mpfr_clear(v); }

    int sign() const { return mpfr_sgn(v); }
    bool is_zero() const { return mpfr_zero_p(v); }
};

Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.v, a.v, b.v, MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.v, a.v, b.v, MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.v, a.v, b.v, MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.v, a.v, b.v, MPFR_RNDN);
    return r;
}
Real operator-(const Real& a) {
    Real r;
    mpfr_neg(r.v, a.v, MPFR_RNDN);
    return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) < 0; }
Real abs_r(const Real& a) {
    Real r;
    mpfr_abs(r.v, a.v, MPFR_RNDN);
    return r;
}
Real sqrt_r(const Real& a) {
    Real r;
    mpfr_sqrt(r.v, a.v, MPFR_RNDN);
    return r;
}
Real ldexp_r(const Real& a, long e) {
    Real r;
    mpfr_mul_2si(r.v, a.v, e, MPFR_RNDN);
    return r;
}
Int round_to_int(const Real& a) {
    Int z;
    mpfr_get_z(z.backend().data(), a.v, MPFR_RNDN);
    return z;
}

struct Cx {
    Real re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cx operator/(const Cx& a, const Cx& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real abs2(const Cx& a) { return a.re * a.re + a.im * a.im; }

using RPoly = std::vector<Real>;  // coefficient i of x^i

RPoly to_rpoly(const UPoly& p) {
    RPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.emplace_back(c);
    return out;
}

// simultaneous Horner for p and p'
void eval_both(const RPoly& c, const Cx& z, Cx& p, Cx& dp) {
    p = {Real(0.0), Real(0.0)};
    dp = {Real(0.0), Real(0.0)};
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + Cx{c[i], Real(0.0)};
    }
}

// ---- simultaneous root refinement ---------------------------------------

std::vector<Cx> initial_points(const RPoly& c) {
    std::size_t d = c.size() - 1;
    // Fujiwara-style modulus bound, from exponents only: the roots of a monic
    // polynomial satisfy |z| <= 2 max_i |c_{d-i}|^{1/i}.  Starting from the
    // raw coefficient magnitude instead makes high-degree inputs begin
    // orders of magnitude away and stall inside the sweep budget.
    long blog = 0;
    for (std::size_t i = 0; i < d; ++i) {
        if (c[i].is_zero()) continue;
        long e = mpfr_get_exp(c[i].v);  // ~ 1 + log2|c_i|
        long need = e > 0 ? (e + static_cast<long>(d - i) - 1) / static_cast<long>(d - i) : 0;
        blog = std::max(blog, need);
    }
    Real radius(2.0);
    mpfr_mul_2exp(radius.v, radius.v, static_cast<unsigned long>(blog), MPFR_RNDN);
    std::vector<Cx> z;
    z.reserve(d);
    mpfr_t angle, co, si;
    mpfr_init2(angle, g_prec);
    mpfr_init2(co, g_prec);
    mpfr_init2(si, g_prec);
    for (std::size_t k = 0; k < d; ++k) {
        // spread over a circle, an irrational-ish offset avoids symmetry locks
        mpfr_const_pi(angle, MPFR_RNDN);
        mpfr_mul_d(angle, angle, 2.0 * static_cast<double>(k) / static_cast<double>(d) + 0.37,
                   MPFR_RNDN);
        mpfr_sin_cos(si, co, angle, MPFR_RNDN);
        Cx p{Real(0.0), Real(0.0)};
        mpfr_mul(p.re.v, co, radius.v, MPFR_RNDN);
        mpfr_mul(p.im.v, si, radius.v, MPFR_RNDN);
        z.push_back(std::move(p));
    }
    mpfr_clear(angle);
    mpfr_clear(co);
    mpfr_clear(si);
    return z;
}

// One Aberth-Ehrlich sweep; returns the exponent of the largest relative
// correction (roughly -log2 of accuracy), or a very negative number when
// fully converged.
long aberth_sweep(const RPoly& c, std::vector<Cx>& z) {
    long worst = -static_cast<long>(g_prec) * 4;
    for (std::size_t k = 0; k < z.size(); ++k) {
        Cx p, dp;
        eval_both(c, z[k], p, dp);
        if (p.re.is_zero() && p.im.is_zero()) continue;
        Cx n = p / dp;
        Cx s{Real(0.0), Real(0.0)};
        for (std::size_t l = 0; l < z.size(); ++l) {
            if (l == k) continue;
            s = s + Cx{Real(1.0), Real(0.0)} / (z[k] - z[l]);
        }
        Cx corr = n / (Cx{Real(1.0), Real(0.0)} - n * s);
        z[k] = z[k] - corr;
        Real rel = abs2(corr) / (Real(1.0) + abs2(z[k]));
        if (!rel.is_zero()) {
            long e = mpfr_get_exp(rel.v) / 2;
            worst = std::max(worst, e);
        }
    }
    return worst;
}

std::vector<Cx> find_roots(const UPoly& monic, unsigned target_bits) {
    unsigned start = std::min<unsigned>(192, target_bits);
    g_prec = start;
    RPoly c = to_rpoly(monic);
    std::vector<Cx> z = initial_points(c);
    long goal = -static_cast<long>(g_prec / 2);
    for (int sweep = 0; sweep < 400; ++sweep)
        if (aberth_sweep(c, z) < goal) break;
    while (g_prec < target_bits) {
        g_prec = std::min(g_prec * 2, target_bits);
        RPoly c2 = to_rpoly(monic);
        for (auto& r : z) r = Cx{Real(r.re), Real(r.im)};  // promote
        goal = -static_cast<long>(g_prec) * 3 / 8;
        for (int sweep = 0; sweep < 40; ++sweep)
            if (aberth_sweep(c2, z) < goal) break;
    }
    return z;
}

// ---- conjugate pairing and Gauss aggregation ----------------------------

struct Quad {
    Real a;  // (x - a)^2 + d^2, i.e. center a
    Real d;  // nonnegative imaginary spread
};

std::vector<Quad> pair_roots(std::vector<Cx> z) {
    std::vector<bool> used(z.size(), false);
    std::vector<Quad> quads;
    for (std::size_t taken = 0; taken < z.size(); taken += 2) {
        // most complex unused root first
        std::size_t i = z.size();
        for (std::size_t k = 0; k < z.size(); ++k)
            if (!used[k] && (i == z.size() || abs_r(z[i].im) < abs_r(z[k].im))) i = k;
        used[i] = true;
        // partner closest to the conjugate
        std::size_t j = z.size();
        Real best(0.0);
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (used[k]) continue;
            Real d = abs2(Cx{z[i].re - z[k].re, -z[i].im - z[k].im});
            if (j == z.size() || d < best) {
                j = k;
                best = d;
            }
        }
        used[j] = true;
        Cx alpha{(z[i].re + z[j].re) * Real(0.5), (z[i].im - z[j].im) * Real(0.5)};
        quads.push_back({std::move(alpha.re), abs_r(alpha.im)});
    }
    return quads;
}

// (A + iB) *= (x - a) + i d, keeping A monic.
void aggregate(RPoly& A, RPoly& B, const Quad& q) {
    RPoly nA(A.size() + 1, Real(0.0)), nB(A.size() + 1, Real(0.0));
    for (std::size_t k = 0; k < A.size(); ++k) {
        nA[k + 1] = nA[k + 1] + A[k];
        nA[k] = nA[k] - A[k] * q.a - (k < B.size() ? B[k] * q.d : Real(0.0));
        if (k < B.size()) {
            nB[k + 1] = nB[k + 1] + B[k];
            nB[k] = nB[k] - B[k] * q.a;
        }
        nB[k] = nB[k] + A[k] * q.d;
    }
    A = std::move(nA);
    B = std::move(nB);
    while (B.size() > 1 && B.back().is_zero()) B.pop_back();
}

UPoly round_dyadic(const RPoly& p, unsigned bits, bool force_monic) {
    std::vector<Rational> c(p.size());
    Int den = pow_int(Int(2), bits);
    for (std::size_t i = 0; i < p.size(); ++i)
        c[i] = Rational(round_to_int(ldexp_r(p[i], static_cast<long>(bits))), den);
    if (force_monic && !c.empty()) c.back() = 1;
    UPoly out{c};
    return out;
}

// ---- exact core ----------------------------------------------------------

UPoly even_spine(unsigned m) {  // 1 + x^2 + ... + x^{2m}
    UPoly s;
    for (unsigned i = 0; i <= m; ++i) s.set_coeff(2 * i, Rational(1));
    return s;
}

unsigned float_range_bits(const UPoly& p) {
    long best = 0;
    for (const auto& c : p.coeffs()) {
        if (c == 0) continue;
        long l = static_cast<long>(bitlen(numerator(c))) - static_cast<long>(bitlen(denominator(c)));
        best = std::max(best, l);
    }
    return static_cast<unsigned>(best) + 1;
}

struct CoreAttempt {
    bool ok = false;
    WeightedSOS sos;             // decomposition of the monic target
    std::vector<Rational> samples;  // rationalized root abscissae, for witness checks
};

// One attempt at target = sum c q^2 for a strictly-positive-intended target of
// even degree (kept at its original scale; the leading coefficient is arbitrary
// positive), with perturbation 2^-k and rounding precision p0 bits.
CoreAttempt try_core(const UPoly& target, unsigned k, unsigned p0) {
    CoreAttempt out;
    unsigned deg = static_cast<unsigned>(target.degree());
    unsigned m = deg / 2;
    Rational eps(Int(1), pow_int(Int(2), k));
    UPoly S = even_spine(m);
    UPoly p_eps = target - S.scaled(eps);
    Rational lce = target.lc() - eps;  // p_eps coefficient at x^{2m}
    if (lce < 0) return out;           // perturbation exceeds the leading coefficient

    UPoly At, Bt;
    if (lce > 0) {
        UPoly phat = p_eps.scaled(Rational(1) / lce);
        if (phat.degree() != static_cast<int>(deg)) return out;  // defensive
        g_prec = p0 + 96;
        std::vector<Cx> roots = find_roots(phat, p0 + 64);
        for (const auto& r : roots) {
            Int num = round_to_int(ldexp_r(r.re, 40));
            out.samples.push_back(Rational(num, pow_int(Int(2), 40)));
        }
        std::vector<Quad> quads = pair_roots(std::move(roots));
        RPoly A{Real(1.0)}, B{Real(0.0)};
        for (const auto& q : quads) aggregate(A, B, q);
        At = round_dyadic(A, p0, true);
        Bt = round_dyadic(B, p0, false);
    }
    // with eps equal to the leading coefficient the top term is fully consumed
    // and the residual bookkeeping below absorbs p_eps directly (At = Bt = 0)

    UPoly u = p_eps - (At * At + Bt * Bt).scaled(lce);
    if (u.degree() >= static_cast<int>(2 * m) && lce > 0) return out;  // lead must cancel

    auto uc = [&](long i) -> Rational {
        if (i < 0 || i > u.degree()) return Rational(0);
        return u[static_cast<std::size_t>(i)];
    };
    std::vector<Rational> e(m + 1);
    for (unsigned i = 0; i <= m; ++i) {
        Rational lo = uc(2 * static_cast<long>(i) - 1), hi = uc(2 * static_cast<long>(i) + 1);
        if (lo < 0) lo = -lo;
        if (hi < 0) hi = -hi;
        e[i] = eps + uc(2 * static_cast<long>(i)) - lo / 2 - hi / 2;
        if (e[i] < 0) return out;
    }

    if (lce > 0) {
        out.sos.terms.emplace_back(lce, At);
        if (!Bt.is_zero()) out.sos.terms.emplace_back(lce, Bt);
    }
    for (unsigned i = 0; i < m; ++i) {
        Rational o = uc(2 * static_cast<long>(i) + 1);
        if (o == 0) continue;
        Rational w = o < 0 ? -o : o;
        UPoly q = UPoly::monomial(i) + UPoly::monomial(i + 1, o < 0 ? Rational(-1) : Rational(1));
        out.sos.terms.emplace_back(w / 2, q);
    }
    for (unsigned i = 0; i <= m; ++i)
        if (e[i] > 0) out.sos.terms.emplace_back(e[i], UPoly::monomial(i));
    out.ok = true;
    return out;
}

// Exact search for the largest feasible perturbation, by doubling k from 0:
// 2^0, 2^-1, 2^-2, 2^-4, ...  A strictly positive target always admits some
// feasible perturbation (the ratio target/spine has a positive infimum), but
// its size is governed by where the smallest critical value sits, not by the
// coefficient height alone, so the schedule runs geometrically up to a cap
// that is far beyond anything a genuine input needs.
constexpr unsigned kMaxPerturbExp = 1u << 17;

std::optional<unsigned> exact_epsilon(const UPoly& h1) {
    unsigned m = static_cast<unsigned>(h1.degree()) / 2;
    UPoly S = even_spine(m);
    unsigned k = 0;
    for (;;) {
        Rational eps(Int(1), pow_int(Int(2), k));
        if (is_nonnegative_on_R(h1 - S.scaled(eps))) return k;
        if (k == 0)
            k = 1;
        else if (k >= kMaxPerturbExp)
            return std::nullopt;
        else
            k *= 2;
    }
}

bool sturm_affordable(const UPoly& h) {
    unsigned d = static_cast<unsigned>(std::max(h.degree(), 0));
    if (d > 48) return false;
    double cost = static_cast<double>(d) * d * d * (height(h) + 16.0);
    return cost <= 2e8;
}

// Cheap dip scan before any expensive attempt: sample target/spine on a
// root-bounded grid in 128-bit floats and report the perturbation exponent
// the worst visible dip demands.  Purely a seed for the first attempt - the
// exact probes in the retry loop correct any misestimate - but it saves the
// doomed large-perturbation rounds when the minimum sits far below the
// coefficient scale.
unsigned probe_perturb_exp(const UPoly& target, const UPoly& S) {
    g_prec = 192;
    RPoly tp = to_rpoly(target), sp = to_rpoly(S);
    long elc = mpfr_get_exp(tp.back().v);
    long blog = 0;
    std::size_t d = tp.size() - 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (tp[i].is_zero()) continue;
        long e = mpfr_get_exp(tp[i].v) - elc;
        long need = e > 0 ? (e + static_cast<long>(d - i) - 1) / static_cast<long>(d - i) : 0;
        blog = std::max(blog, need);
    }
    auto eval = [](const RPoly& c, const Real& t) {
        Real acc(0.0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return acc;
    };
    long best_fl = LONG_MIN;
    Real best_t(0.0);
    auto look = [&](const Real& t) {
        Real v = eval(tp, t);
        if (!(Real(0.0) < v)) return;  // leave sign questions to the exact scan
        Real s = eval(sp, t);
        long fl = mpfr_get_exp(s.v) - mpfr_get_exp(v.v);
        if (fl > best_fl) {
            best_fl = fl;
            best_t = t;
        }
    };
    Real R(1.0);
    mpfr_mul_2exp(R.v, R.v, static_cast<unsigned long>(blog + 1), MPFR_RNDN);
    for (int j = -128; j <= 128; ++j) look(R * Real(static_cast<double>(j) / 128.0));
    for (int j = 4; j < 128; ++j) {
        Real t(1.0);
        mpfr_div_2exp(t.v, R.v, static_cast<unsigned long>(j / 4), MPFR_RNDN);
        look(t);
        look(-t);
    }
    // zoom on the worst dip: a narrow minimum reads orders of magnitude too
    // shallow on any fixed grid, so contract around the argmax until the
    // spacing stops mattering
    Real step = R * Real(1.0 / 128.0);
    for (int round = 0; round < 12 && best_fl != LONG_MIN; ++round) {
        step = step * Real(1.0 / 8.0);
        Real center = best_t;
        for (int j = -15; j <= 15; ++j)
            if (j != 0) look(center + step * Real(static_cast<double>(j)));
    }
    if (best_fl <= 0) return 0;
    return std::min(static_cast<unsigned>(best_fl) + 8, kMaxPerturbExp);
}

// Decompose a target expected to be strictly positive, kept at its original
// scale; `whole` is the original input (for witness evaluation), scale/carrier
// map the result back: whole = scale * carrier^2 * target.
WeightedSOS decompose_positive(const UPoly& target, bool affordable, const UPoly& whole,
                               const Rational& scale, const UPoly& carrier) {
    unsigned deg = static_cast<unsigned>(target.degree());
    unsigned lg = static_cast<unsigned>(std::bit_width(deg + 2));
    unsigned m = static_cast<unsigned>(deg / 2);
    UPoly S = even_spine(m);
    unsigned k0 = 0;
    if (affordable) {
        auto k = exact_epsilon(target);
        if (!k)
            throw PrecisionExhausted("no feasible diagonal perturbation found");
        k0 = *k;
    } else {
        // no exact feasibility test at this size; start below the leading
        // coefficient, let the float scan spot the obvious dips, and let the
        // failed attempts below tighten the estimate further
        const Rational& lc = target.lc();
        long lead = static_cast<long>(bitlen(numerator(lc))) - static_cast<long>(bitlen(denominator(lc)));
        if (lead < 1) k0 = static_cast<unsigned>(1 - lead);
        k0 = std::max(k0, probe_perturb_exp(target, S));
    }
    unsigned p0 = std::max<unsigned>(96, float_range_bits(target) + 4 * lg + k0 + 64);
    for (int attempt = 0; attempt <= 12; ++attempt) {
        // eps equal to the leading coefficient kills the top term of the
        // perturbed target, so the numeric splitting never runs; past the first
        // (cheap, purely diagonal) attempt fall back to the next feasible
        // perturbation so the root-splitting core gets to work.
        unsigned k = affordable ? (attempt == 0 ? k0 : std::max(k0, 1u))
                                : std::min<unsigned>(k0 + 2 * static_cast<unsigned>(attempt), kMaxPerturbExp);
        if (attempt > 0 && target.lc() == Rational(Int(1), pow_int(Int(2), k)))
            ++k;  // perturbation would exactly consume the lead; take the next one
        CoreAttempt res = try_core(target, k, p0);
        if (res.ok) {
            WeightedSOS mapped;
            for (auto& [c, q] : res.sos.terms) mapped.terms.emplace_back(scale * c, carrier * q);
            if (verify_weighted_sos(whole, mapped)) return mapped;
        } else if (!affordable) {
            // exact refutation scan near the numeric root abscissae; positive
            // values double as feasibility data: the perturbation must stay
            // below target/spine at every dip, so grow k to clear the worst one
            std::vector<Rational> pts = res.samples;
            std::sort(pts.begin(), pts.end());
            std::vector<Rational> probes = pts;
            for (std::size_t i = 1; i < pts.size(); ++i) probes.push_back((pts[i - 1] + pts[i]) / 2);
            unsigned k_need = 0;
            for (const auto& t : probes) {
                Rational val = whole.eval(t);
                if (val < 0)
                    throw NotNonnegative("input is negative at t = " + to_string(t));
                if (val == 0) continue;
                Rational ratio = S.eval(t) / val;
                long fl = static_cast<long>(bitlen(numerator(ratio))) -
                          static_cast<long>(bitlen(denominator(ratio)));
                if (fl > 0) k_need = std::max(k_need, static_cast<unsigned>(fl) + 7);
            }
            if (k_need > k0) {
                k0 = std::min(k_need, kMaxPerturbExp);
                p0 = std::max(p0, std::max<unsigned>(96, float_range_bits(target) + 4 * lg + k0 + 64));
                continue;  // retry at the adapted perturbation without burning precision
            }
        }
        p0 *= 2;
    }
    throw PrecisionExhausted("rounding precision budget exhausted (12 doublings)");
}

}  // namespace

WeightedSOS weighted_sos(const UPoly& h) {
    if (h.is_zero()) return {};
    if (h.degree() == 0) {
        if (h.lc() < 0) throw NotNonnegative("negative constant");
        return {{{h.lc(), UPoly(Rational(1))}}};
    }
    if (h.degree() % 2 != 0) throw NotNonnegative("odd degree");
    if (h.lc() < 0) throw NotNonnegative("negative leading coefficient");

    if (sturm_affordable(h)) {
        // split off the even part of the factorization: h = lc * g^2 * h1 with
        // h1 the product of the odd-multiplicity squarefree factors
        auto dec = squarefree_decomposition(h);
        UPoly g(Rational(1)), h1(Rational(1));
        for (const auto& fac : dec.factors) {
            if (fac.multiplicity / 2 > 0) g *= fac.f.pow(fac.multiplicity / 2);
            if (fac.multiplicity % 2 == 1) {
                if (count_real_roots(fac.f) > 0)
                    throw NotNonnegative("a sign-changing factor has a real root");
                h1 *= fac.f;
            }
        }
        if (h1.degree() == 0) return {{{dec.lc, g}}};  // perfect square up to a constant
        // keep the odd part at the input's own scale: perturbations are absolute,
        // so normalizing here would shrink the feasible range by the lead size
        return decompose_positive(h1.scaled(dec.lc), true, h, Rational(1), g);
    }
    // too large for exact pre-tests: run the numeric core directly; the exact
    // residual checks (or an exact negative witness) still decide the outcome
    return decompose_positive(h, false, h, Rational(1), UPoly(Rational(1)));
}

bool verify_weighted_sos(const UPoly& h, const WeightedSOS& sos) {
    UPoly acc;
    for (const auto& [c, q] : sos.terms) {
        if (c <= 0) return false;
        acc += (q * q).scaled(c);
    }
    return acc == h;
}

unsigned height(const WeightedSOS& sos) {
    unsigned m = 1;
    for (const auto& [c, q] : sos.terms) m = std::max({m, height(c), height(q)});
    return m;
}

}  // namespace gradsos
