#include "gradsos/univar.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <cstdint>
#include <stdexcept>

namespace gradsos {

std::pair<UPoly, UPoly> euclid_div(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    UPoly q, r(a);
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        unsigned k = static_cast<unsigned>(r.degree() - db);
        Rational c = r.lc() / b.lc();
        UPoly t = UPoly::monomial(k, c);
        q += t;
        r -= t * b;
    }
    return {q, r};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = euclid_div(a, b);
    if (!r.is_zero()) throw std::invalid_argument("exact_div: division is not exact");
    return q;
}

// ---- integer-cleared machinery (Sturm chains, gcd) ----

namespace {

using IPoly = std::vector<Int>;  // coefficient i of x^i, trailing zeros trimmed

void itrim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int ideg(const IPoly& p) { return static_cast<int>(p.size()) - 1; }

// Strip the (positive) content; the sign of the polynomial is preserved.
void iprim(IPoly& p) {
    Int g(0);
    for (const auto& c : p) g = boost::integer::gcd(g, c);
    if (g <= 1) return;
    for (auto& c : p) c /= g;
}

IPoly ideriv(const IPoly& p) {
    IPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Int(static_cast<long>(i)));
    itrim(d);
    return d;
}

// Clear denominators and strip content.  The result is a positive multiple
// of p, so signs everywhere on R are preserved.
IPoly to_iprim(const UPoly& p) {
    Int L(1);
    for (const auto& c : p.coeffs()) L = boost::integer::lcm(L, Int(denominator(c)));
    IPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(Int(numerator(c)) * (L / Int(denominator(c))));
    itrim(out);
    iprim(out);
    return out;
}

UPoly from_ipoly(const IPoly& p) {
    std::vector<Rational> cs;
    cs.reserve(p.size());
    for (const auto& c : p) cs.emplace_back(c);
    return UPoly(std::move(cs));
}

// Pseudo-remainder of a by b scaled so the implied multiplier of `a` is
// positive: returns r with m*a = q*b + r for some m > 0.  pre: b != 0.
IPoly iprem_pos(IPoly r, const IPoly& b) {
    const Int& l = b.back();
    int db = ideg(b);
    unsigned steps = 0;
    while (ideg(r) >= db && !r.empty()) {
        Int top = r.back();
        std::size_t shift = r.size() - b.size();
        for (std::size_t i = 0; i < r.size(); ++i) r[i] *= l;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= top * b[i];
        itrim(r);
        ++steps;
    }
    if (l < 0 && (steps & 1u))
        for (auto& c : r) c = -c;
    return r;
}

IPoly igcd(IPoly a, IPoly b) {
    itrim(a);
    itrim(b);
    if (ideg(a) < ideg(b)) std::swap(a, b);
    while (!b.empty()) {
        IPoly r = iprem_pos(a, b);
        iprim(r);
        a = std::move(b);
        b = std::move(r);
    }
    iprim(a);
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

// Sign of p at the rational point x = n/d (d > 0), via p(n/d) * d^deg.
int ieval_sign(const IPoly& p, const Rational& x) {
    if (p.empty()) return 0;
    Int n = numerator(x), d = denominator(x);
    Int acc(0), dp(1);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * n + p[i] * dp;
        if (i > 0) dp *= d;
    }
    return acc == 0 ? 0 : (acc > 0 ? 1 : -1);
}

struct SturmChain {
    std::vector<IPoly> chain;

    explicit SturmChain(const IPoly& squarefree) {
        chain.push_back(squarefree);
        IPoly d = ideriv(squarefree);
        iprim(d);
        if (!d.empty()) chain.push_back(std::move(d));
        while (chain.size() >= 2 && !chain.back().empty()) {
            IPoly r = iprem_pos(chain[chain.size() - 2], chain.back());
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            iprim(r);
            chain.push_back(std::move(r));
        }
    }

    // Sign variations at x, zeros dropped.  This gives the chain half-open
    // interval semantics: count over (a, b] is v(a) - v(b).
    int variations(const Rational& x) const {
        int v = 0, prev = 0;
        for (const auto& p : chain) {
            int s = ieval_sign(p, x);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }
};

IPoly isquarefree_part(const UPoly& h) {
    IPoly p = to_iprim(h);
    if (ideg(p) <= 0) return p;
    IPoly g = igcd(p, ideriv(p));
    if (ideg(g) <= 0) return p;
    UPoly q = exact_div(from_ipoly(p), from_ipoly(g));
    return to_iprim(q);
}

}  // namespace

UPoly gcd_upoly(UPoly a, UPoly b) {
    if (a.is_zero() && b.is_zero()) return UPoly();
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    IPoly g = igcd(to_iprim(a), to_iprim(b));
    return from_ipoly(g).monic();
}

ExtGcd ext_gcd(const UPoly& a, const UPoly& b) {
    // classic extended Euclid over Q with Bezout tracking
    UPoly r0(a), r1(b);
    UPoly s0(Rational(1)), s1, t0, t1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r2] = euclid_div(r0, r1);
        UPoly s2 = s0 - q * s1;
        UPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {UPoly(), UPoly(), UPoly()};
    Rational inv = Rational(1) / r0.lc();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

SquarefreeDecomposition squarefree_decomposition(const UPoly& h) {
    if (h.is_zero()) throw std::invalid_argument("squarefree decomposition of 0");
    SquarefreeDecomposition out;
    out.lc = h.lc();
    if (h.degree() == 0) return out;
    UPoly f = h.monic();
    UPoly g = gcd_upoly(f, f.derivative());
    // Yun's algorithm
    UPoly c = exact_div(f, g);
    UPoly d = exact_div(f.derivative(), g) - c.derivative();
    unsigned i = 1;
    while (c.degree() > 0) {
        UPoly p = gcd_upoly(c, d);
        c = exact_div(c, p);
        d = exact_div(d, p) - c.derivative();
        if (p.degree() > 0) out.factors.push_back({p, i});
        ++i;
    }
    return out;
}

namespace {

// gcd(p, p') over F_prime has degree 0 => p is squarefree over Q (the
// modular gcd degree only ever overshoots).  One-sided and cheap; callers
// fall back to the exact gcd when it does not certify.
bool squarefree_mod_p(const IPoly& p, std::uint64_t prime) {
    if (p.back() % Int(prime) == 0) return false;  // bad prime, no verdict
    auto mulmod = [prime](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % prime);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    std::vector<std::uint64_t> a, b;
    a.reserve(p.size());
    for (const auto& c : p) {
        Int m = c % Int(prime);
        if (m < 0) m += Int(prime);
        a.push_back(m.convert_to<std::uint64_t>());
    }
    for (std::size_t i = 1; i < a.size(); ++i) b.push_back(mulmod(a[i], i % prime));
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t inv = powmod(b.back(), prime - 2);
        while (a.size() >= b.size()) {
            std::uint64_t c = mulmod(a.back(), inv);
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t s = mulmod(c, b[i]);
                a[off + i] = (a[off + i] + prime - s) % prime;
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.size() == 1;
}

}  // namespace

bool is_squarefree(const UPoly& h) {
    if (h.is_zero() || h.degree() == 0) return !h.is_zero();
    IPoly p = to_iprim(h);
    for (std::uint64_t prime : {2305843009213693951ull, 4611686018427387847ull, 9223372036854775783ull})
        if (squarefree_mod_p(p, prime)) return true;
    return igcd(p, ideriv(p)).size() == 1;
}

Rational root_bound(const UPoly& h) {
    if (h.is_zero()) throw std::invalid_argument("root bound of the zero polynomial");
    Rational m(0);
    for (int i = 0; i < h.degree(); ++i) {
        Rational a = h[static_cast<std::size_t>(i)] / h.lc();
        if (a < 0) a = -a;
        if (a > m) m = a;
    }
    return m + 1;
}

int count_real_roots(const UPoly& h) {
    if (h.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
    if (h.degree() == 0) return 0;
    Rational b = root_bound(h);
    return count_real_roots(h, -b, b);
}

int count_real_roots(const UPoly& h, const Rational& a, const Rational& b) {
    if (h.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
    if (h.degree() == 0) return 0;
    if (a >= b) return 0;
    SturmChain chain(isquarefree_part(h));
    return chain.variations(a) - chain.variations(b);
}

bool is_nonnegative_on_R(const UPoly& h) {
    if (h.is_zero()) return true;
    if (h.degree() == 0) return h.lc() >= 0;
    if (h.lc() < 0) return false;
    if (h.degree() % 2 != 0) return false;
    auto dec = squarefree_decomposition(h);
    for (const auto& fac : dec.factors)
        if (fac.multiplicity % 2 == 1 && count_real_roots(fac.f) > 0) return false;
    return true;
}

}  // namespace gradsos
