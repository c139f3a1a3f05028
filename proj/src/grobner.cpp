#include "gradsos/grobner.hpp"

#include "gradsos/errors.hpp"
#include "gradsos/univar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace gradsos {

namespace {

// Work representation: terms sorted descending in lex (x1 < ... < xn, so xn
// is the most significant variable).  The map-backed MPoly stays graded for
// printing; everything here runs on sorted vectors.
using Term = std::pair<Monomial, Rational>;
using TermVec = std::vector<Term>;
using Ord = bool (*)(const Monomial&, const Monomial&);

TermVec tv_from(const MPoly& p, Ord ord = lex_greater) {
    TermVec v(p.terms().begin(), p.terms().end());
    std::sort(v.begin(), v.end(),
              [ord](const Term& a, const Term& b) { return ord(a.first, b.first); });
    return v;
}

MPoly tv_to(const TermVec& v, unsigned nvars) {
    MPoly p(nvars);
    for (const auto& [m, c] : v) p.add_term(m, c);
    return p;
}

// r = a - c * x^m * b, all inputs sorted, output sorted.
TermVec tv_sub_scaled(const TermVec& a, const Rational& c, const Monomial& m, const TermVec& b,
                      Ord ord) {
    TermVec r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            r.push_back(a[i++]);
            continue;
        }
        Monomial mb = b[j].first * m;
        if (i == a.size()) {
            r.emplace_back(std::move(mb), -c * b[j].second);
            ++j;
            continue;
        }
        if (a[i].first == mb) {
            Rational nc = a[i].second - c * b[j].second;
            if (nc != 0) r.emplace_back(a[i].first, std::move(nc));
            ++i, ++j;
        } else if (ord(a[i].first, mb)) {
            r.push_back(a[i++]);
        } else {
            r.emplace_back(std::move(mb), -c * b[j].second);
            ++j;
        }
    }
    return r;
}

// Full normal form (every term reduced).  Reducers must be monic.
TermVec tv_normal_form(TermVec p, const std::vector<TermVec>& basis, Ord ord) {
    TermVec out;
    while (!p.empty()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.empty()) continue;
            if (g.front().first.divides(p.front().first)) {
                Monomial q = p.front().first / g.front().first;
                p = tv_sub_scaled(p, p.front().second, q, g, ord);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            out.push_back(std::move(p.front()));
            p.erase(p.begin());
        }
    }
    return out;
}

TermVec tv_monic(TermVec p) {
    if (p.empty()) return p;
    Rational inv = Rational(1) / p.front().second;
    for (auto& [m, c] : p) c *= inv;
    return p;
}

bool is_unit_tv(const TermVec& p) {
    return !p.empty() && p.front().first.total_degree() == 0;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

// Completion with an optional budget on processed pairs: the graded warm-up
// pass is abandoned (nullopt) rather than allowed to churn on ideals where a
// graded basis is expensive and useless (the caller then completes directly in
// the requested order, which always terminates).
std::optional<std::vector<TermVec>> buchberger_tv(std::vector<TermVec> basis, Ord ord,
                                                  std::size_t budget = SIZE_MAX) {
    // drop zeros, normalize
    std::erase_if(basis, [](const TermVec& p) { return p.empty(); });
    for (auto& p : basis) p = tv_monic(std::move(p));
    for (const auto& p : basis)
        if (is_unit_tv(p)) return {{TermVec{{p.front().first, Rational(1)}}}};

    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> handled;
    auto queue_pair = [&](std::size_t i, std::size_t j) {
        const Monomial &a = basis[i].front().first, &b = basis[j].front().first;
        Monomial l = Monomial::lcm(a, b);
        // product criterion: coprime leading terms reduce to zero
        if (l.total_degree() == a.total_degree() + b.total_degree()) {
            handled.insert({i, j});
            return;
        }
        pending.push_back({i, j, std::move(l)});
    };
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) queue_pair(i, j);

    std::size_t processed = 0;
    while (!pending.empty()) {
        if (processed++ >= budget) return std::nullopt;
        // normal strategy: smallest lcm in the term order, ties by index
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k) {
            if (ord(pending[best].lcm, pending[k].lcm) ||
                (pending[best].lcm == pending[k].lcm &&
                 std::tie(pending[k].i, pending[k].j) < std::tie(pending[best].i, pending[best].j)))
                best = k;
        }
        Pair pr = std::move(pending[best]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
        handled.insert({pr.i, pr.j});

        // chain criterion: some basis element divides the lcm and both side
        // pairs are already settled
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j || basis[k].empty()) continue;
            if (!basis[k].front().first.divides(pr.lcm)) continue;
            auto key = [&](std::size_t a, std::size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (handled.count(key(pr.i, k)) && handled.count(key(pr.j, k))) skip = true;
        }
        if (skip) continue;

        const TermVec &f = basis[pr.i], &g = basis[pr.j];
        // s-polynomial (both monic): x^(lcm/ltf) f - x^(lcm/ltg) g
        TermVec s;
        {
            Monomial mf = pr.lcm / f.front().first;
            TermVec shifted;
            shifted.reserve(f.size());
            for (const auto& [m, c] : f) shifted.emplace_back(m * mf, c);
            s = tv_sub_scaled(shifted, Rational(1), pr.lcm / g.front().first, g, ord);
        }
        TermVec h = tv_normal_form(std::move(s), basis, ord);
        if (h.empty()) continue;
        if (is_unit_tv(h))
            return {{TermVec{{Monomial::one(h.front().first.e.size()), Rational(1)}}}};
        h = tv_monic(std::move(h));
        if (budget != SIZE_MAX) {
            // a budgeted run is a warm-up: runaway coefficient growth is the
            // churn signature even when the pair count stays small
            unsigned hh = 0;
            for (const auto& [m, c] : h) hh = std::max(hh, height(c));
            if (hh > 8192) return std::nullopt;
        }
        std::size_t idx = basis.size();
        basis.push_back(std::move(h));
        for (std::size_t i = 0; i < idx; ++i)
            if (!basis[i].empty()) queue_pair(i, idx);
    }

    // interreduce to the reduced basis
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].empty()) continue;
            TermVec self = std::move(basis[i]);
            basis[i].clear();
            TermVec r = tv_normal_form(self, basis, ord);
            if (!r.empty()) r = tv_monic(std::move(r));
            if (r != self) changed = true;
            basis[i] = std::move(r);
        }
    }
    std::erase_if(basis, [](const TermVec& p) { return p.empty(); });
    std::sort(basis.begin(), basis.end(), [ord](const TermVec& a, const TermVec& b) {
        return ord(b.front().first, a.front().first);
    });
    return {std::move(basis)};
}

struct LexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return lex_greater(b, a); }
};

// Quotient basis of a zero-dimensional ideal: the pure-power bounds in the
// leading terms certify finiteness and box the staircase; every monomial
// under the staircase is collected, sorted ascending in grlex.  nullopt when
// some variable has no pure power (infinite quotient).
std::optional<std::vector<Monomial>> staircase_of(const std::vector<TermVec>& gb, unsigned n) {
    std::vector<unsigned> box(n, 0);
    for (unsigned v = 0; v < n; ++v) {
        for (const auto& g : gb) {
            const Monomial& lt = g.front().first;
            bool pure = lt.e[v] > 0;
            for (unsigned u = 0; u < n && pure; ++u)
                if (u != v && lt.e[u] != 0) pure = false;
            if (pure) box[v] = box[v] ? std::min(box[v], lt.e[v]) : lt.e[v];
        }
        if (box[v] == 0) return std::nullopt;
    }
    std::vector<Monomial> stair;
    Monomial m = Monomial::one(n);
    for (;;) {
        bool standard = true;
        for (const auto& g : gb)
            if (g.front().first.divides(m)) {
                standard = false;
                break;
            }
        if (standard) stair.push_back(m);
        unsigned v = 0;
        while (v < n) {
            if (++m.e[v] < box[v]) break;
            m.e[v] = 0;
            ++v;
        }
        if (v == n) break;
    }
    std::sort(stair.begin(), stair.end(),
              [](const Monomial& a, const Monomial& b) { return grlex_greater(b, a); });
    return stair;
}

// Lex basis of a zero-dimensional ideal out of a graded one, by linear algebra
// in the finite quotient: walk the monomials in increasing lex order, express
// each normal form in quotient coordinates, and harvest a basis element
// whenever a linear dependency appears.  Completion run directly in lex is
// notorious for intermediate blowup; this route keeps all arithmetic inside a
// delta-dimensional vector space.
std::vector<TermVec> graded_to_lex(const std::vector<TermVec>& gb,
                                   const std::vector<Monomial>& stair, unsigned n) {
    std::map<Monomial, std::size_t, LexLess> index;
    for (std::size_t i = 0; i < stair.size(); ++i) index[stair[i]] = i;
    const std::size_t D = stair.size();

    auto nf_vec = [&](const Monomial& m) {
        TermVec nf = tv_normal_form(TermVec{{m, Rational(1)}}, gb, grlex_greater);
        std::vector<Rational> v(D, Rational(0));
        for (const auto& [mm, c] : nf) {
            auto it = index.find(mm);
            if (it == index.end()) throw Error("internal: normal form escaped the quotient basis");
            v[it->second] = c;
        }
        return v;
    };

    // rows are kept fully reduced against each other (unit pivot, pivot column
    // clear elsewhere); expr records the monomial combination behind each row
    struct Row {
        std::vector<Rational> vec;
        std::vector<std::pair<Monomial, Rational>> expr;
        std::size_t pivot;
    };
    std::vector<Row> rows;
    std::vector<TermVec> out;
    std::vector<Monomial> lex_lts;
    std::set<Monomial, LexLess> queue;
    queue.insert(Monomial::one(n));

    auto expr_axpy = [](std::vector<std::pair<Monomial, Rational>>& dst, const Rational& c,
                        const std::vector<std::pair<Monomial, Rational>>& src) {
        for (const auto& [m, cc] : src) {
            bool found = false;
            for (auto& [dm, dc] : dst)
                if (dm == m) {
                    dc += c * cc;
                    found = true;
                    break;
                }
            if (!found) dst.emplace_back(m, c * cc);
        }
    };

    while (!queue.empty()) {
        Monomial m = *queue.begin();
        queue.erase(queue.begin());
        bool covered = false;
        for (const auto& lt : lex_lts)
            if (lt.divides(m)) {
                covered = true;
                break;
            }
        if (covered) continue;

        std::vector<Rational> v = nf_vec(m);
        std::vector<std::pair<Monomial, Rational>> expr{{m, Rational(1)}};
        for (const auto& r : rows) {
            Rational c = v[r.pivot];
            if (c == 0) continue;
            for (std::size_t t = 0; t < D; ++t)
                if (r.vec[t] != 0) v[t] -= c * r.vec[t];
            expr_axpy(expr, -c, r.expr);
        }
        std::size_t piv = D;
        for (std::size_t t = 0; t < D; ++t)
            if (v[t] != 0) {
                piv = t;
                break;
            }
        if (piv == D) {
            // dependency: monic lex basis element with leading monomial m
            TermVec g;
            g.reserve(expr.size());
            for (auto& [mm, cc] : expr)
                if (cc != 0) g.emplace_back(mm, cc);
            std::sort(g.begin(), g.end(),
                      [](const Term& a, const Term& b) { return lex_greater(a.first, b.first); });
            out.push_back(std::move(g));
            lex_lts.push_back(m);
            continue;
        }
        Rational inv = Rational(1) / v[piv];
        for (auto& c : v) c *= inv;
        for (auto& [mm, cc] : expr) cc *= inv;
        for (auto& r : rows) {
            Rational c = r.vec[piv];
            if (c == 0) continue;
            for (std::size_t t = 0; t < D; ++t)
                if (v[t] != 0) r.vec[t] -= c * v[t];
            expr_axpy(r.expr, -c, expr);
        }
        rows.push_back({std::move(v), std::move(expr), piv});
        if (rows.size() > D) throw Error("internal: quotient dimension overflow");
        for (unsigned i = 0; i < n; ++i) {
            Monomial nm = m;
            ++nm.e[i];
            queue.insert(nm);
        }
    }

    std::sort(out.begin(), out.end(), [](const TermVec& a, const TermVec& b) {
        return lex_greater(b.front().first, a.front().first);
    });
    return out;
}

// ---- modular shortcut for the order change -------------------------------
//
// The lex bases this library lives on are in shape position: one univariate
// element in x1 whose degree matches the quotient dimension, plus one linear
// element per remaining variable.  Their coefficients are cheap to obtain
// modulo word-size primes, and the reconstructed result is certified exactly
// afterwards (every generator reduces to zero against the candidate, and the
// candidate's quotient has the same dimension as the graded one), so an
// unlucky prime can never leak into the output - it only costs a retry.
// Ideals whose lex basis is not in shape position take the rational walk.

using U64 = std::uint64_t;

U64 mulmod_u(U64 a, U64 b, U64 p) {
    return static_cast<U64>((static_cast<unsigned __int128>(a) * b) % p);
}

U64 powmod_u(U64 a, U64 e, U64 p) {
    U64 r = 1;
    while (e) {
        if (e & 1) r = mulmod_u(r, a, p);
        a = mulmod_u(a, a, p);
        e >>= 1;
    }
    return r;
}

// deterministic Miller-Rabin below 2^64
bool is_prime_u64(U64 x) {
    constexpr U64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (U64 b : bases)
        if (x % b == 0) return x == b;
    if (x < 2) return false;
    U64 d = x - 1;
    unsigned s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (U64 b : bases) {
        U64 t = powmod_u(b, d, x);
        if (t == 1 || t == x - 1) continue;
        bool witness = true;
        for (unsigned r = 1; r < s && witness; ++r) {
            t = mulmod_u(t, t, x);
            if (t == x - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

U64 prev_prime_u64(U64 x) {
    x -= (x % 2 == 0) ? 1 : 2;
    while (!is_prime_u64(x)) x -= 2;
    return x;
}

using PTerm = std::pair<Monomial, U64>;
using PVec = std::vector<PTerm>;  // grlex-descending, coefficients nonzero

// image of a term vector; nullopt when a denominator vanishes mod prime
std::optional<PVec> pv_from(const TermVec& p, U64 prime) {
    PVec out;
    out.reserve(p.size());
    for (const auto& [m, c] : p) {
        U64 den = mpz_fdiv_ui(denominator(c).backend().data(), prime);
        if (den == 0) return std::nullopt;
        U64 num = mpz_fdiv_ui(numerator(c).backend().data(), prime);
        U64 v = mulmod_u(num, powmod_u(den, prime - 2, prime), prime);
        if (v != 0) out.emplace_back(m, v);
    }
    return out;
}

// r = a - c * x^m * b mod prime, same merge as the rational version
PVec pv_sub_scaled(const PVec& a, U64 c, const Monomial& m, const PVec& b, U64 prime) {
    PVec r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            r.push_back(a[i++]);
            continue;
        }
        Monomial mb = b[j].first * m;
        U64 t = mulmod_u(c, b[j].second, prime);
        if (i == a.size()) {
            r.emplace_back(std::move(mb), prime - t);
            ++j;
            continue;
        }
        if (a[i].first == mb) {
            U64 nc = a[i].second >= t ? a[i].second - t : a[i].second + prime - t;
            if (nc) r.emplace_back(a[i].first, nc);
            ++i, ++j;
        } else if (grlex_greater(a[i].first, mb)) {
            r.push_back(a[i++]);
        } else {
            r.emplace_back(std::move(mb), prime - t);
            ++j;
        }
    }
    return r;
}

// full normal form against the monic basis images
PVec pv_nf(PVec p, const std::vector<PVec>& basis, U64 prime) {
    PVec out;
    while (!p.empty()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.front().first.divides(p.front().first)) {
                Monomial q = p.front().first / g.front().first;
                p = pv_sub_scaled(p, p.front().second, q, g, prime);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            out.push_back(std::move(p.front()));
            p.erase(p.begin());
        }
    }
    return out;
}

// One prime's walk.  Powers of x1 are pushed through the quotient until the
// first dependency; in shape position that happens exactly at the quotient
// dimension, the x1-rows then span, and each remaining variable yields its
// linear element by elimination.  Output: per element, the dense tail over
// 1, x1, ..., x1^(D-1), in element order [w, x2 - v2, ..., xn - vn].
// nullopt: bad prime, or the lex basis mod prime is not in shape position.
std::optional<std::vector<std::vector<U64>>> shape_walk_mod_p(const std::vector<TermVec>& gb,
                                                              const std::vector<Monomial>& stair,
                                                              unsigned n, U64 prime) {
    std::vector<PVec> basis;
    basis.reserve(gb.size());
    for (const auto& g : gb) {
        auto img = pv_from(g, prime);
        if (!img) return std::nullopt;
        basis.push_back(std::move(*img));
    }
    const std::size_t D = stair.size();
    std::map<Monomial, std::size_t, LexLess> index;
    for (std::size_t i = 0; i < D; ++i) index[stair[i]] = i;

    auto to_vec = [&](const PVec& nf) {
        std::vector<U64> v(D, 0);
        for (const auto& [m, c] : nf) {
            auto it = index.find(m);
            if (it == index.end()) throw Error("internal: normal form escaped the quotient basis");
            v[it->second] = c;
        }
        return v;
    };

    // rows in echelon form; expr spans the enumerated powers of x1
    struct PRow {
        std::vector<U64> vec, expr;
        std::size_t pivot;
    };
    std::vector<PRow> rows;
    auto eliminate_in = [&](std::vector<U64>& v, std::vector<U64>& expr) {
        for (const auto& r : rows) {
            U64 c = v[r.pivot];
            if (c == 0) continue;
            for (std::size_t t = 0; t < D; ++t)
                if (r.vec[t]) {
                    U64 s = mulmod_u(c, r.vec[t], prime);
                    v[t] = v[t] >= s ? v[t] - s : v[t] + prime - s;
                }
            for (std::size_t t = 0; t < r.expr.size(); ++t)
                if (r.expr[t]) {
                    U64 s = mulmod_u(c, r.expr[t], prime);
                    expr[t] = expr[t] >= s ? expr[t] - s : expr[t] + prime - s;
                }
        }
    };

    std::vector<std::vector<U64>> tails;
    PVec nf_pow{{Monomial::one(n), 1}};  // normal form of x1^k, staircase support
    nf_pow = pv_nf(std::move(nf_pow), basis, prime);
    for (std::size_t k = 0;; ++k) {
        std::vector<U64> v = to_vec(nf_pow);
        std::vector<U64> expr(D + 1, 0);
        expr[k] = 1;
        eliminate_in(v, expr);
        std::size_t piv = D;
        for (std::size_t t = 0; t < D; ++t)
            if (v[t]) {
                piv = t;
                break;
            }
        if (piv == D) {
            // dependency: ascending order needs it at exactly x1^D
            if (k != D) return std::nullopt;
            tails.emplace_back(expr.begin(), expr.begin() + static_cast<std::ptrdiff_t>(D));
            break;
        }
        if (k == D) return std::nullopt;  // full rank yet no dependency: not shape
        U64 inv = powmod_u(v[piv], prime - 2, prime);
        for (auto& c : v) c = mulmod_u(c, inv, prime);
        for (auto& c : expr) c = mulmod_u(c, inv, prime);
        for (auto& r : rows) {
            U64 c = r.vec[piv];
            if (c == 0) continue;
            for (std::size_t t = 0; t < D; ++t)
                if (v[t]) {
                    U64 s = mulmod_u(c, v[t], prime);
                    r.vec[t] = r.vec[t] >= s ? r.vec[t] - s : r.vec[t] + prime - s;
                }
            for (std::size_t t = 0; t < expr.size(); ++t)
                if (expr[t]) {
                    U64 s = mulmod_u(c, expr[t], prime);
                    r.expr.resize(std::max(r.expr.size(), expr.size()), 0);
                    r.expr[t] = r.expr[t] >= s ? r.expr[t] - s : r.expr[t] + prime - s;
                }
        }
        rows.push_back({std::move(v), std::move(expr), piv});
        // next power of x1
        PVec shifted;
        shifted.reserve(nf_pow.size());
        Monomial x1 = Monomial::one(n);
        ++x1.e[0];
        for (const auto& [m, c] : nf_pow) shifted.emplace_back(m * x1, c);
        nf_pow = pv_nf(std::move(shifted), basis, prime);
    }

    // x1-rows now span the quotient: each remaining variable eliminates fully
    for (unsigned j = 1; j < n; ++j) {
        Monomial xj = Monomial::one(n);
        ++xj.e[j];
        std::vector<U64> v = to_vec(pv_nf(PVec{{xj, 1}}, basis, prime));
        std::vector<U64> expr(D + 1, 0);
        eliminate_in(v, expr);
        for (std::size_t t = 0; t < D; ++t)
            if (v[t]) throw Error("internal: spanning rows failed to eliminate");
        tails.emplace_back(expr.begin(), expr.begin() + static_cast<std::ptrdiff_t>(D));
    }
    return tails;
}

// a/b = x mod M with |a|, b <= sqrt(M/2), when such a pair exists
std::optional<Rational> rat_reconstruct(const Int& x, const Int& M) {
    Int r0 = M, s0 = 0, r1 = x, s1 = 1;
    Int half = M >> 1;
    Int bound = sqrt(half);
    while (r1 > bound) {
        Int q = r0 / r1;
        r0 -= q * r1;
        s0 -= q * s1;
        std::swap(r0, r1);
        std::swap(s0, s1);
    }
    if (s1 == 0) return std::nullopt;
    Int a = r1, b = s1;
    if (b < 0) {
        a = -a;
        b = -b;
    }
    if (b > bound || gcd(a, b) != 1) return std::nullopt;
    return Rational(a, b);
}

std::optional<std::vector<TermVec>> shape_modular_lex(const std::vector<TermVec>& gb,
                                                      const std::vector<TermVec>& gens_lex,
                                                      const std::vector<Monomial>& stair,
                                                      unsigned n) {
    const std::size_t D = stair.size();
    std::vector<std::vector<Int>> acc(n, std::vector<Int>(D, 0));
    Int M = 1;
    U64 prime = U64(1) << 62;
    // the linear elements routinely carry coefficients thousands of bits
    // tall even when the univariate one stays small, so the prime budget is
    // sized for them, not for w
    int used = 0, misses = 0;
    for (int attempt = 0; attempt < 220 && used < 200; ++attempt) {
        prime = prev_prime_u64(prime);
        auto tails = shape_walk_mod_p(gb, stair, n, prime);
        if (!tails) {
            // a consistent verdict before any success means genuinely not
            // shape; after a success it is just an unlucky prime
            if (++misses >= 3 && used == 0) return std::nullopt;
            continue;
        }
        U64 minv = powmod_u(mpz_fdiv_ui(M.backend().data(), prime), prime - 2, prime);
        for (unsigned e = 0; e < n; ++e)
            for (std::size_t k = 0; k < D; ++k) {
                U64 cur = mpz_fdiv_ui(acc[e][k].backend().data(), prime);
                U64 want = (*tails)[e][k];
                U64 delta =
                    mulmod_u(want >= cur ? want - cur : want + prime - cur, minv, prime);
                acc[e][k] += M * Int(delta);
            }
        M *= Int(prime);
        ++used;
        if (used < 4 || used % 4 != 0) continue;

        // attempt reconstruction + exact certification
        std::vector<TermVec> cand;
        cand.reserve(n);
        bool ok = true;
        for (unsigned e = 0; e < n && ok; ++e) {
            TermVec g;
            Monomial lead = Monomial::one(n);
            if (e == 0)
                lead.e[0] = static_cast<unsigned>(D);
            else
                lead.e[e] = 1;
            g.emplace_back(lead, Rational(1));
            for (std::size_t k = D; k-- > 0;) {
                auto c = rat_reconstruct(acc[e][k], M);
                if (!c) {
                    ok = false;
                    break;
                }
                if (*c != 0) {
                    Monomial m = Monomial::one(n);
                    m.e[0] = static_cast<unsigned>(k);
                    g.emplace_back(std::move(m), std::move(*c));
                }
            }
            cand.push_back(std::move(g));
        }
        if (!ok) continue;
        // pairwise-coprime leads make the candidate a lex basis of its own
        // ideal, with quotient dimension D; the generators reducing to zero
        // pins that ideal to the input's (equal finite dimensions both ways)
        for (const auto& gen : gens_lex)
            if (!tv_normal_form(gen, cand, lex_greater).empty()) {
                ok = false;
                break;
            }
        if (ok) return cand;
    }
    return std::nullopt;
}

}  // namespace

std::vector<MPoly> gradient_ideal(const MPoly& f) {
    std::vector<MPoly> g;
    g.reserve(f.nvars());
    for (unsigned i = 1; i <= f.nvars(); ++i) g.push_back(f.partial_derivative(i));
    return g;
}

std::vector<MPoly> buchberger_lex(const std::vector<MPoly>& gens) {
    if (gens.empty()) return {};
    unsigned n = gens.front().nvars();
    // complete in a graded order first (cheap for the finite-quotient ideals
    // this library lives on), then change order by linear algebra; anything
    // else - infinite quotient, or a graded run that starts to churn - takes
    // the direct lex completion instead
    std::vector<TermVec> in;
    in.reserve(gens.size());
    for (const auto& g : gens) in.push_back(tv_from(g, grlex_greater));
    std::optional<std::vector<TermVec>> out;
    if (auto graded = buchberger_tv(std::move(in), grlex_greater, 300)) {
        if (graded->size() == 1 && is_unit_tv(graded->front())) {
            out = std::move(graded);
        } else if (auto stair = staircase_of(*graded, n)) {
            std::vector<TermVec> gens_lex;
            gens_lex.reserve(gens.size());
            for (const auto& g : gens) gens_lex.push_back(tv_from(g));
            out = shape_modular_lex(*graded, gens_lex, *stair, n);
            if (!out) out = graded_to_lex(*graded, *stair, n);
        }
    }
    if (!out) {
        std::vector<TermVec> in2;
        in2.reserve(gens.size());
        for (const auto& g : gens) in2.push_back(tv_from(g, lex_greater));
        out = buchberger_tv(std::move(in2), lex_greater);
    }
    std::vector<MPoly> res;
    res.reserve(out->size());
    for (const auto& p : *out) res.push_back(tv_to(p, n));
    return res;
}

MPoly normal_form(const MPoly& p, const std::vector<MPoly>& gb) {
    std::vector<TermVec> basis;
    basis.reserve(gb.size());
    for (const auto& g : gb) basis.push_back(tv_monic(tv_from(g)));
    return tv_to(tv_normal_form(tv_from(p), basis, lex_greater), p.nvars());
}

bool is_zero_dimensional(const std::vector<MPoly>& gb) {
    if (gb.empty()) return false;
    unsigned n = gb.front().nvars();
    for (const auto& g : gb)  // unit ideal: empty variety
        if (!g.is_zero() && g.is_constant()) return true;
    for (unsigned v = 0; v < n; ++v) {
        bool found = false;
        for (const auto& g : gb) {
            if (g.is_zero()) continue;
            Monomial lt = tv_from(g).front().first;
            if (lt.e[v] == 0) continue;
            bool pure = true;
            for (unsigned u = 0; u < n && pure; ++u)
                if (u != v && lt.e[u] != 0) pure = false;
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

unsigned quotient_dimension(const std::vector<MPoly>& gb) {
    unsigned n = gb.front().nvars();
    std::vector<Monomial> lts;
    std::vector<unsigned> box(n, 0);
    for (const auto& g : gb) {
        Monomial lt = tv_from(g).front().first;
        for (unsigned v = 0; v < n; ++v) {
            bool pure = lt.e[v] > 0;
            for (unsigned u = 0; u < n && pure; ++u)
                if (u != v && lt.e[u] != 0) pure = false;
            if (pure) box[v] = box[v] ? std::min(box[v], lt.e[v]) : lt.e[v];
        }
        lts.push_back(std::move(lt));
    }
    // enumerate standard monomials inside the box
    unsigned count = 0;
    Monomial m = Monomial::one(n);
    for (;;) {
        bool standard = true;
        for (const auto& lt : lts)
            if (lt.divides(m)) {
                standard = false;
                break;
            }
        if (standard) ++count;
        unsigned v = 0;
        while (v < n) {
            if (++m.e[v] < box[v]) break;
            m.e[v] = 0;
            ++v;
        }
        if (v == n) break;
    }
    return count;
}

std::optional<ShapeBasis> to_shape_basis(const std::vector<MPoly>& gb) {
    if (gb.empty()) return std::nullopt;
    unsigned n = gb.front().nvars();
    if (gb.size() != n) return std::nullopt;
    ShapeBasis sb;
    sb.nvars = n;
    sb.v.assign(n - 1, UPoly());
    std::vector<bool> seen(n + 1, false);
    for (const auto& g : gb) {
        // classify by leading term
        Monomial lt = tv_from(g).front().first;
        unsigned var = 0;
        for (unsigned v = 0; v < n; ++v)
            if (lt.e[v] != 0) var = v + 1;
        bool pure = true;
        for (unsigned v = 0; v < n; ++v)
            if (v != var - 1 && lt.e[v] != 0) pure = false;
        if (var == 0 || !pure || seen[var]) return std::nullopt;
        seen[var] = true;
        if (var == 1) {
            UPoly w;
            try {
                w = g.to_upoly(1);
            } catch (const std::invalid_argument&) {
                return std::nullopt;
            }
            if (w.lc() != 1) return std::nullopt;
            sb.w = std::move(w);
        } else {
            if (lt.e[var - 1] != 1) return std::nullopt;
            // must be x_var - v(x1): strip the leading variable, rest univariate in x1
            MPoly tail = g - MPoly::variable(var, n);
            UPoly mv;
            try {
                mv = tail.to_upoly(1);
            } catch (const std::invalid_argument&) {
                return std::nullopt;
            }
            sb.v[var - 2] = -mv;
        }
    }
    for (unsigned v = 1; v <= n; ++v)
        if (!seen[v]) return std::nullopt;
    for (const auto& vi : sb.v)
        if (vi.degree() >= sb.w.degree()) return std::nullopt;
    return sb;
}

bool is_radical_shape(const ShapeBasis& sb) { return is_squarefree(sb.w); }

MPoly apply_change_of_variables(const MPoly& f, const ChangeOfVariables& T, bool inverse) {
    unsigned n = T.nvars;
    MPoly rep = MPoly::variable(1, n);
    Rational jp(1);
    for (unsigned i = 2; i <= n; ++i) {
        jp *= Rational(static_cast<long>(T.j));
        MPoly term = MPoly::variable(i, n).scaled(jp);
        rep = inverse ? rep - term : rep + term;
    }
    return f.substituted(1, rep);
}

namespace {

struct SeparatedShape {
    ChangeOfVariables T;
    std::vector<MPoly> gb;
    ShapeBasis sb;
    MPoly work;
};

std::optional<SeparatedShape> try_separating(const MPoly& f, unsigned delta) {
    unsigned n = f.nvars();
    unsigned long bound =
        static_cast<unsigned long>(n - 1) * delta * (delta > 0 ? delta - 1 : 0) / 2;
    for (unsigned long j = 1; j <= bound; ++j) {
        ChangeOfVariables T{static_cast<unsigned>(j), n};
        MPoly g = apply_change_of_variables(f, T, true);
        std::vector<MPoly> gb = buchberger_lex(gradient_ideal(g));
        auto sb = to_shape_basis(gb);
        if (sb) return SeparatedShape{T, std::move(gb), std::move(*sb), std::move(g)};
    }
    return std::nullopt;
}

}  // namespace

ChangeOfVariables find_separating_j(const MPoly& f, unsigned delta) {
    auto s = try_separating(f, delta);
    if (!s)
        throw HypothesisViolated(
            "no separating change of variables within the search bound; "
            "the gradient ideal cannot be put in shape position");
    return s->T;
}

GradientShape shape_of_gradient_ideal(const MPoly& f) {
    std::vector<MPoly> gb = buchberger_lex(gradient_ideal(f));
    if (gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero())
        throw HypothesisViolated("gradient ideal is the unit ideal: f has no critical points");
    if (!is_zero_dimensional(gb))
        throw HypothesisViolated("gradient ideal is not zero-dimensional");
    if (auto sb = to_shape_basis(gb)) return {std::move(gb), std::move(*sb), std::nullopt, f};
    unsigned delta = quotient_dimension(gb);
    auto s = try_separating(f, delta);
    if (!s)
        throw HypothesisViolated(
            "no separating change of variables within the search bound; "
            "the gradient ideal cannot be put in shape position");
    return {std::move(s->gb), std::move(s->sb), s->T, std::move(s->work)};
}

}  // namespace gradsos
