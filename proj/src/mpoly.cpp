#include "gradsos/mpoly.hpp"

#include "gradsos/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace gradsos {

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
}

bool lex_greater(const Monomial& a, const Monomial& b) {
    for (std::size_t i = a.e.size(); i-- > 0;)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
}

MPoly MPoly::constant(const Rational& c, unsigned nvars) {
    MPoly p(nvars);
    if (c != 0) p.t_.emplace(Monomial::one(nvars), c);
    return p;
}

MPoly MPoly::variable(unsigned index, unsigned nvars) {
    if (index == 0 || index > nvars) throw std::invalid_argument("variable index out of range");
    MPoly p(nvars);
    Monomial m = Monomial::one(nvars);
    m.e[index - 1] = 1;
    p.t_.emplace(std::move(m), Rational(1));
    return p;
}

MPoly MPoly::from_upoly(const UPoly& p, unsigned var_index, unsigned nvars) {
    if (var_index == 0 || var_index > nvars) throw std::invalid_argument("variable index out of range");
    MPoly r(nvars);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (p[i] == 0) continue;
        Monomial m = Monomial::one(nvars);
        m.e[var_index - 1] = static_cast<unsigned>(i);
        r.t_.emplace(std::move(m), p[i]);
    }
    return r;
}

bool MPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.total_degree() == 0);
}

int MPoly::total_degree() const {
    if (t_.empty()) return -1;
    // terms are graded-ordered, so the first has maximal total degree
    return static_cast<int>(t_.begin()->first.total_degree());
}

unsigned MPoly::degree_in(unsigned var) const {
    unsigned d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.e[var - 1]);
    return d;
}

Rational MPoly::coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r(*this);
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r(*this);
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r(*this);
    for (const auto& [m, c] : o.t_) r.add_term(m, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(n_);
    for (const auto& [ma, ca] : t_)
        for (const auto& [mb, cb] : o.t_) r.add_term(ma * mb, ca * cb);
    return r;
}

MPoly MPoly::scaled(const Rational& s) const {
    MPoly r(n_);
    if (s == 0) return r;
    r.t_ = t_;
    for (auto& [m, c] : r.t_) c *= s;
    return r;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly r = constant(Rational(1), n_), b(*this);
    while (e) {
        if (e & 1u) r *= b;
        if (e >>= 1) b *= b;
    }
    return r;
}

MPoly MPoly::partial_derivative(unsigned var) const {
    MPoly r(n_);
    for (const auto& [m, c] : t_) {
        unsigned e = m.e[var - 1];
        if (e == 0) continue;
        Monomial m2(m);
        m2.e[var - 1] = e - 1;
        r.add_term(m2, c * Rational(static_cast<long>(e)));
    }
    return r;
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
    if (point.size() != n_) throw std::invalid_argument("evaluation point has wrong arity");
    Rational v(0);
    for (const auto& [m, c] : t_) {
        Rational t = c;
        for (unsigned i = 0; i < n_; ++i)
            if (m.e[i]) t *= pow_rat(point[i], m.e[i]);
        v += t;
    }
    return v;
}

std::vector<MPoly> MPoly::coeffs_in(unsigned var) const {
    std::vector<MPoly> out(degree_in(var) + 1, MPoly(n_));
    for (const auto& [m, c] : t_) {
        Monomial m2(m);
        unsigned e = m2.e[var - 1];
        m2.e[var - 1] = 0;
        out[e].add_term(m2, c);
    }
    return out;
}

MPoly MPoly::substituted(unsigned var, const MPoly& rep) const {
    if (rep.nvars() != n_) throw std::invalid_argument("substitution arity mismatch");
    std::vector<MPoly> cs = coeffs_in(var);
    MPoly acc = cs.back();
    for (std::size_t k = cs.size() - 1; k-- > 0;) acc = acc * rep + cs[k];
    return acc;
}

UPoly MPoly::to_upoly(unsigned var) const {
    std::vector<Rational> cs(degree_in(var) + 1, Rational(0));
    for (const auto& [m, c] : t_) {
        for (unsigned i = 0; i < n_; ++i)
            if (i != var - 1 && m.e[i] != 0)
                throw std::invalid_argument("polynomial is not univariate in the requested variable");
        cs[m.e[var - 1]] = c;
    }
    return UPoly(std::move(cs));
}

unsigned height(const MPoly& p) {
    unsigned h = 1;
    for (const auto& [m, c] : p.terms()) h = std::max(h, height(c));
    return h;
}

// ---- parsing ----

namespace {

struct Parser {
    const std::string& s;
    unsigned nvars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    Int parse_uint(const char* what) {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail(std::string("expected ") + what);
        return Int(s.substr(start, pos - start));
    }

    Rational parse_coeff() {
        Int num = parse_uint("integer");
        if (peek() == '/') {
            ++pos;
            Int den = parse_uint("positive integer denominator");
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    void parse_factor(Monomial& m) {
        skip_ws();
        if (peek() != 'x') fail("expected variable");
        ++pos;
        Int idx = parse_uint("variable index");
        if (idx < 1 || idx > nvars) fail("variable index out of range (nvars = " + std::to_string(nvars) + ")");
        unsigned exp = 1;
        if (peek() == '^') {
            ++pos;
            Int e = parse_uint("exponent");
            if (e > 100000) fail("exponent too large");
            exp = e.convert_to<unsigned>();
        }
        m.e[idx.convert_to<unsigned>() - 1] += exp;
    }

    // term := coeff ('*' factor)* | factor ('*' factor)*
    void parse_term(MPoly& acc, int sign) {
        Rational c(1);
        Monomial m = Monomial::one(nvars);
        char ch = peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            c = parse_coeff();
            while (peek() == '*') {
                ++pos;
                parse_factor(m);
            }
        } else if (ch == 'x') {
            parse_factor(m);
            while (peek() == '*') {
                ++pos;
                parse_factor(m);
            }
        } else {
            fail("expected term");
        }
        acc.add_term(m, sign < 0 ? -c : c);
    }

    MPoly parse_expression() {
        MPoly acc(nvars);
        int sign = 1;
        char ch = peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++pos;
        }
        for (;;) {
            parse_term(acc, sign);
            if (at_end()) break;
            char op = peek();
            if (op == '+')
                sign = 1;
            else if (op == '-')
                sign = -1;
            else
                fail("expected '+' or '-'");
            ++pos;
        }
        return acc;
    }
};

}  // namespace

MPoly parse_poly(const std::string& text, unsigned nvars) {
    if (nvars == 0) throw std::invalid_argument("nvars must be positive");
    Parser p{text, nvars};
    if (p.at_end()) throw ParseError("empty polynomial", 0);
    return p.parse_expression();
}

// ---- printing ----

namespace {

std::string term_body(const Monomial& m, const Rational& mag) {
    std::string out;
    bool need_star = false;
    if (mag != 1 || m.total_degree() == 0) {
        out += to_string(mag);
        need_star = true;
    }
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (need_star) out += "*";
        out += "x" + std::to_string(i + 1);
        if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
        need_star = true;
    }
    return out;
}

}  // namespace

std::string to_string(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += term_body(m, mag);
    }
    return out;
}

std::string to_string(const UPoly& p, unsigned var_index) {
    return to_string(MPoly::from_upoly(p, var_index, var_index));
}

}  // namespace gradsos
