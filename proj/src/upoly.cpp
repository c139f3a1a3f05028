#include "gradsos/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradsos {

namespace {
const Rational kZero(0);
}

UPoly::UPoly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(unsigned deg, const Rational& c) {
    UPoly p;
    if (c != 0) {
        p.c_.assign(deg + 1, Rational(0));
        p.c_.back() = c;
    }
    return p;
}

const Rational& UPoly::operator[](std::size_t i) const {
    return i < c_.size() ? c_[i] : kZero;
}

void UPoly::set_coeff(std::size_t i, const Rational& v) {
    if (i >= c_.size()) {
        if (v == 0) return;
        c_.resize(i + 1, Rational(0));
    }
    c_[i] = v;
    trim();
}

const Rational& UPoly::lc() const { return c_.empty() ? kZero : c_.back(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator-() const {
    UPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
    UPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (*this)[i] + o[i];
    r.trim();
    return r;
}

UPoly UPoly::operator-(const UPoly& o) const {
    UPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (*this)[i] - o[i];
    r.trim();
    return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    UPoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

UPoly UPoly::scaled(const Rational& s) const {
    if (s == 0) return UPoly();
    UPoly r(*this);
    for (auto& c : r.c_) c *= s;
    return r;
}

UPoly UPoly::monic() const {
    if (is_zero()) throw std::invalid_argument("monic() of the zero polynomial");
    return scaled(Rational(1) / lc());
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    UPoly r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
    r.trim();
    return r;
}

UPoly UPoly::pow(unsigned e) const {
    UPoly r(Rational(1)), b(*this);
    while (e) {
        if (e & 1u) r *= b;
        if (e >>= 1) b *= b;
    }
    return r;
}

UPoly UPoly::shifted(unsigned k) const {
    if (is_zero() || k == 0) return *this;
    UPoly r;
    r.c_.assign(c_.size() + k, Rational(0));
    std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
    return r;
}

Rational UPoly::eval(const Rational& x) const {
    Rational v(0);
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
}

UPoly UPoly::compose(const UPoly& g) const {
    UPoly v;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * g + UPoly(c_[i]);
    return v;
}

unsigned height(const UPoly& p) {
    unsigned h = 1;
    for (const auto& c : p.coeffs())
        if (c != 0) h = std::max(h, height(c));
    return h;
}

}  // namespace gradsos
