#include "qhs/poly.hpp"

#include <sstream>

#include "qhs/errors.hpp"

namespace qhs {

Poly Poly::monomial(int exp, Rational v) {
    Poly p;
    if (v == 0) return p;
    if (exp < 0) throw DomainError("negative exponent in polynomial");
    p.c.assign(exp + 1, Rational(0));
    p.c[exp] = std::move(v);
    return p;
}

// product of (a + b*h) factors
Poly Poly::from_roots_linear(const std::vector<std::pair<Rational, Rational>>& factors) {
    Poly acc(Rational(1));
    for (const auto& [a, b] : factors) {
        Poly f;
        f.c = {a, b};
        f.trim();
        acc = acc * f;
    }
    return acc;
}

void Poly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

const Rational& Poly::leading() const {
    if (c.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c.back();
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    if (is_zero() || o.is_zero()) return r;
    r.c.assign(c.size() + o.c.size() - 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) {
            if (o.c[j] == 0) continue;
            r.c[i + j] += c[i] * o.c[j];
        }
    }
    r.trim();
    return r;
}

Poly Poly::scaled(const Rational& s) const {
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& v : r.c) v *= s;
    return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    q = Poly();
    r = a;
    if (r.degree() >= b.degree()) q.c.assign(r.degree() - b.degree() + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Rational f = r.leading() / b.leading();
        q.c[shift] += f;
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i + shift] -= f * b.c[i];
        r.trim();
    }
    q.trim();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / leading());
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        Rational v = c[i];
        if (!first) {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        if (i == 0 || v != 1) {
            os << to_string(v);
            if (i > 0) os << "*";
        }
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        Poly q, r;
        Poly::divmod(a, b, q, r);
        a = std::move(b);
        b = r.monic();  // monic remainders keep coefficient growth tame
    }
    return a.monic();
}

RationalFunction::RationalFunction(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    normalize();
}

RationalFunction RationalFunction::hbar_power(int e) {
    RationalFunction f;
    if (e >= 0) {
        f.num = Poly::monomial(e, Rational(1));
        f.den = Poly(Rational(1));
    } else {
        f.num = Poly(Rational(1));
        f.den = Poly::monomial(-e, Rational(1));
    }
    return f;
}

RationalFunction RationalFunction::from_laurent(const std::map<int, Rational>& l) {
    int min_exp = 0;
    for (const auto& [e, v] : l)
        if (v != 0) min_exp = std::min(min_exp, e);
    Poly n;
    for (const auto& [e, v] : l) {
        if (v == 0) continue;
        n = n + Poly::monomial(e - min_exp, v);
    }
    return RationalFunction(n, Poly::monomial(-min_exp, Rational(1)));
}

void RationalFunction::normalize() {
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) {
        den = Poly(Rational(1));
        return;
    }
    Poly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        Poly q, r;
        Poly::divmod(num, g, q, r);
        num = q;
        Poly::divmod(den, g, q, r);
        den = q;
    }
    Rational lc = den.leading();
    if (lc != 1) {
        den = den.scaled(Rational(1) / lc);
        num = num.scaled(Rational(1) / lc);
    }
}

bool RationalFunction::poles_only_at_zero() const {
    // normalized denominator must be a monomial h^s
    for (int i = 0; i < den.degree(); ++i)
        if (den.coeff(i) != 0) return false;
    return true;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num = -r.num;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num * o.den + o.num * den, den * o.den);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num * o.den - o.num * den, den * o.den);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num * o.num, den * o.den);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DomainError("division by zero rational function");
    return RationalFunction(num * o.den, den * o.num);
}

RationalFunction RationalFunction::scaled(const Rational& s) const {
    RationalFunction r = *this;
    r.num = r.num.scaled(s);
    if (s == 0) r.den = Poly(Rational(1));
    return r;
}

Rational RationalFunction::eval(const Rational& x) const {
    Rational d = den.eval(x);
    if (d == 0) throw DomainError("evaluation at a pole");
    return num.eval(x) / d;
}

RationalFunction RationalFunction::reflected() const {
    auto flip = [](const Poly& p) {
        Poly r = p;
        for (size_t i = 1; i < r.c.size(); i += 2) r.c[i] = -r.c[i];
        return r;
    };
    return RationalFunction(flip(num), flip(den));
}

std::map<int, Rational> RationalFunction::as_laurent() const {
    if (!poles_only_at_zero())
        throw DomainError("not a Laurent polynomial: denominator " + den.str());
    int s = den.degree();
    std::map<int, Rational> out;
    for (int i = 0; i <= num.degree(); ++i)
        if (num.coeff(i) != 0) out[i - s] = num.coeff(i);
    return out;
}

std::map<int, Rational> RationalFunction::expand_at_infinity(int min_exp) const {
    std::map<int, Rational> out;
    if (is_zero()) return out;
    int dn = num.degree(), dd = den.degree();
    int top = dn - dd;
    if (top < min_exp) return out;
    size_t len = static_cast<size_t>(top - min_exp + 1);
    // reverse coefficients: series in u = 1/h
    std::vector<Rational> N(len, Rational(0)), D(len, Rational(0)), Q(len, Rational(0));
    for (size_t i = 0; i < len && static_cast<int>(i) <= dn; ++i) N[i] = num.coeff(dn - static_cast<int>(i));
    for (size_t i = 0; i < len && static_cast<int>(i) <= dd; ++i) D[i] = den.coeff(dd - static_cast<int>(i));
    for (size_t i = 0; i < len; ++i) {
        Rational acc = N[i];
        for (size_t j = 1; j <= i; ++j) acc -= D[j] * Q[i - j];
        Q[i] = acc / D[0];
    }
    for (size_t i = 0; i < len; ++i)
        if (Q[i] != 0) out[top - static_cast<int>(i)] = Q[i];
    return out;
}

std::string RationalFunction::str(const std::string& var) const {
    if (is_polynomial()) return num.str(var);
    return "(" + num.str(var) + ") / (" + den.str(var) + ")";
}

}  // namespace qhs
