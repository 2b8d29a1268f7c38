#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhs/rational.hpp"

namespace qhs {

// Dense univariate polynomial over Q; coefficient i multiplies h^i where h is
// the formal descendant variable.
struct Poly {
    std::vector<Rational> c;

    Poly() = default;
    explicit Poly(Rational constant) {
        if (constant != 0) c.push_back(std::move(constant));
    }
    static Poly monomial(int exp, Rational v);
    static Poly from_roots_linear(const std::vector<std::pair<Rational, Rational>>& factors);

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const Rational& leading() const;
    Rational coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Rational(0);
    }
    Rational eval(const Rational& x) const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& s) const;
    bool operator==(const Poly& o) const { return c == o.c; }

    // division with remainder; divisor must be nonzero
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    Poly monic() const;
    std::string str(const std::string& var = "h") const;
};

Poly poly_gcd(Poly a, Poly b);

// Quotient of univariate polynomials in h, kept normalized: denominator monic
// and coprime to the numerator.  Torus parameters are already numeric, so one
// variable suffices.
struct RationalFunction {
    Poly num;
    Poly den;  // monic, nonzero

    RationalFunction() : num(), den(Rational(1)) {}
    explicit RationalFunction(Rational v) : num(std::move(v)), den(Rational(1)) {}
    RationalFunction(Poly n, Poly d);

    static RationalFunction hbar_power(int e);  // h^e, e may be negative
    static RationalFunction from_laurent(const std::map<int, Rational>& l);

    void normalize();
    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.degree() == 0; }
    // true when all finite poles sit at h = 0
    bool poles_only_at_zero() const;
    bool operator==(const RationalFunction& o) const { return num == o.num && den == o.den; }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction scaled(const Rational& s) const;

    bool has_pole_at(const Rational& x) const { return den.eval(x) == 0; }
    Rational eval(const Rational& x) const;
    // substitution h -> -h
    RationalFunction reflected() const;

    // Laurent coefficients when the denominator is a pure power of h.
    std::map<int, Rational> as_laurent() const;
    // Expansion around h = infinity in powers of 1/h, down to exponent
    // min_exp inclusive. Entries map h-exponent to coefficient.
    std::map<int, Rational> expand_at_infinity(int min_exp) const;

    std::string str(const std::string& var = "h") const;
};

}  // namespace qhs
