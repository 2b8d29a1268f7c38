#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhs/rational.hpp"

namespace qhs {

// Quotient ring Q[p_1..p_k]/(p_i^{n_i+1}) for a product of projective spaces;
// bounds[i] = n_i is the top exponent of the generator p_i.
struct RingDescriptor {
    std::vector<int> bounds;

    int k() const { return static_cast<int>(bounds.size()); }
    long dimension() const {
        long d = 1;
        for (int b : bounds) d *= b + 1;
        return d;
    }
    bool operator==(const RingDescriptor& o) const { return bounds == o.bounds; }
    bool operator!=(const RingDescriptor& o) const { return !(*this == o); }
    std::string str() const;
};

// Element of the quotient ring: sparse map from exponent vectors to rational
// coefficients, exponents clipped by nilpotency.
struct CohClass {
    RingDescriptor ring;
    std::map<std::vector<int>, Rational> coef;

    CohClass() = default;
    explicit CohClass(RingDescriptor r) : ring(std::move(r)) {}
    static CohClass scalar(const RingDescriptor& r, Rational v);
    static CohClass one(const RingDescriptor& r) { return scalar(r, Rational(1)); }
    static CohClass generator(const RingDescriptor& r, int i);
    // Sum l_i p_i, the first Chern class of a line bundle with pairing vector l.
    static CohClass divisor(const RingDescriptor& r, const std::vector<int>& l);

    bool is_zero() const { return coef.empty(); }
    bool is_scalar() const;
    Rational scalar_part() const;
    Rational coefficient(const std::vector<int>& e) const;
    void add_term(const std::vector<int>& e, const Rational& v);

    CohClass operator-() const;
    CohClass operator+(const CohClass& o) const;
    CohClass operator-(const CohClass& o) const;
    CohClass operator*(const CohClass& o) const;
    CohClass scaled(const Rational& s) const;
    CohClass pow(int e) const;
    bool operator==(const CohClass& o) const { return ring == o.ring && coef == o.coef; }

    std::string str() const;
};

void require_same_ring(const RingDescriptor& a, const RingDescriptor& b);

// Integration against the fundamental class of the product of projective
// spaces: the coefficient of the top monomial prod p_i^{n_i}.
Rational integrate_X(const CohClass& a);

}  // namespace qhs
