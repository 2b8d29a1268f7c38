#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhs/cohclass.hpp"
#include "qhs/rational.hpp"

namespace qhs {

using DegreeVector = std::vector<int>;

int total_degree(const DegreeVector& d);
DegreeVector deg_add(const DegreeVector& a, const DegreeVector& b);
// componentwise a <= b
bool deg_leq(const DegreeVector& a, const DegreeVector& b);
DegreeVector deg_sub(const DegreeVector& a, const DegreeVector& b);
std::string deg_str(const DegreeVector& d);

// All degree vectors with k parts of total degree exactly t / at most t.
std::vector<DegreeVector> degrees_of_total(int k, int t);
std::vector<DegreeVector> degrees_up_to(int k, int t);

// Finite Laurent polynomial in h with coefficients in the cohomology ring.
struct HbarLaurent {
    RingDescriptor ring;
    std::map<int, CohClass> c;  // h-exponent -> class, no zero entries

    HbarLaurent() = default;
    explicit HbarLaurent(RingDescriptor r) : ring(std::move(r)) {}
    static HbarLaurent from_class(const CohClass& a, int h_exp = 0);
    static HbarLaurent one(const RingDescriptor& r) { return from_class(CohClass::one(r)); }

    bool is_zero() const { return c.empty(); }
    CohClass coefficient(int h_exp) const;
    void add_term(int h_exp, const CohClass& a);
    int min_exp() const;
    int max_exp() const;

    HbarLaurent operator-() const;
    HbarLaurent operator+(const HbarLaurent& o) const;
    HbarLaurent operator-(const HbarLaurent& o) const;
    HbarLaurent operator*(const HbarLaurent& o) const;
    HbarLaurent scaled(const Rational& s) const;
    HbarLaurent mul_class(const CohClass& a) const;
    bool operator==(const HbarLaurent& o) const { return ring == o.ring && c == o.c; }

    std::string str() const;
};

// (nilp + m*h)^{-1} as a finite geometric series; nilp must have no scalar
// part and m must be nonzero.
HbarLaurent invert_linear_factor(const CohClass& nilp, const Rational& m);

// Integration of each h-coefficient; returns a scalar Laurent polynomial.
std::map<int, Rational> integrate_X(const HbarLaurent& a);

// Truncated formal power series in q_1..q_k with rational coefficients.
// Truncation is by total degree <= D.
struct ScalarSeries {
    int k = 0;
    int D = 0;
    std::map<DegreeVector, Rational> c;

    ScalarSeries() = default;
    ScalarSeries(int k_, int D_) : k(k_), D(D_) {}
    static ScalarSeries constant(int k, int D, Rational v);
    static ScalarSeries one(int k, int D) { return constant(k, D, Rational(1)); }

    bool is_zero() const { return c.empty(); }
    Rational coefficient(const DegreeVector& d) const;
    Rational constant_term() const { return coefficient(DegreeVector(k, 0)); }
    void add_term(const DegreeVector& d, const Rational& v);

    ScalarSeries operator-() const;
    ScalarSeries operator+(const ScalarSeries& o) const;
    ScalarSeries operator-(const ScalarSeries& o) const;
    ScalarSeries operator*(const ScalarSeries& o) const;
    ScalarSeries scaled(const Rational& s) const;
    ScalarSeries pow(int e) const;
    bool operator==(const ScalarSeries& o) const { return k == o.k && D == o.D && c == o.c; }

    // multiplicative inverse; requires nonzero constant term
    ScalarSeries inverse() const;
    std::string str() const;
};

void require_same_desc(const ScalarSeries& a, const ScalarSeries& b);

// exp(f) for f(0) = 0; log(f) for f(0) = 1.
ScalarSeries series_exp(const ScalarSeries& f);
ScalarSeries series_log(const ScalarSeries& f);

// Substitution q_i -> q_i * exp(f_i(q)) on a scalar series; f_i(0) = 0.
ScalarSeries substitute_scalar(const ScalarSeries& z, const std::vector<ScalarSeries>& f);

// Inverse change of coordinates: given f with f_i(0) = 0, produce g with
// q_i = Q_i exp(g_i(Q)) inverting Q_i = q_i exp(f_i(q)) up to degree D.
std::vector<ScalarSeries> revert_mirror_coordinates(const std::vector<ScalarSeries>& f, int D);

// Truncated power series in q_1..q_k with HbarLaurent coefficients; the
// carrier of the hypergeometric and correlator series.
struct NovikovSeries {
    RingDescriptor ring;
    int k = 0;
    int D = 0;
    std::map<DegreeVector, HbarLaurent> c;

    NovikovSeries() = default;
    NovikovSeries(RingDescriptor r, int k_, int D_) : ring(std::move(r)), k(k_), D(D_) {}
    static NovikovSeries one(const RingDescriptor& r, int k, int D);

    bool is_zero() const { return c.empty(); }
    HbarLaurent coefficient(const DegreeVector& d) const;
    void add_term(const DegreeVector& d, const HbarLaurent& v);

    NovikovSeries operator-() const;
    NovikovSeries operator+(const NovikovSeries& o) const;
    NovikovSeries operator-(const NovikovSeries& o) const;
    NovikovSeries operator*(const NovikovSeries& o) const;
    NovikovSeries scaled(const Rational& s) const;
    NovikovSeries mul_scalar_series(const ScalarSeries& f) const;
    NovikovSeries mul_class(const CohClass& a) const;
    bool operator==(const NovikovSeries& o) const;

    // true when every coefficient is a scalar multiple of 1 at h^0
    bool is_scalar() const;
    ScalarSeries to_scalar() const;
    static NovikovSeries from_scalar(const RingDescriptor& r, const ScalarSeries& f);

    std::string str() const;
};

void require_same_desc(const NovikovSeries& a, const NovikovSeries& b);

// q_i -> q_i * exp(f_i(q)) with f_i(0) = 0, re-expanded and truncated.
NovikovSeries substitute_novikov(const NovikovSeries& z, const std::vector<ScalarSeries>& f);

NovikovSeries series_exp(const NovikovSeries& f);
NovikovSeries series_log(const NovikovSeries& f);

}  // namespace qhs
