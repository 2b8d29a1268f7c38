#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhs/rational.hpp"

namespace qhs {

// Sparse multivariate polynomial over Q.  Terms are keyed by exponent vectors
// of fixed length nvars; zero coefficients are never stored.
struct MPoly {
    int nvars = 0;
    std::map<std::vector<int>, Rational> terms;

    MPoly() = default;
    explicit MPoly(int n) : nvars(n) {}
    static MPoly constant(int nvars, Rational v);
    static MPoly var(int nvars, int i, Rational coeff = Rational(1), int exp = 1);

    bool is_zero() const { return terms.empty(); }
    void add_term(const std::vector<int>& e, const Rational& v);

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(const Rational& s) const;
    MPoly pow(int e) const;
    bool operator==(const MPoly& o) const { return nvars == o.nvars && terms == o.terms; }

    // substitute variable i by the polynomial sub (same variable set)
    MPoly subst_var(int i, const MPoly& sub) const;
    MPoly set_var(int i, const Rational& value) const;

    // exact division; throws DomainError when the quotient is not polynomial
    MPoly div_exact(const MPoly& divisor) const;

    // true when every term has the same weighted degree
    bool is_weighted_homogeneous(const std::vector<int>& weights, long* degree_out = nullptr) const;

    Rational coeff(const std::vector<int>& e) const;
    std::string str(const std::vector<std::string>& names) const;
};

// Determinant via fraction-free elimination (Bareiss).
MPoly det_bareiss(std::vector<std::vector<MPoly>> m);
// Determinant via cofactor expansion along the first column.
MPoly det_cofactor(const std::vector<std::vector<MPoly>>& m);

}  // namespace qhs
