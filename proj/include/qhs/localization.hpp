#pragma once

#include <functional>
#include <map>
#include <vector>

#include "qhs/ambient.hpp"
#include "qhs/poly.hpp"
#include "qhs/series.hpp"

namespace qhs {

// Fixed-point restrictions of a correlator-type series: for each fixed point
// and each Novikov degree, a rational function of h.
struct LocalizedSeries {
    int k = 0;
    int order = 0;
    std::map<FixedPoint, std::map<DegreeVector, RationalFunction>> c;

    RationalFunction at(const FixedPoint& v, const DegreeVector& d) const;
    void set(const FixedPoint& v, const DegreeVector& d, RationalFunction f);
};

// Table of recursion coefficients C_{v,w,m} with the ray data, evaluated at
// the stored torus parameters.
struct RecursionData {
    struct Entry {
        FixedPoint v, w;
        int m = 1;
        Rational kappa;      // tangent character of the ray at v
        DegreeVector beta;   // degree of the m-fold cover's underlying ray
        Rational C;
    };
    std::vector<Entry> entries;

    // entries grouped by starting point, order-compatible multiplicities
    static RecursionData build(const SpaceSpec& spec, const std::vector<std::vector<int>>& bundle,
                               int order);
};

// Recursion part of the almost recursion relation at (v, d):
//   sum_{(v,w,m): m beta <= d} C/(h (kappa + m h)) * Z_{w, d - m beta}(-kappa/m)
RationalFunction recursion_part(const RecursionData& rec, const LocalizedSeries& z,
                                const FixedPoint& v, const DegreeVector& d);

// One coefficient of the double construction
//   W(Z)(q,z) = int_V Z(q e^{hz}, h) e^{pz} Z(q, -h),
// at Novikov degree d and z-multidegree gamma.
RationalFunction double_construction_entry(const SpaceSpec& spec,
                                           const std::vector<std::vector<int>>& bundle,
                                           const LocalizedSeries& z, const DegreeVector& d,
                                           const std::vector<int>& gamma);

// Equivariant correlator of the ambient space, built degree by degree from
// the almost recursion relation; the polynomial-in-1/h parts that the
// recursion leaves free are pinned by requiring the double construction to
// stay polynomial in h.
LocalizedSeries compute_SX(const SpaceSpec& spec, int order);

// Equivariant hypergeometric modification: S^X times the correcting Euler
// factors of the bundle restricted to each fixed point.
LocalizedSeries compute_phiV_equivariant(const SpaceSpec& spec,
                                         const std::vector<std::vector<int>>& bundle, int order);

// Localized pairing  sum_v Z_{v,d}(h) * prod_i (p_i)_v^{a_i} / Euler(T_v X).
RationalFunction localized_divisor_pairing(const SpaceSpec& spec, const LocalizedSeries& z,
                                           const DegreeVector& d, const std::vector<int>& a);

// Evaluate a quantity that is polynomial of degree <= bound in a common
// scaling t of the torus parameters, and return its value at t = 0.  A spare
// evaluation guards the degree bound.
Rational nonequivariant_limit(const std::function<Rational(const Rational&)>& value, int bound);

// Localization integral of Euler(Sym^l S^*) over Gr(k,n); the classical count
// of lines when the rank matches the dimension.  Asserts agreement across
// three parameter draws.
Rational oracle_euler_sym(int k, int n, int l, std::uint64_t seed = 1);

// Localization integral of p^e over Gr(k,n), p the ample generator; asserts
// agreement across three parameter draws.
Rational oracle_divisor_power(int k, int n, int e, std::uint64_t seed = 1);

}  // namespace qhs
