#pragma once

#include <string>
#include <vector>

#include "qhs/ambient.hpp"
#include "qhs/mpoly.hpp"
#include "qhs/series.hpp"

namespace qhs {

// Decomposable convex bundle: one pairing vector <c_1(L_j), basis_i> per line
// bundle summand.
struct BundleSpec {
    std::vector<std::vector<int>> lines;

    int rank() const { return static_cast<int>(lines.size()); }
    void validate(int k) const;
    // <c_1(TX) - c_1(V), basis_i>, the grading of the Novikov variables
    std::vector<int> novikov_degrees(const SpaceSpec& spec) const;
    CohClass euler_class(const RingDescriptor& ring) const;
    std::string str() const;
};

// Correcting Euler factor H_d = prod_j prod_{m=0}^{<c_1(L_j),d>} (c_1(L_j) + m h),
// or the primed variant with the m = 0 factors removed.
HbarLaurent H_beta(const BundleSpec& bundle, const DegreeVector& d, const RingDescriptor& ring);
HbarLaurent H_prime_beta(const BundleSpec& bundle, const DegreeVector& d, const RingDescriptor& ring);

// Exact polynomial identities relating shifted correcting factors; formal in
// the x variables and h.  These drive the double-construction and recursion
// halves of the hypergeometric verification.
bool check_identity_double(const BundleSpec& bundle, const DegreeVector& beta,
                           const DegreeVector& beta_prime);
bool check_identity_recursion(const BundleSpec& bundle, const DegreeVector& beta,
                              const DegreeVector& beta_prime);

// Closed-form ambient coefficient for a product of projective spaces:
// G_d = prod_i prod_{m=1}^{d_i} (p_i + m h)^{-(n_i + 1)}, G_0 = 1.
HbarLaurent G_X_d(const SpaceSpec& spec, const DegreeVector& d);

struct HypergeomSeries {
    NovikovSeries series;
    SpaceSpec space;
    BundleSpec bundle;
    bool primed = true;
    int order = 0;
};

// Hypergeometric series  sum_{|d| <= D} q^d H_d (or H'_d) * G_d.
HypergeomSeries phi_V(const SpaceSpec& spec, const BundleSpec& bundle, int D, bool primed);

// Coefficient identity of the quantum differential operator on a product of
// projective spaces: for every i and every d with d_i >= 1,
//   (p_i + d_i h)^{n_i+1} A_d = [H'_d / H'_{d-e_i}] A_{d-e_i}.
bool qde_check(const SpaceSpec& spec, const BundleSpec& bundle, const NovikovSeries& a, int D);

// Weighted-degree homogeneity of every stored monomial: q-degrees from
// c_1(TX) - c_1(V), deg h = 1, deg p_i = 1.  Expected total degree is 0 for
// the primed series and rank V for the unprimed one.
bool homogeneity_check(const NovikovSeries& a, const std::vector<int>& novikov_degrees,
                       int expected_total);

}  // namespace qhs
