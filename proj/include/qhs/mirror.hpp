#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhs/hypergeo.hpp"
#include "qhs/localization.hpp"
#include "qhs/series.hpp"

namespace qhs {

// Split of a series along powers of 1/h: constant part, the 1/h part divided
// into divisor-linear and scalar pieces, and the O(h^{-2}) remainder.
struct HbarExpansion {
    ScalarSeries Z0;
    std::vector<ScalarSeries> Z1p;  // coefficient of p_i / h
    ScalarSeries Z1s;               // scalar coefficient of 1 / h
    NovikovSeries remainder;
};

HbarExpansion expand_hbar(const NovikovSeries& z);

// The unique change of variables carrying the hypergeometric series to the
// correlator side: scalar series f0, f_{-1} and one series per Novikov
// variable, all vanishing at q = 0.
struct MirrorMap {
    ScalarSeries f0;
    ScalarSeries fm1;
    std::vector<ScalarSeries> f;

    bool is_zero() const;
};

// Reads the map off the 1 and 1/h coefficients of the primed series and
// validates the weighted-degree support required of each component.
MirrorMap extract_mirror_map(const HypergeomSeries& input);

// The three transformation-group generators on cohomology-valued series.
// Degree preconditions are enforced against the Novikov grading `degq`.
NovikovSeries apply_scalar_mult(const NovikovSeries& z, const ScalarSeries& f,
                                const std::vector<int>& degq);
NovikovSeries apply_exp_over_hbar(const NovikovSeries& z, const ScalarSeries& f,
                                  const std::vector<int>& degq);
NovikovSeries apply_coordinate_change(const NovikovSeries& z, const std::vector<ScalarSeries>& f,
                                      const std::vector<int>& degq);

// Same generators acting on fixed-point restrictions.  The exp-over-hbar
// coefficients are equivariant degree-1 numerics, so its support condition
// differs by one from the nonequivariant form.
LocalizedSeries apply_scalar_mult_loc(const SpaceSpec& spec, const LocalizedSeries& z,
                                      const ScalarSeries& f, const std::vector<int>& degq);
LocalizedSeries apply_exp_over_hbar_loc(const SpaceSpec& spec, const LocalizedSeries& z,
                                        const ScalarSeries& f, const std::vector<int>& degq);
LocalizedSeries apply_coordinate_change_loc(const SpaceSpec& spec, const LocalizedSeries& z,
                                            const std::vector<ScalarSeries>& f,
                                            const std::vector<int>& degq);

// Transform the primed hypergeometric series to normalized correlator form
// J'(Q) with expansion (1, 0, 0, *); throws ConsistencyError when the
// normalization fails.
NovikovSeries mirror_transform(const HypergeomSeries& input, const MirrorMap& map);

// Genus-zero invariants of a Calabi-Yau threefold complete intersection:
// N_d from the h^{-3} coefficient of the integrated series, instanton
// numbers n_d by multiple-cover inversion.
struct GwTable {
    std::map<DegreeVector, Rational> N;
    std::map<DegreeVector, Rational> n;
    Rational classical_triple;  // integral of Euler(V) p^3 over the ambient space
};

GwTable extract_gw(const NovikovSeries& jprime, const SpaceSpec& spec, const BundleSpec& bundle);

// Multiple-cover resummation f(q) = sum_d n_d d^3 q^d / (1 - q^d); one
// Novikov variable.
ScalarSeries yukawa_series(const std::map<DegreeVector, Rational>& n, int D);

// Double construction coefficient table up to the given q and z orders.
struct DoubleConstructionTable {
    std::map<DegreeVector, std::map<std::vector<int>, RationalFunction>> entries;
    bool all_polynomial() const;
};

DoubleConstructionTable double_construction(const SpaceSpec& spec, const BundleSpec& bundle,
                                            const LocalizedSeries& z, int q_order, int z_order);

// Verification report for membership in the correlator class: normalized
// value at q = 0, well-defined substitutions, recursion residues with poles
// only at h = 0, and h-polynomial double construction.
struct CheckResult {
    std::string name;
    std::string where;
    bool pass = false;
    std::string detail;
};

struct ClassPReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

ClassPReport verify_class_P(const SpaceSpec& spec, const BundleSpec& bundle,
                            const LocalizedSeries& z, const RecursionData& rec, int q_order,
                            int z_order);

}  // namespace qhs
