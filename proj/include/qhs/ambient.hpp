#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qhs/cohclass.hpp"
#include "qhs/poly.hpp"
#include "qhs/rational.hpp"
#include "qhs/series.hpp"

namespace qhs {

enum class SpaceKind { ProjectiveProduct, Grassmannian, FlagA };

// Torus fixed point: exponent list per factor for products of projective
// spaces, a sorted k-subset of {1..n} for Gr(k,n), a permutation of {1..n}
// for the complete type-A flag manifold.
struct FixedPoint {
    std::vector<int> data;
    bool operator<(const FixedPoint& o) const { return data < o.data; }
    bool operator==(const FixedPoint& o) const { return data == o.data; }
    std::string str() const;
};

// Integer combination of the torus parameters; evaluates to a rational once
// the parameters are fixed.
struct Character {
    std::vector<long> coef;  // coefficient of eps_j

    Character() = default;
    explicit Character(int n) : coef(n, 0) {}
    Character operator+(const Character& o) const;
    Character operator-(const Character& o) const;
    Character operator-() const;
    Character scaled(long s) const;
    bool operator==(const Character& o) const { return coef == o.coef; }
    bool is_zero() const;
    Rational eval(const std::vector<Rational>& eps) const;
    std::string str() const;
};

struct Ray {
    FixedPoint v, w;
    Character kappa;     // tangent character at v
    DegreeVector beta;   // curve class in the ample dual basis
};

struct SpaceSpec {
    SpaceKind kind = SpaceKind::ProjectiveProduct;
    std::vector<int> dims;  // ProjectiveProduct factor dimensions
    int gr_k = 0, gr_n = 0; // Grassmannian
    int flag_n = 0;         // FlagA
    std::vector<Rational> eps;

    static SpaceSpec projective_product(std::vector<int> dims, std::vector<Rational> eps = {});
    static SpaceSpec grassmannian(int k, int n, std::vector<Rational> eps = {});
    static SpaceSpec flag_a(int n, std::vector<Rational> eps = {});

    int novikov_rank() const;   // number of Novikov variables k
    int dimension() const;      // complex dimension of X
    int eps_count() const;      // number of torus parameters
    // anticanonical pairings <c_1(TX), basis_i>
    std::vector<int> fano_degrees() const;
    // cohomology model, defined for products of projective spaces only
    RingDescriptor ring() const;
    std::string str() const;

    std::vector<FixedPoint> fixed_points() const;
    std::vector<Character> tangent_weights(const FixedPoint& v) const;
    std::vector<Ray> rays(const FixedPoint& v) const;
    // restriction of the basis divisor p_i at v
    Character restrict_divisor(int i, const FixedPoint& v) const;
    // restriction of c_1(L) for L with pairing vector l
    Character restrict_bundle(const std::vector<int>& l, const FixedPoint& v) const;

    // product of tangent weights at v (Euler class of T_v X) at stored eps
    Rational euler_at(const FixedPoint& v) const;

    void validate() const;
    // throws DegenerateParameterError when the stored eps hit a coincidence
    void check_genericity() const;
};

// Weights of the section space of the m-fold cover of a ray twisted by the
// line bundle with pairing vector l, as rational values at the stored eps.
std::vector<Rational> characters_V(const SpaceSpec& spec, const Ray& ray, int m,
                                   const std::vector<int>& l);

// Virtual weights of H^0(P^1, f^* TX) - [trivial] for the m-fold cover of a
// ray; `h1` collects the dual obstruction weights (nonempty only for flag
// directions of negative pairing).
struct NormalWeights {
    std::vector<Rational> h0;
    std::vector<Rational> h1;
    Rational euler() const;  // prod h0 / prod h1
};
NormalWeights characters_N(const SpaceSpec& spec, const Ray& ray, int m);

// Recursion coefficient C_{v,w,m}; bundle may be empty.  Throws
// DegenerateParameterError if a normal weight vanishes at the stored eps.
Rational recursion_coefficient(const SpaceSpec& spec, const Ray& ray, int m,
                               const std::vector<std::vector<int>>& bundle);

// Localization sum  sum_v A_v / Euler(T_v X).
Rational localize_integrate(const SpaceSpec& spec, const std::map<FixedPoint, Rational>& values);
RationalFunction localize_integrate(const SpaceSpec& spec,
                                    const std::map<FixedPoint, RationalFunction>& values);

// Deterministic torus parameters: distinct primes with a seeded rational
// jitter.  Generic for the pole separations needed at desk scale.
std::vector<Rational> default_eps(int n, std::uint64_t seed);

// Draw eps until check_genericity passes (at most max_tries); returns the
// spec with parameters installed.
SpaceSpec with_generic_eps(SpaceSpec spec, std::uint64_t seed, int max_tries = 8);

}  // namespace qhs
