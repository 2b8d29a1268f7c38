#include "qhs/hypergeo.hpp"

#include <sstream>

#include "qhs/errors.hpp"

namespace qhs {

void BundleSpec::validate(int k) const {
    for (const auto& l : lines) {
        if (static_cast<int>(l.size()) != k)
            throw ConfigError("bundle pairing vector length must match the Novikov rank");
        for (int x : l)
            if (x < 0) throw ConfigError("bundle pairings must be nonnegative (convexity)");
    }
}

std::vector<int> BundleSpec::novikov_degrees(const SpaceSpec& spec) const {
    std::vector<int> deg = spec.fano_degrees();
    for (const auto& l : lines)
        for (size_t i = 0; i < deg.size(); ++i) deg[i] -= l[i];
    return deg;
}

CohClass BundleSpec::euler_class(const RingDescriptor& ring) const {
    CohClass e = CohClass::one(ring);
    for (const auto& l : lines) e = e * CohClass::divisor(ring, l);
    return e;
}

std::string BundleSpec::str() const {
    std::ostringstream os;
    os << "V(";
    for (size_t j = 0; j < lines.size(); ++j) {
        if (j) os << " + ";
        os << "O" << deg_str(lines[j]);
    }
    os << ")";
    return os.str();
}

namespace {

long line_pairing(const std::vector<int>& l, const DegreeVector& d) {
    long p = 0;
    for (size_t i = 0; i < l.size(); ++i) p += static_cast<long>(l[i]) * d[i];
    return p;
}

HbarLaurent correcting_factor(const BundleSpec& bundle, const DegreeVector& d,
                              const RingDescriptor& ring, bool primed) {
    HbarLaurent acc = HbarLaurent::one(ring);
    for (const auto& l : bundle.lines) {
        CohClass c1 = CohClass::divisor(ring, l);
        long top = line_pairing(l, d);
        if (top < 0) throw DomainError("bundle is not convex for this degree");
        for (long m = primed ? 1 : 0; m <= top; ++m) {
            HbarLaurent lin = HbarLaurent::from_class(c1);
            lin.add_term(1, CohClass::scalar(ring, Rational(m)));
            acc = acc * lin;
        }
    }
    return acc;
}

}  // namespace

HbarLaurent H_beta(const BundleSpec& bundle, const DegreeVector& d, const RingDescriptor& ring) {
    return correcting_factor(bundle, d, ring, false);
}

HbarLaurent H_prime_beta(const BundleSpec& bundle, const DegreeVector& d,
                         const RingDescriptor& ring) {
    return correcting_factor(bundle, d, ring, true);
}

namespace {

// Formal model of H_d over variables x_1..x_l and h (variable index l).
// `shift[j]` adds shift[j]*h to x_j; `flip` substitutes h -> -h.  The factors
// of each summand are univariate in (x_j, h), so the blocks are expanded
// separately before the cross product.
MPoly H_formal(const BundleSpec& bundle, const DegreeVector& d, bool primed,
               const std::vector<long>& shift, bool flip) {
    const int l = bundle.rank();
    const int nv = l + 1;
    MPoly acc = MPoly::constant(nv, Rational(1));
    for (int j = 0; j < l; ++j) {
        long top = line_pairing(bundle.lines[j], d);
        MPoly block = MPoly::constant(nv, Rational(1));
        for (long m = primed ? 1 : 0; m <= top; ++m) {
            long hcoef = m + shift[j];
            MPoly lin = MPoly::var(nv, j);
            if (hcoef != 0) lin = lin + MPoly::var(nv, l, Rational(flip ? -hcoef : hcoef));
            block = block * lin;
        }
        acc = acc * block;
    }
    return acc;
}

}  // namespace

bool check_identity_double(const BundleSpec& bundle, const DegreeVector& beta,
                           const DegreeVector& beta_prime) {
    if (!deg_leq(beta_prime, beta)) throw DomainError("need 0 <= beta' <= beta");
    const int l = bundle.rank();
    std::vector<long> shift(l, 0), none(l, 0);
    for (int j = 0; j < l; ++j) shift[j] = -line_pairing(bundle.lines[j], beta_prime);
    // H_beta(x - <c1,beta'> h, h) = H_{beta'}(x, -h) * H'_{beta-beta'}(x, h)
    MPoly lhs = H_formal(bundle, beta, false, shift, false);
    MPoly rhs = H_formal(bundle, beta_prime, false, none, true) *
                H_formal(bundle, deg_sub(beta, beta_prime), true, none, false);
    return lhs == rhs;
}

bool check_identity_recursion(const BundleSpec& bundle, const DegreeVector& beta,
                              const DegreeVector& beta_prime) {
    if (!deg_leq(beta_prime, beta)) throw DomainError("need 0 <= beta' <= beta");
    const int l = bundle.rank();
    std::vector<long> shift(l, 0), none(l, 0);
    for (int j = 0; j < l; ++j) shift[j] = line_pairing(bundle.lines[j], beta_prime);
    // H'_beta(x, h) = H'_{beta'}(x, h) * H'_{beta-beta'}(x + <c1,beta'> h, h)
    MPoly lhs = H_formal(bundle, beta, true, none, false);
    MPoly rhs = H_formal(bundle, beta_prime, true, none, false) *
                H_formal(bundle, deg_sub(beta, beta_prime), true, shift, false);
    return lhs == rhs;
}

HbarLaurent G_X_d(const SpaceSpec& spec, const DegreeVector& d) {
    RingDescriptor ring = spec.ring();
    HbarLaurent acc = HbarLaurent::one(ring);
    for (int i = 0; i < ring.k(); ++i) {
        CohClass p = CohClass::generator(ring, i);
        for (int m = 1; m <= d[i]; ++m) {
            HbarLaurent inv = invert_linear_factor(p, Rational(m));
            for (int rep = 0; rep < spec.dims[i] + 1; ++rep) acc = acc * inv;
        }
    }
    return acc;
}

HypergeomSeries phi_V(const SpaceSpec& spec, const BundleSpec& bundle, int D, bool primed) {
    bundle.validate(spec.novikov_rank());
    RingDescriptor ring = spec.ring();
    NovikovSeries s(ring, spec.novikov_rank(), D);
    for (const auto& d : degrees_up_to(spec.novikov_rank(), D)) {
        HbarLaurent h = primed ? H_prime_beta(bundle, d, ring) : H_beta(bundle, d, ring);
        s.add_term(d, h * G_X_d(spec, d));
    }
    HypergeomSeries out;
    out.series = std::move(s);
    out.space = spec;
    out.bundle = bundle;
    out.primed = primed;
    out.order = D;
    return out;
}

bool qde_check(const SpaceSpec& spec, const BundleSpec& bundle, const NovikovSeries& a, int D) {
    RingDescriptor ring = spec.ring();
    require_same_ring(ring, a.ring);
    const int k = spec.novikov_rank();
    for (const auto& d : degrees_up_to(k, D)) {
        for (int i = 0; i < k; ++i) {
            if (d[i] < 1) continue;
            DegreeVector prev = d;
            prev[i] -= 1;
            // (p_i + d_i h)^{n_i + 1}
            HbarLaurent op = HbarLaurent::from_class(CohClass::generator(ring, i));
            op.add_term(1, CohClass::scalar(ring, Rational(d[i])));
            HbarLaurent lhs = HbarLaurent::one(ring);
            for (int rep = 0; rep <= spec.dims[i]; ++rep) lhs = lhs * op;
            lhs = lhs * a.coefficient(d);
            // ratio H'_d / H'_{d - e_i}: the new linear factors of each summand
            HbarLaurent rhs = a.coefficient(prev);
            for (const auto& l : bundle.lines) {
                CohClass c1 = CohClass::divisor(ring, l);
                for (long m = line_pairing(l, prev) + 1; m <= line_pairing(l, d); ++m) {
                    HbarLaurent lin = HbarLaurent::from_class(c1);
                    lin.add_term(1, CohClass::scalar(ring, Rational(m)));
                    rhs = rhs * lin;
                }
            }
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

bool homogeneity_check(const NovikovSeries& a, const std::vector<int>& novikov_degrees,
                       int expected_total) {
    for (const auto& [d, laurent] : a.c) {
        long qdeg = 0;
        for (size_t i = 0; i < d.size(); ++i) qdeg += static_cast<long>(d[i]) * novikov_degrees[i];
        for (const auto& [h_exp, cls] : laurent.c)
            for (const auto& [e, v] : cls.coef) {
                long pdeg = 0;
                for (int x : e) pdeg += x;
                if (qdeg + h_exp + pdeg != expected_total) return false;
            }
    }
    return true;
}

}  // namespace qhs
