#include "qhs/mirror.hpp"

#include <numeric>
#include <sstream>

#include "qhs/errors.hpp"

namespace qhs {

HbarExpansion expand_hbar(const NovikovSeries& z) {
    const int k = z.k;
    HbarExpansion out;
    out.Z0 = ScalarSeries(k, z.D);
    out.Z1p.assign(k, ScalarSeries(k, z.D));
    out.Z1s = ScalarSeries(k, z.D);
    out.remainder = NovikovSeries(z.ring, k, z.D);
    for (const auto& [d, laurent] : z.c) {
        for (const auto& [h_exp, cls] : laurent.c) {
            if (h_exp > 0) throw DomainError("series has positive powers of h");
            if (h_exp == 0) {
                if (!cls.is_scalar())
                    throw DomainError("h^0 coefficient is not scalar; use the primed series");
                out.Z0.add_term(d, cls.scalar_part());
            } else if (h_exp == -1) {
                for (const auto& [e, v] : cls.coef) {
                    int total = 0, which = -1;
                    for (int i = 0; i < k; ++i) {
                        total += e[i];
                        if (e[i] == 1) which = i;
                    }
                    if (total == 0) {
                        out.Z1s.add_term(d, v);
                    } else if (total == 1) {
                        out.Z1p[which].add_term(d, v);
                    } else {
                        throw DomainError("1/h coefficient has a term of cohomology degree >= 2");
                    }
                }
            } else {
                HbarLaurent keep(z.ring);
                keep.add_term(h_exp, cls);
                out.remainder.add_term(d, keep);
            }
        }
    }
    if (out.Z0.constant_term() != 1) throw DomainError("series is not normalized to 1 at q = 0");
    return out;
}

bool MirrorMap::is_zero() const {
    if (!f0.is_zero() || !fm1.is_zero()) return false;
    for (const auto& fi : f)
        if (!fi.is_zero()) return false;
    return true;
}

namespace {

long weighted_total(const DegreeVector& d, const std::vector<int>& degq) {
    long t = 0;
    for (size_t i = 0; i < d.size(); ++i) t += static_cast<long>(d[i]) * degq[i];
    return t;
}

void require_support(const ScalarSeries& f, const std::vector<int>& degq, long expected,
                     const std::string& what) {
    for (const auto& [d, v] : f.c)
        if (weighted_total(d, degq) != expected)
            throw DomainError(what + ": term of weighted degree " +
                              std::to_string(weighted_total(d, degq)) + " (expected " +
                              std::to_string(expected) + ")");
}

}  // namespace

MirrorMap extract_mirror_map(const HypergeomSeries& input) {
    if (!input.primed) throw DomainError("mirror map extraction needs the primed series");
    const std::vector<int> degq = input.bundle.novikov_degrees(input.space);
    for (int dq : degq)
        if (dq < 0) throw DomainError("nonnegative Novikov degrees required");
    HbarExpansion e = expand_hbar(input.series);
    ScalarSeries z0inv = e.Z0.inverse();
    MirrorMap map;
    map.f0 = series_log(e.Z0);
    map.fm1 = e.Z1s * z0inv;
    map.f.clear();
    for (int i = 0; i < input.series.k; ++i) map.f.push_back(e.Z1p[i] * z0inv);
    require_support(map.f0, degq, 0, "f0");
    require_support(map.fm1, degq, 1, "f_{-1}");
    for (int i = 0; i < input.series.k; ++i) require_support(map.f[i], degq, 0, "f_i");
    return map;
}

NovikovSeries apply_scalar_mult(const NovikovSeries& z, const ScalarSeries& f,
                                const std::vector<int>& degq) {
    if (f.constant_term() != 1) throw DomainError("scalar multiplier must have f(0) = 1");
    require_support(f, degq, 0, "scalar multiplier");
    return z.mul_scalar_series(f);
}

namespace {

// multiply by exp(f/h): finite because f has no constant term
NovikovSeries mul_exp_over_hbar(const NovikovSeries& z, const ScalarSeries& f) {
    NovikovSeries out = z;
    ScalarSeries power = ScalarSeries::one(f.k, f.D);
    for (int j = 1; j <= f.D; ++j) {
        power = power * f;
        if (power.is_zero()) break;
        NovikovSeries term = z.mul_scalar_series(power.scaled(Rational(1) / Rational(factorial(j))));
        // shift by h^{-j}
        NovikovSeries shifted(z.ring, z.k, z.D);
        for (const auto& [d, laurent] : term.c) {
            HbarLaurent moved(z.ring);
            for (const auto& [h_exp, cls] : laurent.c) moved.add_term(h_exp - j, cls);
            shifted.add_term(d, moved);
        }
        out = out + shifted;
    }
    return out;
}

}  // namespace

NovikovSeries apply_exp_over_hbar(const NovikovSeries& z, const ScalarSeries& f,
                                  const std::vector<int>& degq) {
    if (f.constant_term() != 0) throw DomainError("exponent series must vanish at q = 0");
    require_support(f, degq, 1, "exp-over-h exponent");
    return mul_exp_over_hbar(z, f);
}

namespace {

// multiply by exp(sum_i f_i p_i / h); finite by nilpotency and q-valuation
NovikovSeries mul_exp_divisor_over_hbar(const NovikovSeries& out, const std::vector<ScalarSeries>& f) {
    NovikovSeries acc = out;
    const int k = out.k;
    std::vector<DegreeVector> multi;  // p-exponents bounded by the ring
    for (const auto& a : degrees_up_to(k, out.D)) {
        bool fits = true;
        int tot = 0;
        for (int i = 0; i < k; ++i) {
            if (a[i] > out.ring.bounds[i]) fits = false;
            tot += a[i];
        }
        if (fits && tot > 0) multi.push_back(a);
    }
    for (const auto& a : multi) {
        ScalarSeries coef = ScalarSeries::one(f[0].k, f[0].D);
        CohClass mono = CohClass::one(out.ring);
        Rational fact(1);
        int tot = 0;
        for (int i = 0; i < k; ++i) {
            for (int rep = 0; rep < a[i]; ++rep) {
                coef = coef * f[i];
                mono = mono * CohClass::generator(out.ring, i);
            }
            fact *= Rational(factorial(a[i]));
            tot += a[i];
        }
        if (mono.is_zero() || coef.is_zero()) continue;
        NovikovSeries term = out.mul_scalar_series(coef.scaled(Rational(1) / fact)).mul_class(mono);
        NovikovSeries shifted(out.ring, out.k, out.D);
        for (const auto& [d, laurent] : term.c) {
            HbarLaurent moved(out.ring);
            for (const auto& [h_exp, cls] : laurent.c) moved.add_term(h_exp - tot, cls);
            shifted.add_term(d, moved);
        }
        acc = acc + shifted;
    }
    return acc;
}

}  // namespace

static NovikovSeries coordinate_change_novikov(const NovikovSeries& z, const std::vector<ScalarSeries>& f) {
    return mul_exp_divisor_over_hbar(substitute_novikov(z, f), f);
}

NovikovSeries apply_coordinate_change(const NovikovSeries& z, const std::vector<ScalarSeries>& f,
                                      const std::vector<int>& degq) {
    for (const auto& fi : f) {
        if (fi.constant_term() != 0) throw DomainError("coordinate change must vanish at q = 0");
        require_support(fi, degq, 0, "coordinate change");
    }
    return coordinate_change_novikov(z, f);
}

LocalizedSeries apply_scalar_mult_loc(const SpaceSpec& spec, const LocalizedSeries& z,
                                      const ScalarSeries& f, const std::vector<int>& degq) {
    if (f.constant_term() != 1) throw DomainError("scalar multiplier must have f(0) = 1");
    require_support(f, degq, 0, "scalar multiplier");
    LocalizedSeries out;
    out.k = z.k;
    out.order = z.order;
    for (const auto& v : spec.fixed_points())
        for (const auto& d : degrees_up_to(z.k, z.order)) {
            RationalFunction acc;
            for (const auto& [e, w] : f.c) {
                if (!deg_leq(e, d)) continue;
                acc = acc + z.at(v, deg_sub(d, e)).scaled(w);
            }
            out.set(v, d, acc);
        }
    return out;
}

LocalizedSeries apply_exp_over_hbar_loc(const SpaceSpec& spec, const LocalizedSeries& z,
                                        const ScalarSeries& f, const std::vector<int>& degq) {
    if (f.constant_term() != 0) throw DomainError("exponent series must vanish at q = 0");
    // coefficients are equivariant degree-1 values, so the q-support carries
    // weighted degree 0
    require_support(f, degq, 0, "exp-over-h exponent");
    LocalizedSeries out;
    out.k = z.k;
    out.order = z.order;
    // e_j = f^j / j!
    std::vector<ScalarSeries> ej;
    ScalarSeries power = ScalarSeries::one(f.k, f.D);
    for (int j = 0; j <= z.order; ++j) {
        if (j > 0) power = power * f;
        ej.push_back(power.scaled(Rational(1) / Rational(factorial(j))));
    }
    for (const auto& v : spec.fixed_points())
        for (const auto& d : degrees_up_to(z.k, z.order)) {
            RationalFunction acc;
            for (int j = 0; j <= total_degree(d); ++j)
                for (const auto& [e, w] : ej[j].c) {
                    if (!deg_leq(e, d)) continue;
                    acc = acc + z.at(v, deg_sub(d, e)).scaled(w) * RationalFunction::hbar_power(-j);
                }
            out.set(v, d, acc);
        }
    return out;
}

LocalizedSeries apply_coordinate_change_loc(const SpaceSpec& spec, const LocalizedSeries& z,
                                            const std::vector<ScalarSeries>& f,
                                            const std::vector<int>& degq) {
    for (const auto& fi : f) {
        if (fi.constant_term() != 0) throw DomainError("coordinate change must vanish at q = 0");
        require_support(fi, degq, 0, "coordinate change");
    }
    LocalizedSeries out;
    out.k = z.k;
    out.order = z.order;
    for (const auto& v : spec.fixed_points()) {
        // s_v = sum_i f_i (p_i)_v, then Z_v -> exp(s_v/h) Z_v(q e^f)
        ScalarSeries sv(f[0].k, f[0].D);
        for (int i = 0; i < z.k; ++i)
            sv = sv + f[i].scaled(spec.restrict_divisor(i, v).eval(spec.eps));
        std::vector<ScalarSeries> ej;
        ScalarSeries power = ScalarSeries::one(sv.k, sv.D);
        for (int j = 0; j <= z.order; ++j) {
            if (j > 0) power = power * sv;
            ej.push_back(power.scaled(Rational(1) / Rational(factorial(j))));
        }
        for (const auto& d : degrees_up_to(z.k, z.order)) {
            RationalFunction acc;
            for (const auto& d1 : degrees_up_to(z.k, total_degree(d))) {
                if (!deg_leq(d1, d)) continue;
                RationalFunction zv = z.at(v, d1);
                if (zv.is_zero()) continue;
                // multiplier of q^{d1} under q -> q e^f, expanded with exp(s_v/h)
                ScalarSeries mult(f[0].k, f[0].D);
                {
                    ScalarSeries s(f[0].k, f[0].D);
                    for (int i = 0; i < z.k; ++i)
                        if (d1[i] != 0) s = s + f[i].scaled(Rational(d1[i]));
                    mult = series_exp(s);
                }
                DegreeVector need = deg_sub(d, d1);
                for (int j = 0; j <= total_degree(need); ++j)
                    for (const auto& [e2, w2] : ej[j].c) {
                        if (!deg_leq(e2, need)) continue;
                        Rational m = mult.coefficient(deg_sub(need, e2));
                        if (m == 0 || w2 == 0) continue;
                        acc = acc + zv.scaled(m * w2) * RationalFunction::hbar_power(-j);
                    }
            }
            out.set(v, d, acc);
        }
    }
    return out;
}

NovikovSeries mirror_transform(const HypergeomSeries& input, const MirrorMap& map) {
    const NovikovSeries& z = input.series;
    HbarExpansion e = expand_hbar(z);
    // J'(Q) = [e^{-sum f_i p_i/h} e^{-f_{-1}/h} Z/Z0](q) at q = Q e^{g(Q)}
    NovikovSeries a = z.mul_scalar_series(e.Z0.inverse());
    a = mul_exp_over_hbar(a, -map.fm1);
    std::vector<ScalarSeries> neg;
    for (const auto& fi : map.f) neg.push_back(-fi);
    a = mul_exp_divisor_over_hbar(a, neg);
    std::vector<ScalarSeries> g = revert_mirror_coordinates(map.f, z.D);
    NovikovSeries jprime = substitute_novikov(a, g);
    HbarExpansion post = expand_hbar(jprime);
    if (!(post.Z0 == ScalarSeries::one(z.k, z.D)) || !post.Z1s.is_zero())
        throw ConsistencyError("mirror transform failed to normalize the (1, 1/h) part");
    for (const auto& fi : post.Z1p)
        if (!fi.is_zero())
            throw ConsistencyError("mirror transform failed to normalize the divisor/h part");
    return jprime;
}

namespace {

std::vector<DegreeVector> proper_divisor_scales(const DegreeVector& d) {
    // all (r, d/r) with r >= 2 dividing every entry
    std::vector<DegreeVector> out;
    int g = 0;
    for (int x : d) g = std::gcd(g, x);
    for (int r = 2; r <= g; ++r) {
        bool divides = true;
        for (int x : d)
            if (x % r) divides = false;
        if (!divides) continue;
        DegreeVector q = d;
        for (auto& x : q) x /= r;
        out.push_back(q);
    }
    return out;
}

}  // namespace

GwTable extract_gw(const NovikovSeries& jprime, const SpaceSpec& spec, const BundleSpec& bundle) {
    RingDescriptor ring = spec.ring();
    if (spec.dimension() - bundle.rank() != 3)
        throw DomainError("expected a threefold complete intersection");
    for (int dq : bundle.novikov_degrees(spec))
        if (dq != 0) throw DomainError("expected Calabi-Yau grading (all Novikov degrees zero)");
    CohClass euler = bundle.euler_class(ring);
    NovikovSeries j = jprime.mul_class(euler);
    GwTable out;
    // classical cubic term: integral of Euler(V) p^3 (single divisor direction)
    if (spec.novikov_rank() == 1)
        out.classical_triple = integrate_X(euler * CohClass::generator(ring, 0).pow(3));
    for (const auto& [d, laurent] : j.c) {
        if (total_degree(d) == 0) continue;
        std::map<int, Rational> t = integrate_X(laurent);
        if (t.count(-2))
            throw ConsistencyError("nonvanishing h^{-2} coefficient at degree " + deg_str(d));
        Rational nd = t.count(-3) ? -t.at(-3) / 2 : Rational(0);
        out.N[d] = nd;
    }
    // multiple-cover inversion N_d = sum_{r | d} n_{d/r} / r^3
    for (const auto& [d, Nd] : out.N) {
        Rational nd = Nd;
        for (const auto& q : proper_divisor_scales(d)) {
            int r = d[0] && q[0] ? d[0] / q[0] : 0;
            for (size_t i = 0; i < d.size(); ++i)
                if (q[i]) r = d[i] / q[i];
            nd -= out.n.at(q) / Rational(static_cast<long>(r) * r * r);
        }
        out.n[d] = nd;
    }
    return out;
}

ScalarSeries yukawa_series(const std::map<DegreeVector, Rational>& n, int D) {
    ScalarSeries f(1, D);
    for (const auto& [d, nd] : n) {
        if (d.size() != 1) throw DomainError("resummation implemented for one Novikov variable");
        if (nd == 0) continue;
        long deg = d[0];
        Rational coef = nd * Rational(deg) * Rational(deg) * Rational(deg);
        for (long mult = deg; mult <= D; mult += deg) f.add_term({static_cast<int>(mult)}, coef);
    }
    return f;
}

bool DoubleConstructionTable::all_polynomial() const {
    for (const auto& [d, row] : entries)
        for (const auto& [g, f] : row)
            if (!f.is_polynomial()) return false;
    return true;
}

DoubleConstructionTable double_construction(const SpaceSpec& spec, const BundleSpec& bundle,
                                            const LocalizedSeries& z, int q_order, int z_order) {
    DoubleConstructionTable out;
    for (const auto& d : degrees_up_to(z.k, q_order))
        for (const auto& g : degrees_up_to(z.k, z_order))
            out.entries[d][g] = double_construction_entry(spec, bundle.lines, z, d, g);
    return out;
}

bool ClassPReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

ClassPReport verify_class_P(const SpaceSpec& spec, const BundleSpec& bundle,
                            const LocalizedSeries& z, const RecursionData& rec, int q_order,
                            int z_order) {
    ClassPReport report;
    auto points = spec.fixed_points();
    // (a) normalization at q = 0 and well-defined substitutions
    {
        bool ok = true;
        std::string detail;
        for (const auto& v : points) {
            RationalFunction z0 = z.at(v, DegreeVector(z.k, 0));
            if (!(z0 == RationalFunction(Rational(1)))) {
                ok = false;
                detail = "value at q = 0 differs from 1 at " + v.str();
            }
        }
        report.checks.push_back({"normalization Z(0) = 1", "all fixed points", ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (const auto& e : rec.entries) {
            Rational point = -e.kappa / e.m;
            for (const auto& d : degrees_up_to(z.k, q_order))
                if (z.at(e.w, d).has_pole_at(point)) {
                    ok = false;
                    detail = "restriction at " + e.w.str() + " has a pole at the substitution point";
                }
        }
        report.checks.push_back({"substitution well-defined", "all rays", ok, detail});
    }
    // (b) almost recursion: residues are Laurent polynomials with poles only at h = 0
    for (const auto& v : points) {
        bool ok = true;
        std::string detail;
        for (const auto& d : degrees_up_to(z.k, q_order)) {
            if (total_degree(d) == 0) continue;
            RationalFunction residue = z.at(v, d) - recursion_part(rec, z, v, d);
            if (!residue.poles_only_at_zero()) {
                ok = false;
                detail = "residue at degree " + deg_str(d) + " keeps denominator " +
                         residue.den.str();
                break;
            }
        }
        report.checks.push_back({"recursion residue poles only at h = 0", v.str(), ok, detail});
    }
    // (c) double construction stays polynomial in h
    for (const auto& d : degrees_up_to(z.k, q_order)) {
        bool ok = true;
        std::string detail;
        for (const auto& g : degrees_up_to(z.k, z_order)) {
            RationalFunction w = double_construction_entry(spec, bundle.lines, z, d, g);
            if (!w.is_polynomial()) {
                ok = false;
                detail = "entry at z^" + deg_str(g) + " has denominator " + w.den.str();
                break;
            }
        }
        report.checks.push_back({"double construction polynomial", "q^" + deg_str(d), ok, detail});
    }
    return report;
}

}  // namespace qhs
