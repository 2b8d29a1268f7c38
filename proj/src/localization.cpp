#include "qhs/localization.hpp"

#include <algorithm>

#include "qhs/errors.hpp"

namespace qhs {

RationalFunction LocalizedSeries::at(const FixedPoint& v, const DegreeVector& d) const {
    auto it = c.find(v);
    if (it == c.end()) return RationalFunction();
    auto jt = it->second.find(d);
    return jt == it->second.end() ? RationalFunction() : jt->second;
}

void LocalizedSeries::set(const FixedPoint& v, const DegreeVector& d, RationalFunction f) {
    c[v][d] = std::move(f);
}

RecursionData RecursionData::build(const SpaceSpec& spec,
                                   const std::vector<std::vector<int>>& bundle, int order) {
    RecursionData out;
    for (const auto& v : spec.fixed_points()) {
        for (const auto& ray : spec.rays(v)) {
            int step = total_degree(ray.beta);
            for (int m = 1; m * step <= order; ++m) {
                Entry e;
                e.v = v;
                e.w = ray.w;
                e.m = m;
                e.kappa = ray.kappa.eval(spec.eps);
                e.beta = ray.beta;
                e.C = recursion_coefficient(spec, ray, m, bundle);
                out.entries.push_back(std::move(e));
            }
        }
    }
    return out;
}

RationalFunction recursion_part(const RecursionData& rec, const LocalizedSeries& z,
                                const FixedPoint& v, const DegreeVector& d) {
    RationalFunction acc;
    for (const auto& e : rec.entries) {
        if (!(e.v == v)) continue;
        DegreeVector mbeta = e.beta;
        for (auto& x : mbeta) x *= e.m;
        if (!deg_leq(mbeta, d)) continue;
        DegreeVector rest = deg_sub(d, mbeta);
        RationalFunction zw = z.at(e.w, rest);
        Rational point = -e.kappa / e.m;
        if (zw.has_pole_at(point))
            throw DegenerateParameterError("substitution point hits a pole of a lower coefficient");
        Rational val = zw.eval(point);
        if (val == 0) continue;
        // C /(h (kappa + m h)) * Z_w(-kappa/m)
        Poly den;
        den.c = {Rational(0), e.kappa, Rational(0)};
        den.c[2] = Rational(e.m);
        den.trim();
        acc = acc + RationalFunction(Poly(e.C * val), den);
    }
    return acc;
}

namespace {

Rational multi_factorial(const std::vector<int>& gamma) {
    Rational f(1);
    for (int g : gamma) f *= Rational(factorial(g));
    return f;
}

// prod_i ((p_i)_v + d_i h)^{gamma_i} as a polynomial in h
Poly moment_poly(const SpaceSpec& spec, const FixedPoint& v, const DegreeVector& d,
                 const std::vector<int>& gamma) {
    Poly acc(Rational(1));
    for (size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i] == 0) continue;
        Poly f;
        f.c = {spec.restrict_divisor(static_cast<int>(i), v).eval(spec.eps), Rational(d[i])};
        f.trim();
        for (int rep = 0; rep < gamma[i]; ++rep) acc = acc * f;
    }
    return acc;
}

Rational bundle_euler_at(const SpaceSpec& spec, const std::vector<std::vector<int>>& bundle,
                         const FixedPoint& v) {
    Rational e(1);
    for (const auto& l : bundle) e *= spec.restrict_bundle(l, v).eval(spec.eps);
    return e;
}

}  // namespace

RationalFunction double_construction_entry(const SpaceSpec& spec,
                                           const std::vector<std::vector<int>>& bundle,
                                           const LocalizedSeries& z, const DegreeVector& d,
                                           const std::vector<int>& gamma) {
    RationalFunction acc;
    Rational gfact = multi_factorial(gamma);
    for (const auto& v : spec.fixed_points()) {
        Rational weight = bundle_euler_at(spec, bundle, v) / spec.euler_at(v);
        RationalFunction point_sum;
        for (const auto& d1 : degrees_up_to(z.k, total_degree(d))) {
            if (!deg_leq(d1, d)) continue;
            RationalFunction z1 = z.at(v, d1);
            if (z1.is_zero()) continue;
            RationalFunction z2 = z.at(v, deg_sub(d, d1)).reflected();
            if (z2.is_zero()) continue;
            RationalFunction moment(moment_poly(spec, v, d1, gamma), Poly(Rational(1)));
            point_sum = point_sum + z1 * z2 * moment;
        }
        acc = acc + point_sum.scaled(weight / gfact);
    }
    return acc;
}

namespace {

// Exact Gaussian elimination; returns true and fills x when the system has a
// unique solution, false when underdetermined; throws on inconsistency.
bool solve_linear_unique(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                         std::vector<Rational>& x) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_of_col(cols, SIZE_MAX);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = SIZE_MAX;
        for (size_t r = rank; r < rows; ++r)
            if (a[r][col] != 0) { sel = r; break; }
        if (sel == SIZE_MAX) continue;
        std::swap(a[rank], a[sel]);
        std::swap(b[rank], b[sel]);
        Rational inv = Rational(1) / a[rank][col];
        for (size_t c = col; c < cols; ++c) a[rank][c] *= inv;
        b[rank] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
            b[r] -= f * b[rank];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (b[r] != 0) throw ConsistencyError("polynomiality completion system is inconsistent");
    for (size_t c = 0; c < cols; ++c)
        if (pivot_of_col[c] == SIZE_MAX) return false;
    x.assign(cols, Rational(0));
    for (size_t c = 0; c < cols; ++c) x[c] = b[pivot_of_col[c]];
    return true;
}

// Solve for the 1/h-polynomial parts of the degree-d coefficients so that
// every double-construction entry at degree d is polynomial in h.  Unknowns
// are r_{v,j} with S_{v,d} = rec_{v,d} + sum_j r_{v,j} h^{-j}, j = 2..|d|.
void complete_degree(const SpaceSpec& spec, const std::vector<std::vector<int>>& bundle,
                     LocalizedSeries& z, const DegreeVector& d) {
    const int t = total_degree(d);
    if (t < 2) return;
    auto points = spec.fixed_points();
    const int npts = static_cast<int>(points.size());
    const int jmin = 2, jmax = t;
    const int ncols = npts * (jmax - jmin + 1);
    auto col_of = [&](int vi, int j) { return vi * (jmax - jmin + 1) + (j - jmin); };

    int gamma_budget = 2 * npts + 2;
    for (int attempt = 0; attempt < 3; ++attempt, gamma_budget *= 2) {
        std::vector<std::vector<Rational>> rows;
        std::vector<Rational> rhs;
        for (const auto& gamma : degrees_up_to(spec.novikov_rank(), gamma_budget)) {
            RationalFunction w0 = double_construction_entry(spec, bundle, z, d, gamma);
            if (!w0.poles_only_at_zero())
                throw DegenerateParameterError(
                    "double construction has a pole away from h = 0 before completion");
            auto laurent = w0.as_laurent();
            int worst = laurent.empty() ? 0 : std::min(0, laurent.begin()->first);
            int tmax = std::max(-worst, jmax);
            Rational gfact = multi_factorial(gamma);
            // row per required-vanishing power h^{-tt}
            for (int tt = 1; tt <= tmax; ++tt) {
                std::vector<Rational> row(ncols, Rational(0));
                bool nonzero = false;
                for (int vi = 0; vi < npts; ++vi) {
                    const auto& v = points[vi];
                    Rational weight =
                        bundle_euler_at(spec, bundle, v) / (spec.euler_at(v) * gfact);
                    Poly b1 = moment_poly(spec, v, d, gamma);
                    Poly b2 = moment_poly(spec, v, DegreeVector(z.k, 0), gamma);
                    for (int j = jmin; j <= jmax; ++j) {
                        // r h^{-j} B1(h) + B2 * r (-h)^{-j}
                        Rational coef = b1.coeff(j - tt);
                        if (tt == j) coef += Rational(j % 2 ? -1 : 1) * b2.coeff(0);
                        if (coef == 0) continue;
                        row[col_of(vi, j)] += weight * coef;
                        nonzero = true;
                    }
                }
                auto it = laurent.find(-tt);
                Rational target = it == laurent.end() ? Rational(0) : -it->second;
                if (!nonzero && target == 0) continue;
                rows.push_back(std::move(row));
                rhs.push_back(target);
            }
        }
        std::vector<Rational> x;
        if (!solve_linear_unique(rows, rhs, x)) continue;  // enlarge the moment budget
        for (int vi = 0; vi < npts; ++vi) {
            std::map<int, Rational> laurent;
            for (int j = jmin; j <= jmax; ++j) {
                const Rational& r = x[col_of(vi, j)];
                if (r != 0) laurent[-j] = r;
            }
            if (!laurent.empty())
                z.set(points[vi], d,
                      z.at(points[vi], d) + RationalFunction::from_laurent(laurent));
        }
        return;
    }
    throw ConsistencyError("polynomiality completion stayed underdetermined");
}

LocalizedSeries correlator_by_recursion(const SpaceSpec& spec,
                                        const std::vector<std::vector<int>>& bundle, int order) {
    spec.check_genericity();
    LocalizedSeries z;
    z.k = spec.novikov_rank();
    z.order = order;
    RecursionData rec = RecursionData::build(spec, bundle, order);
    auto points = spec.fixed_points();
    for (const auto& v : points) z.set(v, DegreeVector(z.k, 0), RationalFunction(Rational(1)));
    for (int t = 1; t <= order; ++t) {
        for (const auto& d : degrees_of_total(z.k, t)) {
            for (const auto& v : points) z.set(v, d, recursion_part(rec, z, v, d));
            complete_degree(spec, bundle, z, d);
        }
    }
    return z;
}

}  // namespace

LocalizedSeries compute_SX(const SpaceSpec& spec, int order) {
    return correlator_by_recursion(spec, {}, order);
}

LocalizedSeries compute_phiV_equivariant(const SpaceSpec& spec,
                                         const std::vector<std::vector<int>>& bundle, int order) {
    LocalizedSeries s = compute_SX(spec, order);
    LocalizedSeries out;
    out.k = s.k;
    out.order = s.order;
    for (const auto& v : spec.fixed_points()) {
        for (const auto& d : degrees_up_to(s.k, order)) {
            RationalFunction base = s.at(v, d);
            if (base.is_zero()) continue;
            Poly factor(Rational(1));
            for (const auto& l : bundle) {
                long pairing = 0;
                for (size_t i = 0; i < l.size(); ++i) pairing += static_cast<long>(l[i]) * d[i];
                if (pairing < 0) throw DomainError("bundle is not convex for this degree");
                Rational lv = spec.restrict_bundle(l, v).eval(spec.eps);
                for (long mm = 1; mm <= pairing; ++mm) {
                    Poly lin;
                    lin.c = {lv, Rational(mm)};
                    lin.trim();
                    factor = factor * lin;
                }
            }
            out.set(v, d, base * RationalFunction(factor, Poly(Rational(1))));
        }
    }
    return out;
}

RationalFunction localized_divisor_pairing(const SpaceSpec& spec, const LocalizedSeries& z,
                                           const DegreeVector& d, const std::vector<int>& a) {
    std::map<FixedPoint, RationalFunction> values;
    for (const auto& v : spec.fixed_points()) {
        Rational insertion(1);
        for (size_t i = 0; i < a.size(); ++i)
            insertion *= rat_pow(spec.restrict_divisor(static_cast<int>(i), v).eval(spec.eps), a[i]);
        values[v] = z.at(v, d).scaled(insertion);
    }
    return localize_integrate(spec, values);
}

Rational nonequivariant_limit(const std::function<Rational(const Rational&)>& value, int bound) {
    const int n = bound + 1;
    std::vector<Rational> ts, ys;
    for (int i = 1; i <= n; ++i) {
        ts.push_back(Rational(i));
        ys.push_back(value(Rational(i)));
    }
    auto lagrange_at = [&](const Rational& x) {
        Rational acc(0);
        for (int i = 0; i < n; ++i) {
            Rational term = ys[i];
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                term *= (x - ts[j]) / (ts[i] - ts[j]);
            }
            acc += term;
        }
        return acc;
    };
    Rational check_t(n + 1);
    if (lagrange_at(check_t) != value(check_t))
        throw ConsistencyError("degree bound violated in scaling-limit interpolation");
    return lagrange_at(Rational(0));
}

namespace {

// all multisets of size l drawn from idx (combinations with repetition)
void sym_weights_rec(const std::vector<int>& idx, int l, size_t start, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (l == 0) {
        out.push_back(cur);
        return;
    }
    for (size_t i = start; i < idx.size(); ++i) {
        cur.push_back(idx[i]);
        sym_weights_rec(idx, l - 1, i, cur, out);
        cur.pop_back();
    }
}

Rational euler_sym_once(int k, int n, int l, const std::vector<Rational>& eps) {
    SpaceSpec spec = SpaceSpec::grassmannian(k, n, eps);
    Rational acc(0);
    for (const auto& v : spec.fixed_points()) {
        std::vector<std::vector<int>> monos;
        std::vector<int> cur;
        sym_weights_rec(v.data, l, 0, cur, monos);
        Rational num(1);
        for (const auto& mono : monos) {
            Rational w(0);
            for (int i : mono) w -= eps[i - 1];  // dual subbundle weights
            if (w == 0) throw DegenerateParameterError("vanishing symmetric-power weight");
            num *= w;
        }
        acc += num / spec.euler_at(v);
    }
    return acc;
}

Rational divisor_power_once(int k, int n, int e, const std::vector<Rational>& eps) {
    SpaceSpec spec = SpaceSpec::grassmannian(k, n, eps);
    std::map<FixedPoint, Rational> values;
    for (const auto& v : spec.fixed_points())
        values[v] = rat_pow(spec.restrict_divisor(0, v).eval(eps), e);
    return localize_integrate(spec, values);
}

}  // namespace

Rational oracle_euler_sym(int k, int n, int l, std::uint64_t seed) {
    Rational first;
    for (int draw = 0; draw < 3; ++draw) {
        auto spec = with_generic_eps(SpaceSpec::grassmannian(k, n), seed + 101 * draw);
        Rational val = euler_sym_once(k, n, l, spec.eps);
        if (draw == 0)
            first = val;
        else if (val != first)
            throw ConsistencyError("symmetric-power Euler integral depends on torus parameters");
    }
    return first;
}

Rational oracle_divisor_power(int k, int n, int e, std::uint64_t seed) {
    Rational first;
    for (int draw = 0; draw < 3; ++draw) {
        auto spec = with_generic_eps(SpaceSpec::grassmannian(k, n), seed + 101 * draw);
        Rational val = divisor_power_once(k, n, e, spec.eps);
        if (draw == 0)
            first = val;
        else if (val != first)
            throw ConsistencyError("divisor-power integral depends on torus parameters");
    }
    return first;
}

}  // namespace qhs
