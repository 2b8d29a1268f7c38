#include "qhs/series.hpp"

#include <functional>
#include <sstream>

#include "qhs/errors.hpp"

namespace qhs {

int total_degree(const DegreeVector& d) {
    int t = 0;
    for (int x : d) t += x;
    return t;
}

DegreeVector deg_add(const DegreeVector& a, const DegreeVector& b) {
    DegreeVector r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

bool deg_leq(const DegreeVector& a, const DegreeVector& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

DegreeVector deg_sub(const DegreeVector& a, const DegreeVector& b) {
    DegreeVector r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

std::string deg_str(const DegreeVector& d) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) os << ",";
        os << d[i];
    }
    os << ")";
    return os.str();
}

std::vector<DegreeVector> degrees_of_total(int k, int t) {
    std::vector<DegreeVector> out;
    if (k == 0) {
        if (t == 0) out.push_back({});
        return out;
    }
    DegreeVector cur(k, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            cur[pos] = x;
            rec(pos + 1, left - x);
        }
    };
    rec(0, t);
    return out;
}

std::vector<DegreeVector> degrees_up_to(int k, int t) {
    std::vector<DegreeVector> out;
    for (int s = 0; s <= t; ++s)
        for (auto& d : degrees_of_total(k, s)) out.push_back(d);
    return out;
}

// ---------------------------------------------------------------- HbarLaurent

HbarLaurent HbarLaurent::from_class(const CohClass& a, int h_exp) {
    HbarLaurent l(a.ring);
    if (!a.is_zero()) l.c[h_exp] = a;
    return l;
}

CohClass HbarLaurent::coefficient(int h_exp) const {
    auto it = c.find(h_exp);
    return it == c.end() ? CohClass(ring) : it->second;
}

void HbarLaurent::add_term(int h_exp, const CohClass& a) {
    if (a.is_zero()) return;
    require_same_ring(ring, a.ring);
    auto it = c.find(h_exp);
    if (it == c.end()) {
        c.emplace(h_exp, a);
    } else {
        it->second = it->second + a;
        if (it->second.is_zero()) c.erase(it);
    }
}

int HbarLaurent::min_exp() const {
    if (c.empty()) throw DomainError("empty Laurent polynomial has no support");
    return c.begin()->first;
}

int HbarLaurent::max_exp() const {
    if (c.empty()) throw DomainError("empty Laurent polynomial has no support");
    return c.rbegin()->first;
}

HbarLaurent HbarLaurent::operator-() const {
    HbarLaurent r = *this;
    for (auto& [e, v] : r.c) v = -v;
    return r;
}

HbarLaurent HbarLaurent::operator+(const HbarLaurent& o) const {
    require_same_ring(ring, o.ring);
    HbarLaurent r = *this;
    for (const auto& [e, v] : o.c) r.add_term(e, v);
    return r;
}

HbarLaurent HbarLaurent::operator-(const HbarLaurent& o) const { return *this + (-o); }

HbarLaurent HbarLaurent::operator*(const HbarLaurent& o) const {
    require_same_ring(ring, o.ring);
    HbarLaurent r(ring);
    for (const auto& [e1, v1] : c)
        for (const auto& [e2, v2] : o.c) r.add_term(e1 + e2, v1 * v2);
    return r;
}

HbarLaurent HbarLaurent::scaled(const Rational& s) const {
    if (s == 0) return HbarLaurent(ring);
    HbarLaurent r = *this;
    for (auto& [e, v] : r.c) v = v.scaled(s);
    return r;
}

HbarLaurent HbarLaurent::mul_class(const CohClass& a) const {
    HbarLaurent r(ring);
    for (const auto& [e, v] : c) r.add_term(e, v * a);
    return r;
}

std::string HbarLaurent::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ")";
        if (e != 0) os << "*h^" << e;
    }
    return os.str();
}

HbarLaurent invert_linear_factor(const CohClass& nilp, const Rational& m) {
    if (m == 0) throw DomainError("invert_linear_factor: zero h coefficient is not invertible");
    if (nilp.scalar_part() != 0)
        throw DomainError("invert_linear_factor: class must be nilpotent (no scalar part)");
    // (c + m h)^{-1} = sum_j (-1)^j c^j / (m h)^{j+1}, finite by nilpotency
    HbarLaurent out(nilp.ring);
    CohClass power = CohClass::one(nilp.ring);
    Rational minv = Rational(1) / m;
    Rational factor = minv;
    int j = 0;
    while (!power.is_zero()) {
        out.add_term(-(j + 1), power.scaled(factor));
        power = power * nilp;
        factor *= -minv;
        ++j;
    }
    return out;
}

std::map<int, Rational> integrate_X(const HbarLaurent& a) {
    std::map<int, Rational> out;
    for (const auto& [e, v] : a.c) {
        Rational r = integrate_X(v);
        if (r != 0) out[e] = r;
    }
    return out;
}

// --------------------------------------------------------------- ScalarSeries

ScalarSeries ScalarSeries::constant(int k, int D, Rational v) {
    ScalarSeries s(k, D);
    if (v != 0) s.c[DegreeVector(k, 0)] = std::move(v);
    return s;
}

Rational ScalarSeries::coefficient(const DegreeVector& d) const {
    auto it = c.find(d);
    return it == c.end() ? Rational(0) : it->second;
}

void ScalarSeries::add_term(const DegreeVector& d, const Rational& v) {
    if (v == 0 || total_degree(d) > D) return;
    auto it = c.find(d);
    if (it == c.end()) {
        c.emplace(d, v);
    } else {
        it->second += v;
        if (it->second == 0) c.erase(it);
    }
}

void require_same_desc(const ScalarSeries& a, const ScalarSeries& b) {
    if (a.k != b.k || a.D != b.D)
        throw DescriptorError("scalar series descriptor mismatch");
}

ScalarSeries ScalarSeries::operator-() const {
    ScalarSeries r = *this;
    for (auto& [d, v] : r.c) v = -v;
    return r;
}

ScalarSeries ScalarSeries::operator+(const ScalarSeries& o) const {
    require_same_desc(*this, o);
    ScalarSeries r = *this;
    for (const auto& [d, v] : o.c) r.add_term(d, v);
    return r;
}

ScalarSeries ScalarSeries::operator-(const ScalarSeries& o) const { return *this + (-o); }

ScalarSeries ScalarSeries::operator*(const ScalarSeries& o) const {
    require_same_desc(*this, o);
    ScalarSeries r(k, D);
    for (const auto& [d1, v1] : c) {
        int t1 = total_degree(d1);
        for (const auto& [d2, v2] : o.c) {
            if (t1 + total_degree(d2) > D) continue;
            r.add_term(deg_add(d1, d2), v1 * v2);
        }
    }
    return r;
}

ScalarSeries ScalarSeries::scaled(const Rational& s) const {
    if (s == 0) return ScalarSeries(k, D);
    ScalarSeries r = *this;
    for (auto& [d, v] : r.c) v *= s;
    return r;
}

ScalarSeries ScalarSeries::pow(int e) const {
    if (e < 0) throw DomainError("negative power of scalar series");
    ScalarSeries acc = one(k, D);
    ScalarSeries b = *this;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

ScalarSeries ScalarSeries::inverse() const {
    Rational a0 = constant_term();
    if (a0 == 0) throw DomainError("series inverse requires nonzero constant term");
    // 1/f = (1/a0) * 1/(1+g), g = f/a0 - 1
    ScalarSeries g = scaled(Rational(1) / a0) - one(k, D);
    ScalarSeries acc = one(k, D);
    ScalarSeries gp = one(k, D);
    for (int j = 1; j <= D; ++j) {
        gp = gp * g;
        if (gp.is_zero()) break;
        acc = acc + gp.scaled(j % 2 ? Rational(-1) : Rational(1));
    }
    return acc.scaled(Rational(1) / a0);
}

std::string ScalarSeries::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, v] : c) {
        if (!first) os << " + ";
        first = false;
        os << to_string(v);
        for (int i = 0; i < k; ++i) {
            if (d[i] == 0) continue;
            os << "*q" << (i + 1);
            if (d[i] > 1) os << "^" << d[i];
        }
    }
    return os.str();
}

ScalarSeries series_exp(const ScalarSeries& f) {
    if (f.constant_term() != 0) throw DomainError("series_exp requires f(0) = 0");
    ScalarSeries acc = ScalarSeries::one(f.k, f.D);
    ScalarSeries term = ScalarSeries::one(f.k, f.D);
    for (int j = 1; j <= f.D; ++j) {
        term = term * f;
        if (term.is_zero()) break;
        acc = acc + term.scaled(Rational(1) / Rational(factorial(j)));
    }
    return acc;
}

ScalarSeries series_log(const ScalarSeries& f) {
    if (f.constant_term() != 1) throw DomainError("series_log requires f(0) = 1");
    ScalarSeries g = f - ScalarSeries::one(f.k, f.D);
    ScalarSeries acc(f.k, f.D);
    ScalarSeries gp = ScalarSeries::one(f.k, f.D);
    for (int j = 1; j <= f.D; ++j) {
        gp = gp * g;
        if (gp.is_zero()) break;
        acc = acc + gp.scaled(Rational(j % 2 ? 1 : -1) / Rational(j));
    }
    return acc;
}

// exp(sum_i d_i f_i) as a scalar series, the multiplier of q^d under the
// substitution q_i -> q_i exp(f_i)
static ScalarSeries substitution_multiplier(const DegreeVector& d, const std::vector<ScalarSeries>& f) {
    const int k = static_cast<int>(f.size());
    ScalarSeries s(f[0].k, f[0].D);
    for (int i = 0; i < k; ++i)
        if (d[i] != 0) s = s + f[i].scaled(Rational(d[i]));
    return series_exp(s);
}

ScalarSeries substitute_scalar(const ScalarSeries& z, const std::vector<ScalarSeries>& f) {
    if (static_cast<int>(f.size()) != z.k) throw DescriptorError("substitution needs one series per variable");
    for (const auto& fi : f)
        if (fi.constant_term() != 0) throw DomainError("substitution series must vanish at q = 0");
    ScalarSeries out(z.k, z.D);
    for (const auto& [d, v] : z.c) {
        ScalarSeries mult = substitution_multiplier(d, f);
        for (const auto& [e, w] : mult.c) {
            if (total_degree(d) + total_degree(e) > z.D) continue;
            out.add_term(deg_add(d, e), v * w);
        }
    }
    return out;
}

std::vector<ScalarSeries> revert_mirror_coordinates(const std::vector<ScalarSeries>& f, int D) {
    if (f.empty()) return {};
    const int k = static_cast<int>(f.size());
    for (const auto& fi : f)
        if (fi.constant_term() != 0) throw DomainError("coordinate change series must vanish at q = 0");
    std::vector<ScalarSeries> g(k, ScalarSeries(k, D));
    // g = -f(Q e^g); each pass fixes one more total degree
    for (int pass = 0; pass <= D; ++pass) {
        std::vector<ScalarSeries> next(k);
        for (int i = 0; i < k; ++i) {
            ScalarSeries fi = f[i];
            fi.D = D;  // recarry at target truncation
            next[i] = -substitute_scalar(fi, g);
        }
        if (next == g) break;
        g = std::move(next);
    }
    return g;
}

// -------------------------------------------------------------- NovikovSeries

NovikovSeries NovikovSeries::one(const RingDescriptor& r, int k, int D) {
    NovikovSeries s(r, k, D);
    s.c[DegreeVector(k, 0)] = HbarLaurent::one(r);
    return s;
}

HbarLaurent NovikovSeries::coefficient(const DegreeVector& d) const {
    auto it = c.find(d);
    return it == c.end() ? HbarLaurent(ring) : it->second;
}

void NovikovSeries::add_term(const DegreeVector& d, const HbarLaurent& v) {
    if (v.is_zero() || total_degree(d) > D) return;
    require_same_ring(ring, v.ring);
    auto it = c.find(d);
    if (it == c.end()) {
        c.emplace(d, v);
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) c.erase(it);
    }
}

void require_same_desc(const NovikovSeries& a, const NovikovSeries& b) {
    require_same_ring(a.ring, b.ring);
    if (a.k != b.k || a.D != b.D) throw DescriptorError("novikov series descriptor mismatch");
}

NovikovSeries NovikovSeries::operator-() const {
    NovikovSeries r = *this;
    for (auto& [d, v] : r.c) v = -v;
    return r;
}

NovikovSeries NovikovSeries::operator+(const NovikovSeries& o) const {
    require_same_desc(*this, o);
    NovikovSeries r = *this;
    for (const auto& [d, v] : o.c) r.add_term(d, v);
    return r;
}

NovikovSeries NovikovSeries::operator-(const NovikovSeries& o) const { return *this + (-o); }

NovikovSeries NovikovSeries::operator*(const NovikovSeries& o) const {
    require_same_desc(*this, o);
    NovikovSeries r(ring, k, D);
    for (const auto& [d1, v1] : c) {
        int t1 = total_degree(d1);
        for (const auto& [d2, v2] : o.c) {
            if (t1 + total_degree(d2) > D) continue;
            r.add_term(deg_add(d1, d2), v1 * v2);
        }
    }
    return r;
}

NovikovSeries NovikovSeries::scaled(const Rational& s) const {
    if (s == 0) return NovikovSeries(ring, k, D);
    NovikovSeries r = *this;
    for (auto& [d, v] : r.c) v = v.scaled(s);
    return r;
}

NovikovSeries NovikovSeries::mul_scalar_series(const ScalarSeries& f) const {
    if (f.k != k) throw DescriptorError("scalar series variable count mismatch");
    NovikovSeries r(ring, k, D);
    for (const auto& [d1, v1] : c) {
        int t1 = total_degree(d1);
        for (const auto& [d2, w] : f.c) {
            if (t1 + total_degree(d2) > D) continue;
            r.add_term(deg_add(d1, d2), v1.scaled(w));
        }
    }
    return r;
}

NovikovSeries NovikovSeries::mul_class(const CohClass& a) const {
    NovikovSeries r(ring, k, D);
    for (const auto& [d, v] : c) r.add_term(d, v.mul_class(a));
    return r;
}

bool NovikovSeries::operator==(const NovikovSeries& o) const {
    return ring == o.ring && k == o.k && D == o.D && c == o.c;
}

bool NovikovSeries::is_scalar() const {
    for (const auto& [d, v] : c)
        for (const auto& [e, cls] : v.c)
            if (e != 0 || !cls.is_scalar()) return false;
    return true;
}

ScalarSeries NovikovSeries::to_scalar() const {
    if (!is_scalar()) throw DomainError("series has non-scalar coefficients");
    ScalarSeries s(k, D);
    for (const auto& [d, v] : c) s.add_term(d, v.coefficient(0).scalar_part());
    return s;
}

NovikovSeries NovikovSeries::from_scalar(const RingDescriptor& r, const ScalarSeries& f) {
    NovikovSeries s(r, f.k, f.D);
    for (const auto& [d, v] : f.c) s.add_term(d, HbarLaurent::from_class(CohClass::scalar(r, v)));
    return s;
}

std::string NovikovSeries::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, v] : c) {
        if (!first) os << "\n";
        first = false;
        os << "q^" << deg_str(d) << ": " << v.str();
    }
    return os.str();
}

NovikovSeries substitute_novikov(const NovikovSeries& z, const std::vector<ScalarSeries>& f) {
    if (static_cast<int>(f.size()) != z.k) throw DescriptorError("substitution needs one series per variable");
    for (const auto& fi : f)
        if (fi.constant_term() != 0) throw DomainError("substitution series must vanish at q = 0");
    NovikovSeries out(z.ring, z.k, z.D);
    for (const auto& [d, v] : z.c) {
        ScalarSeries s(f[0].k, f[0].D);
        for (int i = 0; i < z.k; ++i)
            if (d[i] != 0) s = s + f[i].scaled(Rational(d[i]));
        ScalarSeries mult = series_exp(s);
        for (const auto& [e, w] : mult.c) {
            if (total_degree(d) + total_degree(e) > z.D) continue;
            out.add_term(deg_add(d, e), v.scaled(w));
        }
    }
    return out;
}

NovikovSeries series_exp(const NovikovSeries& f) {
    return NovikovSeries::from_scalar(f.ring, series_exp(f.to_scalar()));
}

NovikovSeries series_log(const NovikovSeries& f) {
    return NovikovSeries::from_scalar(f.ring, series_log(f.to_scalar()));
}

}  // namespace qhs
