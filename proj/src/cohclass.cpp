#include "qhs/cohclass.hpp"

#include <sstream>

#include "qhs/errors.hpp"

namespace qhs {

std::string RingDescriptor::str() const {
    std::ostringstream os;
    os << "P(";
    for (size_t i = 0; i < bounds.size(); ++i) {
        if (i) os << ",";
        os << bounds[i];
    }
    os << ")";
    return os.str();
}

void require_same_ring(const RingDescriptor& a, const RingDescriptor& b) {
    if (a != b) throw DescriptorError("ring descriptor mismatch: " + a.str() + " vs " + b.str());
}

CohClass CohClass::scalar(const RingDescriptor& r, Rational v) {
    CohClass c(r);
    if (v != 0) c.coef[std::vector<int>(r.k(), 0)] = std::move(v);
    return c;
}

CohClass CohClass::generator(const RingDescriptor& r, int i) {
    if (i < 0 || i >= r.k()) throw DomainError("generator index out of range");
    CohClass c(r);
    if (r.bounds[i] >= 1) {
        std::vector<int> e(r.k(), 0);
        e[i] = 1;
        c.coef[e] = Rational(1);
    }
    return c;
}

CohClass CohClass::divisor(const RingDescriptor& r, const std::vector<int>& l) {
    if (static_cast<int>(l.size()) != r.k()) throw DescriptorError("divisor vector length mismatch");
    CohClass c(r);
    for (int i = 0; i < r.k(); ++i)
        if (l[i] != 0) c = c + generator(r, i).scaled(Rational(l[i]));
    return c;
}

bool CohClass::is_scalar() const {
    for (const auto& [e, v] : coef)
        for (int x : e)
            if (x) return false;
    return true;
}

Rational CohClass::scalar_part() const { return coefficient(std::vector<int>(ring.k(), 0)); }

Rational CohClass::coefficient(const std::vector<int>& e) const {
    auto it = coef.find(e);
    return it == coef.end() ? Rational(0) : it->second;
}

void CohClass::add_term(const std::vector<int>& e, const Rational& v) {
    if (v == 0) return;
    for (int i = 0; i < ring.k(); ++i)
        if (e[i] > ring.bounds[i]) return;  // killed by p_i^{n_i+1} = 0
    auto it = coef.find(e);
    if (it == coef.end()) {
        coef.emplace(e, v);
    } else {
        it->second += v;
        if (it->second == 0) coef.erase(it);
    }
}

CohClass CohClass::operator-() const {
    CohClass r = *this;
    for (auto& [e, v] : r.coef) v = -v;
    return r;
}

CohClass CohClass::operator+(const CohClass& o) const {
    require_same_ring(ring, o.ring);
    CohClass r = *this;
    for (const auto& [e, v] : o.coef) r.add_term(e, v);
    return r;
}

CohClass CohClass::operator-(const CohClass& o) const { return *this + (-o); }

CohClass CohClass::operator*(const CohClass& o) const {
    require_same_ring(ring, o.ring);
    CohClass r(ring);
    std::vector<int> e(ring.k());
    for (const auto& [e1, v1] : coef)
        for (const auto& [e2, v2] : o.coef) {
            for (int i = 0; i < ring.k(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, v1 * v2);
        }
    return r;
}

CohClass CohClass::scaled(const Rational& s) const {
    if (s == 0) return CohClass(ring);
    CohClass r = *this;
    for (auto& [e, v] : r.coef) v *= s;
    return r;
}

CohClass CohClass::pow(int e) const {
    if (e < 0) throw DomainError("negative power of a cohomology class");
    CohClass acc = one(ring);
    CohClass b = *this;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

std::string CohClass::str() const {
    if (coef.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : coef) {
        if (!first) os << " + ";
        first = false;
        os << to_string(v);
        for (int i = 0; i < ring.k(); ++i) {
            if (e[i] == 0) continue;
            os << "*p" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

Rational integrate_X(const CohClass& a) {
    return a.coefficient(a.ring.bounds);
}

}  // namespace qhs
