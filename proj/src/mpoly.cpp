#include "qhs/mpoly.hpp"

#include <sstream>

#include "qhs/errors.hpp"

namespace qhs {

MPoly MPoly::constant(int nvars, Rational v) {
    MPoly p(nvars);
    if (v != 0) p.terms[std::vector<int>(nvars, 0)] = std::move(v);
    return p;
}

MPoly MPoly::var(int nvars, int i, Rational coeff, int exp) {
    MPoly p(nvars);
    if (coeff == 0) return p;
    std::vector<int> e(nvars, 0);
    e[i] = exp;
    p.terms[e] = std::move(coeff);
    return p;
}

void MPoly::add_term(const std::vector<int>& e, const Rational& v) {
    if (v == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, v);
    } else {
        it->second += v;
        if (it->second == 0) terms.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, v] : r.terms) v = -v;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (nvars != o.nvars) throw DescriptorError("mpoly variable count mismatch");
    MPoly r = *this;
    for (const auto& [e, v] : o.terms) r.add_term(e, v);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (nvars != o.nvars) throw DescriptorError("mpoly variable count mismatch");
    MPoly r(nvars);
    std::vector<int> e(nvars);
    for (const auto& [e1, v1] : terms)
        for (const auto& [e2, v2] : o.terms) {
            for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, v1 * v2);
        }
    return r;
}

MPoly MPoly::scaled(const Rational& s) const {
    if (s == 0) return MPoly(nvars);
    MPoly r = *this;
    for (auto& [e, v] : r.terms) v *= s;
    return r;
}

MPoly MPoly::pow(int e) const {
    if (e < 0) throw DomainError("negative mpoly power");
    MPoly acc = constant(nvars, Rational(1));
    MPoly b = *this;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

MPoly MPoly::subst_var(int i, const MPoly& sub) const {
    MPoly r(nvars);
    std::map<int, MPoly> powers;  // cache sub^k
    powers[0] = constant(nvars, Rational(1));
    for (const auto& [e, v] : terms) {
        int k = e[i];
        if (!powers.count(k)) {
            int known = k;
            while (!powers.count(known)) --known;
            MPoly acc = powers[known];
            for (int j = known + 1; j <= k; ++j) {
                acc = acc * sub;
                powers[j] = acc;
            }
        }
        std::vector<int> rest = e;
        rest[i] = 0;
        MPoly term(nvars);
        term.terms[rest] = v;
        r = r + term * powers[k];
    }
    return r;
}

MPoly MPoly::set_var(int i, const Rational& value) const {
    MPoly r(nvars);
    for (const auto& [e, v] : terms) {
        std::vector<int> rest = e;
        rest[i] = 0;
        r.add_term(rest, v * rat_pow(value, e[i]));
    }
    return r;
}

MPoly MPoly::div_exact(const MPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("mpoly division by zero");
    MPoly rem = *this, quot(nvars);
    const auto& dl = *divisor.terms.rbegin();  // lex-leading term
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms.rbegin();
        std::vector<int> e(nvars);
        for (int i = 0; i < nvars; ++i) {
            e[i] = rl.first[i] - dl.first[i];
            if (e[i] < 0) throw DomainError("mpoly division is not exact");
        }
        Rational c = rl.second / dl.second;
        MPoly t(nvars);
        t.terms[e] = c;
        quot = quot + t;
        rem = rem - t * divisor;
    }
    return quot;
}

bool MPoly::is_weighted_homogeneous(const std::vector<int>& weights, long* degree_out) const {
    bool first = true;
    long deg = 0;
    for (const auto& [e, v] : terms) {
        long d = 0;
        for (int i = 0; i < nvars; ++i) d += static_cast<long>(e[i]) * weights[i];
        if (first) {
            deg = d;
            first = false;
        } else if (d != deg) {
            return false;
        }
    }
    if (degree_out) *degree_out = deg;
    return true;
}

Rational MPoly::coeff(const std::vector<int>& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? Rational(0) : it->second;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        Rational v = it->second;
        if (!first) {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        bool all_zero = true;
        for (int e : it->first)
            if (e) all_zero = false;
        if (v != 1 || all_zero) os << to_string(v);
        bool printed = (v != 1 || all_zero);
        for (int i = 0; i < nvars; ++i) {
            if (it->first[i] == 0) continue;
            if (printed) os << "*";
            os << names[i];
            if (it->first[i] > 1) os << "^" << it->first[i];
            printed = true;
        }
    }
    return os.str();
}

MPoly det_bareiss(std::vector<std::vector<MPoly>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) throw DomainError("empty matrix");
    const int nv = m[0][0].nvars;
    if (n == 1) return m[0][0];
    MPoly prev = MPoly::constant(nv, Rational(1));
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) throw DomainError("zero pivot in fraction-free elimination");
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).div_exact(prev);
        prev = m[k][k];
    }
    return m[n - 1][n - 1];
}

static MPoly det_cofactor_rec(const std::vector<std::vector<MPoly>>& m, std::vector<int> rows, int col) {
    const int nv = m[0][0].nvars;
    if (rows.size() == 1) return m[rows[0]][col];
    MPoly acc(nv);
    Rational sign(1);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (!m[rows[r]][col].is_zero()) {
            std::vector<int> sub;
            for (size_t s = 0; s < rows.size(); ++s)
                if (s != r) sub.push_back(rows[s]);
            acc = acc + (m[rows[r]][col] * det_cofactor_rec(m, sub, col + 1)).scaled(sign);
        }
        sign = -sign;
    }
    return acc;
}

MPoly det_cofactor(const std::vector<std::vector<MPoly>>& m) {
    if (m.empty()) throw DomainError("empty matrix");
    std::vector<int> rows(m.size());
    for (size_t i = 0; i < m.size(); ++i) rows[i] = static_cast<int>(i);
    return det_cofactor_rec(m, rows, 0);
}

}  // namespace qhs
