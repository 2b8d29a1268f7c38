#include "qhs/ambient.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qhs/errors.hpp"

namespace qhs {

std::string FixedPoint::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < data.size(); ++i) {
        if (i) os << ",";
        os << data[i];
    }
    os << "]";
    return os.str();
}

Character Character::operator+(const Character& o) const {
    Character r = *this;
    for (size_t i = 0; i < r.coef.size(); ++i) r.coef[i] += o.coef[i];
    return r;
}

Character Character::operator-(const Character& o) const {
    Character r = *this;
    for (size_t i = 0; i < r.coef.size(); ++i) r.coef[i] -= o.coef[i];
    return r;
}

Character Character::operator-() const { return scaled(-1); }

Character Character::scaled(long s) const {
    Character r = *this;
    for (auto& c : r.coef) c *= s;
    return r;
}

bool Character::is_zero() const {
    for (long c : coef)
        if (c) return false;
    return true;
}

Rational Character::eval(const std::vector<Rational>& eps) const {
    if (coef.size() != eps.size()) throw DescriptorError("character length mismatch");
    Rational r(0);
    for (size_t i = 0; i < coef.size(); ++i)
        if (coef[i]) r += Rational(coef[i]) * eps[i];
    return r;
}

std::string Character::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coef.size(); ++i) {
        if (!coef[i]) continue;
        if (!first) os << (coef[i] > 0 ? "+" : "");
        first = false;
        if (coef[i] == -1)
            os << "-";
        else if (coef[i] != 1)
            os << coef[i] << "*";
        os << "e" << (i + 1);
    }
    return first ? "0" : os.str();
}

SpaceSpec SpaceSpec::projective_product(std::vector<int> dims, std::vector<Rational> eps) {
    SpaceSpec s;
    s.kind = SpaceKind::ProjectiveProduct;
    s.dims = std::move(dims);
    s.eps = std::move(eps);
    s.validate();
    return s;
}

SpaceSpec SpaceSpec::grassmannian(int k, int n, std::vector<Rational> eps) {
    SpaceSpec s;
    s.kind = SpaceKind::Grassmannian;
    s.gr_k = k;
    s.gr_n = n;
    s.eps = std::move(eps);
    s.validate();
    return s;
}

SpaceSpec SpaceSpec::flag_a(int n, std::vector<Rational> eps) {
    SpaceSpec s;
    s.kind = SpaceKind::FlagA;
    s.flag_n = n;
    s.eps = std::move(eps);
    s.validate();
    return s;
}

int SpaceSpec::novikov_rank() const {
    switch (kind) {
        case SpaceKind::ProjectiveProduct: return static_cast<int>(dims.size());
        case SpaceKind::Grassmannian: return 1;
        case SpaceKind::FlagA: return flag_n - 1;
    }
    return 0;
}

int SpaceSpec::dimension() const {
    switch (kind) {
        case SpaceKind::ProjectiveProduct: return std::accumulate(dims.begin(), dims.end(), 0);
        case SpaceKind::Grassmannian: return gr_k * (gr_n - gr_k);
        case SpaceKind::FlagA: return flag_n * (flag_n - 1) / 2;
    }
    return 0;
}

int SpaceSpec::eps_count() const {
    switch (kind) {
        case SpaceKind::ProjectiveProduct: {
            int n = 0;
            for (int d : dims) n += d + 1;
            return n;
        }
        case SpaceKind::Grassmannian: return gr_n;
        case SpaceKind::FlagA: return flag_n;
    }
    return 0;
}

std::vector<int> SpaceSpec::fano_degrees() const {
    switch (kind) {
        case SpaceKind::ProjectiveProduct: {
            std::vector<int> f;
            for (int d : dims) f.push_back(d + 1);
            return f;
        }
        case SpaceKind::Grassmannian: return {gr_n};
        case SpaceKind::FlagA: return std::vector<int>(flag_n - 1, 2);
    }
    return {};
}

RingDescriptor SpaceSpec::ring() const {
    if (kind != SpaceKind::ProjectiveProduct)
        throw DomainError("closed cohomology model exists for products of projective spaces only");
    return RingDescriptor{dims};
}

std::string SpaceSpec::str() const {
    std::ostringstream os;
    switch (kind) {
        case SpaceKind::ProjectiveProduct: {
            os << "P(";
            for (size_t i = 0; i < dims.size(); ++i) {
                if (i) os << "x";
                os << dims[i];
            }
            os << ")";
            break;
        }
        case SpaceKind::Grassmannian: os << "Gr(" << gr_k << "," << gr_n << ")"; break;
        case SpaceKind::FlagA: os << "Fl(" << flag_n << ")"; break;
    }
    return os.str();
}

void SpaceSpec::validate() const {
    switch (kind) {
        case SpaceKind::ProjectiveProduct:
            if (dims.empty()) throw ConfigError("projective product needs at least one factor");
            for (int d : dims)
                if (d < 1) throw ConfigError("projective factor dimension must be >= 1");
            break;
        case SpaceKind::Grassmannian:
            if (gr_k < 1 || gr_k >= gr_n) throw ConfigError("grassmannian needs 1 <= k < n");
            break;
        case SpaceKind::FlagA:
            if (flag_n < 2) throw ConfigError("flag manifold needs n >= 2");
            break;
    }
    if (!eps.empty()) {
        if (static_cast<int>(eps.size()) != eps_count())
            throw ConfigError("torus parameter count mismatch");
        for (size_t i = 0; i < eps.size(); ++i)
            for (size_t j = i + 1; j < eps.size(); ++j)
                if (eps[i] == eps[j]) throw ConfigError("torus parameters must be pairwise distinct");
    }
}

std::vector<FixedPoint> SpaceSpec::fixed_points() const {
    std::vector<FixedPoint> out;
    switch (kind) {
        case SpaceKind::ProjectiveProduct: {
            std::vector<int> cur(dims.size(), 0);
            while (true) {
                out.push_back(FixedPoint{cur});
                int i = static_cast<int>(dims.size()) - 1;
                while (i >= 0) {
                    if (++cur[i] <= dims[i]) break;
                    cur[i] = 0;
                    --i;
                }
                if (i < 0) break;
            }
            break;
        }
        case SpaceKind::Grassmannian: {
            std::vector<int> sel(gr_k);
            std::iota(sel.begin(), sel.end(), 1);
            while (true) {
                out.push_back(FixedPoint{sel});
                int i = gr_k - 1;
                while (i >= 0 && sel[i] == gr_n - gr_k + 1 + i) --i;
                if (i < 0) break;
                ++sel[i];
                for (int j = i + 1; j < gr_k; ++j) sel[j] = sel[j - 1] + 1;
            }
            break;
        }
        case SpaceKind::FlagA: {
            std::vector<int> perm(flag_n);
            std::iota(perm.begin(), perm.end(), 1);
            do {
                out.push_back(FixedPoint{perm});
            } while (std::next_permutation(perm.begin(), perm.end()));
            break;
        }
    }
    return out;
}

// Each tangent direction at v is a weight eps_to - eps_from; rays, tangent
// weights, and normal-bundle pairings all derive from these index pairs.
namespace {

struct Direction {
    int from, to;    // global eps indices
    FixedPoint w;    // other end of the ray
    DegreeVector beta;
};

std::vector<Direction> directions_at(const SpaceSpec& spec, const FixedPoint& v) {
    std::vector<Direction> out;
    switch (spec.kind) {
        case SpaceKind::ProjectiveProduct: {
            int off = 0;
            for (size_t i = 0; i < spec.dims.size(); ++i) {
                for (int j = 0; j <= spec.dims[i]; ++j) {
                    if (j == v.data[i]) continue;
                    Direction d;
                    d.from = off + v.data[i];
                    d.to = off + j;
                    d.w = v;
                    d.w.data[i] = j;
                    d.beta.assign(spec.dims.size(), 0);
                    d.beta[i] = 1;
                    out.push_back(std::move(d));
                }
                off += spec.dims[i] + 1;
            }
            break;
        }
        case SpaceKind::Grassmannian: {
            for (int i : v.data) {
                for (int j = 1; j <= spec.gr_n; ++j) {
                    if (std::find(v.data.begin(), v.data.end(), j) != v.data.end()) continue;
                    Direction d;
                    d.from = i - 1;
                    d.to = j - 1;
                    d.w = v;
                    auto it = std::find(d.w.data.begin(), d.w.data.end(), i);
                    *it = j;
                    std::sort(d.w.data.begin(), d.w.data.end());
                    d.beta = {1};
                    out.push_back(std::move(d));
                }
            }
            break;
        }
        case SpaceKind::FlagA: {
            int n = spec.flag_n;
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    Direction d;
                    d.from = v.data[a] - 1;
                    d.to = v.data[b] - 1;
                    d.w = v;
                    std::swap(d.w.data[a], d.w.data[b]);
                    d.beta.assign(n - 1, 0);
                    for (int l = a; l < b; ++l) d.beta[l] = 1;
                    out.push_back(std::move(d));
                }
            }
            break;
        }
    }
    return out;
}

Character direction_character(const SpaceSpec& spec, const Direction& d) {
    Character c(spec.eps_count());
    c.coef[d.to] += 1;
    c.coef[d.from] -= 1;
    return c;
}

// coroot pairing of direction dp against the ray direction dk
int direction_pairing(const Direction& dp, const Direction& dk) {
    int p = 0;
    if (dp.to == dk.to) p += 1;
    if (dp.from == dk.to) p -= 1;
    if (dp.to == dk.from) p -= 1;
    if (dp.from == dk.from) p += 1;
    return p;
}

}  // namespace

std::vector<Character> SpaceSpec::tangent_weights(const FixedPoint& v) const {
    std::vector<Character> out;
    for (const auto& d : directions_at(*this, v)) out.push_back(direction_character(*this, d));
    return out;
}

std::vector<Ray> SpaceSpec::rays(const FixedPoint& v) const {
    std::vector<Ray> out;
    for (const auto& d : directions_at(*this, v))
        out.push_back(Ray{v, d.w, direction_character(*this, d), d.beta});
    return out;
}

Character SpaceSpec::restrict_divisor(int i, const FixedPoint& v) const {
    Character c(eps_count());
    switch (kind) {
        case SpaceKind::ProjectiveProduct: {
            if (i < 0 || i >= static_cast<int>(dims.size())) throw DomainError("divisor index out of range");
            int off = 0;
            for (int j = 0; j < i; ++j) off += dims[j] + 1;
            c.coef[off + v.data[i]] = -1;
            break;
        }
        case SpaceKind::Grassmannian: {
            if (i != 0) throw DomainError("grassmannian has a single basis divisor");
            for (int x : v.data) c.coef[x - 1] -= 1;
            break;
        }
        case SpaceKind::FlagA: {
            if (i < 0 || i >= flag_n - 1) throw DomainError("divisor index out of range");
            for (int pos = 0; pos <= i; ++pos) c.coef[v.data[pos] - 1] -= 1;
            break;
        }
    }
    return c;
}

Character SpaceSpec::restrict_bundle(const std::vector<int>& l, const FixedPoint& v) const {
    if (static_cast<int>(l.size()) != novikov_rank())
        throw DescriptorError("bundle pairing vector has wrong length");
    Character c(eps_count());
    for (int i = 0; i < novikov_rank(); ++i)
        if (l[i] != 0) c = c + restrict_divisor(i, v).scaled(l[i]);
    return c;
}

Rational SpaceSpec::euler_at(const FixedPoint& v) const {
    Rational e(1);
    for (const auto& w : tangent_weights(v)) {
        Rational x = w.eval(eps);
        if (x == 0) throw DegenerateParameterError("vanishing tangent weight at " + v.str());
        e *= x;
    }
    return e;
}

std::vector<Rational> characters_V(const SpaceSpec& spec, const Ray& ray, int m,
                                   const std::vector<int>& l) {
    if (m < 1) throw DomainError("cover multiplicity must be positive");
    long pairing = 0;
    for (size_t i = 0; i < l.size(); ++i) pairing += static_cast<long>(l[i]) * ray.beta[i];
    if (pairing < 0) throw DomainError("bundle is not convex on this ray");
    Rational base = spec.restrict_bundle(l, ray.v).eval(spec.eps);
    Rational kv = ray.kappa.eval(spec.eps);
    std::vector<Rational> out;
    for (long a = 0; a <= m * pairing; ++a) out.push_back(base - kv * Rational(a, m));
    return out;
}

NormalWeights characters_N(const SpaceSpec& spec, const Ray& ray, int m) {
    if (m < 1) throw DomainError("cover multiplicity must be positive");
    NormalWeights out;
    Rational kv = ray.kappa.eval(spec.eps);
    Direction ray_dir;
    bool found = false;
    auto dirs = directions_at(spec, ray.v);
    for (const auto& d : dirs) {
        if (d.w == ray.w && direction_character(spec, d) == ray.kappa) {
            ray_dir = d;
            found = true;
        }
    }
    if (!found) throw DomainError("ray does not start at its base point");
    for (const auto& d : dirs) {
        Rational dv = direction_character(spec, d).eval(spec.eps);
        int p = direction_pairing(d, ray_dir);
        if (p == 2) {
            // the tangent direction along the ray; drop the trivial a = m term
            for (int a = 0; a <= 2 * m; ++a) {
                if (a == m) continue;
                out.h0.push_back(kv * Rational(m - a, m));
            }
        } else if (p >= 0) {
            for (int a = 0; a <= m * p; ++a) out.h0.push_back(dv - kv * Rational(a, m));
        } else if (p == -1) {
            // degree -m summand: no sections, dual obstruction weights instead
            for (int a = 1; a <= m - 1; ++a) out.h1.push_back(dv + kv * Rational(a, m));
        } else {
            throw DomainError("unexpected pairing below -1");
        }
    }
    return out;
}

Rational NormalWeights::euler() const {
    Rational e(1);
    for (const auto& x : h0) {
        if (x == 0) throw DegenerateParameterError("vanishing normal weight");
        e *= x;
    }
    for (const auto& x : h1) {
        if (x == 0) throw DegenerateParameterError("vanishing obstruction weight");
        e /= x;
    }
    return e;
}

Rational recursion_coefficient(const SpaceSpec& spec, const Ray& ray, int m,
                               const std::vector<std::vector<int>>& bundle) {
    Rational kv = ray.kappa.eval(spec.eps);
    if (kv == 0) throw DegenerateParameterError("vanishing ray character");
    Rational c = -kv / m;
    c *= spec.euler_at(ray.v);
    c /= characters_N(spec, ray, m).euler();
    for (const auto& l : bundle) {
        for (const auto& x : characters_V(spec, ray, m, l)) c *= x;
        Rational ev = spec.restrict_bundle(l, ray.v).eval(spec.eps);
        if (ev == 0) throw DegenerateParameterError("vanishing bundle restriction");
        c /= ev;
    }
    return c;
}

Rational localize_integrate(const SpaceSpec& spec, const std::map<FixedPoint, Rational>& values) {
    Rational acc(0);
    for (const auto& v : spec.fixed_points()) {
        auto it = values.find(v);
        if (it == values.end()) throw DomainError("missing fixed-point value");
        acc += it->second / spec.euler_at(v);
    }
    return acc;
}

RationalFunction localize_integrate(const SpaceSpec& spec,
                                    const std::map<FixedPoint, RationalFunction>& values) {
    RationalFunction acc;
    for (const auto& v : spec.fixed_points()) {
        auto it = values.find(v);
        if (it == values.end()) throw DomainError("missing fixed-point value");
        acc = acc + it->second.scaled(Rational(1) / spec.euler_at(v));
    }
    return acc;
}

std::vector<Rational> default_eps(int n, std::uint64_t seed) {
    std::vector<long> primes;
    long candidate = 2;
    while (static_cast<int>(primes.size()) < n) {
        bool is_prime = true;
        for (long p : primes)
            if (p * p <= candidate && candidate % p == 0) { is_prime = false; break; }
        if (is_prime) primes.push_back(candidate);
        ++candidate;
    }
    SplitMix64 rng(seed ^ 0x51a7u);
    std::vector<Rational> eps;
    for (int i = 0; i < n; ++i) {
        long jitter = rng.range(1, 48);
        eps.push_back(Rational(primes[i]) * rat(64 + jitter, 64));
    }
    return eps;
}

void SpaceSpec::check_genericity() const {
    if (static_cast<int>(eps.size()) != eps_count())
        throw DegenerateParameterError("torus parameters not installed");
    for (size_t i = 0; i < eps.size(); ++i)
        for (size_t j = i + 1; j < eps.size(); ++j)
            if (eps[i] == eps[j]) throw DegenerateParameterError("coincident torus parameters");
    auto pts = fixed_points();
    std::set<std::vector<Rational>> restriction_tuples;
    for (const auto& v : pts) {
        std::set<Rational> kappas;
        for (const auto& w : tangent_weights(v)) {
            Rational x = w.eval(eps);
            if (x == 0) throw DegenerateParameterError("vanishing tangent weight");
            if (!kappas.insert(x).second)
                throw DegenerateParameterError("coincident ray characters at a fixed point");
        }
        std::vector<Rational> tuple;
        for (int i = 0; i < novikov_rank(); ++i) tuple.push_back(restrict_divisor(i, v).eval(eps));
        if (!restriction_tuples.insert(tuple).second)
            throw DegenerateParameterError("coincident divisor restrictions at two fixed points");
    }
}

SpaceSpec with_generic_eps(SpaceSpec spec, std::uint64_t seed, int max_tries) {
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        spec.eps = default_eps(spec.eps_count(), seed + static_cast<std::uint64_t>(attempt) * 0x9e37u);
        try {
            spec.check_genericity();
            return spec;
        } catch (const DegenerateParameterError&) {
            continue;
        }
    }
    throw DegenerateParameterError("could not draw generic torus parameters");
}

}  // namespace qhs
