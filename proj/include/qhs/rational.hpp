#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "qhs/errors.hpp"

namespace qhs {

// Arbitrary-precision rational, always stored reduced with positive
// denominator (GMP canonical form).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& s) {
    try {
        Rational r(s);
        if (r.get_den() == 0) throw DomainError("zero denominator");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ConfigError("cannot parse rational: '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw DomainError("0^negative");
    Rational b = e < 0 ? Rational(1) / base : base;
    long n = e < 0 ? -e : e;
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline Integer factorial(long n) {
    Integer f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// Deterministic 64-bit generator (splitmix64); used for reproducible torus
// parameters and randomized property tests.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

}  // namespace qhs
