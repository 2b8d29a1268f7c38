#include <doctest.h>

#include "qhs/cohclass.hpp"
#include "qhs/errors.hpp"
#include "qhs/mpoly.hpp"
#include "qhs/poly.hpp"
#include "qhs/series.hpp"

using namespace qhs;

namespace {

RingDescriptor P1{{1}};
RingDescriptor P2{{2}};
RingDescriptor P4{{4}};
RingDescriptor P1xP1{{1, 1}};

CohClass random_class(const RingDescriptor& ring, SplitMix64& rng) {
    CohClass c(ring);
    for (const auto& e : degrees_up_to(ring.k(), 8)) {
        bool fits = true;
        for (int i = 0; i < ring.k(); ++i)
            if (e[i] > ring.bounds[i]) fits = false;
        if (!fits) continue;
        c.add_term(e, rat(rng.range(-9, 9), rng.range(1, 5)));
    }
    return c;
}

}  // namespace

TEST_CASE("rational helpers") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(to_string(rat(-6, 4)) == "-3/2");
    CHECK(parse_rational("7/3") == rat(7, 3));
    CHECK(rat_pow(rat(2, 3), -2) == rat(9, 4));
    CHECK_THROWS_AS(parse_rational("x"), ConfigError);
}

TEST_CASE("quotient ring relations") {
    CohClass one = CohClass::one(P1);
    CohClass p = CohClass::generator(P1, 0);
    CHECK((one + p) * (one - p) == one);  // p^2 = 0
    CohClass p2 = CohClass::generator(P2, 0);
    CHECK((p2 * p2 * p2).is_zero());  // nilpotency in the plane
}

TEST_CASE("hbar arithmetic in the quotient ring") {
    // (p + h)(p - h) = -h^2 when p^2 = 0
    HbarLaurent a = HbarLaurent::from_class(CohClass::generator(P1, 0));
    a.add_term(1, CohClass::one(P1));
    HbarLaurent b = HbarLaurent::from_class(CohClass::generator(P1, 0));
    b.add_term(1, CohClass::one(P1).scaled(Rational(-1)));
    HbarLaurent expect(P1);
    expect.add_term(2, CohClass::one(P1).scaled(Rational(-1)));
    CHECK(a * b == expect);
}

TEST_CASE("invert_linear_factor closed forms") {
    // (p + 2h)^{-1} over the line: 1/(2h) - p/(4h^2)
    HbarLaurent inv = invert_linear_factor(CohClass::generator(P1, 0), Rational(2));
    CHECK(inv.coefficient(-1) == CohClass::one(P1).scaled(rat(1, 2)));
    CHECK(inv.coefficient(-2) == CohClass::generator(P1, 0).scaled(rat(-1, 4)));
    // (p + h)^{-1} over the plane: 1/h - p/h^2 + p^2/h^3
    HbarLaurent inv2 = invert_linear_factor(CohClass::generator(P2, 0), Rational(1));
    CHECK(inv2.coefficient(-1) == CohClass::one(P2));
    CHECK(inv2.coefficient(-2) == CohClass::generator(P2, 0).scaled(Rational(-1)));
    CHECK(inv2.coefficient(-3) == CohClass::generator(P2, 0).pow(2));
    // scalar case (0 + 3h)^{-1} = 1/(3h)
    HbarLaurent inv3 = invert_linear_factor(CohClass(P4), Rational(3));
    CHECK(inv3.coefficient(-1) == CohClass::one(P4).scaled(rat(1, 3)));
    CHECK_THROWS_AS(invert_linear_factor(CohClass::generator(P1, 0), Rational(0)), DomainError);
}

TEST_CASE("invert_linear_factor times its input is one") {
    for (const RingDescriptor& ring : {P1, P2, P4, P1xP1}) {
        for (int m = 1; m <= 20; ++m) {
            CohClass nilp(ring);
            for (int i = 0; i < ring.k(); ++i)
                nilp = nilp + CohClass::generator(ring, i).scaled(rat(i + 1, 2));
            HbarLaurent factor = HbarLaurent::from_class(nilp);
            factor.add_term(1, CohClass::scalar(ring, Rational(m)));
            CHECK(invert_linear_factor(nilp, Rational(m)) * factor == HbarLaurent::one(ring));
        }
    }
}

TEST_CASE("integration against the fundamental class") {
    CHECK(integrate_X(CohClass::generator(P2, 0).pow(2)) == 1);
    CHECK(integrate_X(CohClass::generator(P2, 0)) == 0);
    CHECK(integrate_X(CohClass::generator(P1xP1, 0) * CohClass::generator(P1xP1, 1)) == 1);
}

TEST_CASE("integration pairing is a permutation matrix on monomials") {
    for (const RingDescriptor& ring : {P2, P1xP1, P4}) {
        std::vector<std::vector<int>> monos;
        for (const auto& e : degrees_up_to(ring.k(), 8)) {
            bool fits = true;
            for (int i = 0; i < ring.k(); ++i)
                if (e[i] > ring.bounds[i]) fits = false;
            if (fits) monos.push_back(e);
        }
        for (const auto& a : monos) {
            int ones = 0;
            for (const auto& b : monos) {
                CohClass ma(ring), mb(ring);
                ma.add_term(a, Rational(1));
                mb.add_term(b, Rational(1));
                Rational v = integrate_X(ma * mb);
                CHECK((v == 0 || v == 1));
                if (v == 1) ++ones;
            }
            CHECK(ones == 1);  // unique dual monomial
        }
    }
}

TEST_CASE("ring axioms on randomized classes") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const RingDescriptor& ring = trial % 2 ? P2 : P1xP1;
        CohClass a = random_class(ring, rng), b = random_class(ring, rng),
                 c = random_class(ring, rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("mismatched descriptors are rejected") {
    CHECK_THROWS_AS(CohClass::one(P1) * CohClass::one(P2), DescriptorError);
}

TEST_CASE("bit-exact determinism") {
    SplitMix64 rng1(7), rng2(7);
    CohClass a = random_class(P2, rng1), b = random_class(P2, rng2);
    CHECK(a == b);
    CHECK(a * a == b * b);
}

TEST_CASE("univariate polynomial division and gcd") {
    Poly a = Poly::from_roots_linear({{Rational(1), Rational(1)}, {Rational(2), Rational(1)}});
    Poly b = Poly::from_roots_linear({{Rational(1), Rational(1)}, {Rational(3), Rational(1)}});
    Poly g = poly_gcd(a, b);
    CHECK(g == Poly::from_roots_linear({{Rational(1), Rational(1)}}));
    Poly q, r;
    Poly::divmod(a * b, a, q, r);
    CHECK(r.is_zero());
    CHECK(q == b);
}

TEST_CASE("rational functions normalize and expand") {
    // (h^2 - 1)/(h - 1) = h + 1
    Poly num;
    num.c = {Rational(-1), Rational(0), Rational(1)};
    Poly den;
    den.c = {Rational(-1), Rational(1)};
    RationalFunction f(num, den);
    CHECK(f.is_polynomial());
    CHECK(f.num.c == std::vector<Rational>{Rational(1), Rational(1)});
    // Laurent form of (1 + 2h)/h^2
    RationalFunction g(Poly(Rational(1)), Poly::monomial(2, Rational(1)));
    RationalFunction two_h = RationalFunction::hbar_power(-1).scaled(Rational(2));
    auto laurent = (g + two_h).as_laurent();
    CHECK(laurent.at(-2) == 1);
    CHECK(laurent.at(-1) == 2);
    // expansion of 1/(h - 1) at infinity: 1/h + 1/h^2 + ...
    RationalFunction h(Poly(Rational(1)), den);
    auto exp = h.expand_at_infinity(-3);
    CHECK(exp.at(-1) == 1);
    CHECK(exp.at(-2) == 1);
    CHECK(exp.at(-3) == 1);
    // reflection h -> -h
    CHECK(h.reflected().eval(Rational(2)) == h.eval(Rational(-2)));
}

TEST_CASE("multivariate determinants agree on random matrices") {
    SplitMix64 rng(11);
    for (int n = 2; n <= 4; ++n) {
        std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, MPoly(2)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                MPoly entry = MPoly::constant(2, Rational(rng.range(-3, 3)));
                entry = entry + MPoly::var(2, 0, Rational(rng.range(-2, 2)));
                entry = entry + MPoly::var(2, 1, Rational(rng.range(-2, 2)));
                if (i == j) entry = entry + MPoly::var(2, 0, Rational(1), 2);
                m[i][j] = entry;
            }
        CHECK(det_bareiss(m) == det_cofactor(m));
    }
}

TEST_CASE("multivariate exact division") {
    MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
    MPoly a = (x + y) * (x - y) * (x + y.scaled(Rational(2)));
    CHECK(a.div_exact(x + y) == (x - y) * (x + y.scaled(Rational(2))));
    CHECK_THROWS_AS(a.div_exact(x + MPoly::constant(2, Rational(1))), DomainError);
}
