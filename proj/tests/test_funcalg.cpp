#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invlab/gfunc.hpp"

#include <random>

using namespace invlab;

namespace {

GeneralizedFunction radical_inverse() {
    return GeneralizedFunction::monomial(key_radical(-1), FieldScalar(1));
}

// Random ring elements over a fixed small key pool, including radical and
// exponential keys; deterministic seed per test.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    FieldScalar scalar() {
        std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
        return FieldScalar(make_rational(num(rng), den(rng)));
    }
    MonomialKey key(bool with_radical, bool with_exp) {
        std::uniform_int_distribution<int> e(0, 2), b(0, 1);
        MonomialKey k;
        for (int i = 0; i < 4; ++i) k.exps[i] = e(rng);
        if (with_radical && b(rng)) {
            k.rad = b(rng);
            k.rho_pow = -e(rng);
        }
        if (with_exp && b(rng)) {
            k.lam1 = FieldScalar(make_rational(b(rng) ? 1 : -1));
            k.lam2 = FieldScalar(make_rational(b(rng), 2));
        }
        return k;
    }
    GeneralizedFunction fn(int nterms, bool with_radical = true, bool with_exp = true) {
        GeneralizedFunction f;
        for (int i = 0; i < nterms; ++i)
            f += GeneralizedFunction::monomial(key(with_radical, with_exp), scalar());
        return f;
    }
};

} // namespace

TEST_CASE("field scalar arithmetic and canonicalization") {
    FieldScalar a(make_rational(1, 2));
    FieldScalar b(Rational(1), Rational(2), Rational(3));   // 1 + 2 sqrt 3
    CHECK((b * b) == FieldScalar(Rational(13), Rational(4), Rational(3)));
    CHECK((b * b.inverse()) == FieldScalar(1));
    CHECK(a + a == FieldScalar(1));

    // d = 1 collapses to plain rationals, perfect squares fold
    CHECK(FieldScalar(Rational(0), Rational(1), Rational(1)) == FieldScalar(1));
    CHECK(FieldScalar(Rational(1), Rational(2), Rational(4)) == FieldScalar(5));
    CHECK(FieldScalar(Rational(0), Rational(2), make_rational(9, 4)) == FieldScalar(3));

    // mixing discriminants is a configuration error
    FieldScalar s3 = FieldScalar::sqrt_disc(3), si = FieldScalar::sqrt_disc(-1);
    CHECK_THROWS_AS(s3 + si, ConfigError);
    CHECK_NOTHROW(s3 + FieldScalar(7));   // pure rationals mix with anything

    CHECK(si * si == FieldScalar(-1));
    CHECK(si.to_complex() == std::complex<double>(0.0, 1.0));
    CHECK_THROWS_AS(si.to_double(), ConfigError);
}

TEST_CASE("defining relations of the ring") {
    GeneralizedFunction r = GeneralizedFunction::monomial(key_radical(0), FieldScalar(1));
    GeneralizedFunction rho = gf::pow(gf::q1(), 2) + gf::pow(gf::q2(), 2);
    CHECK(r * r == rho);   // r^2 = q1^2 + q2^2, never stored as r^2

    GeneralizedFunction em = GeneralizedFunction::monomial(key_exp(FieldScalar(-1), FieldScalar(0)), FieldScalar(1));
    GeneralizedFunction ep = GeneralizedFunction::monomial(key_exp(FieldScalar(0), FieldScalar(1)), FieldScalar(1));
    GeneralizedFunction both = GeneralizedFunction::monomial(key_exp(FieldScalar(-1), FieldScalar(1)), FieldScalar(1));
    CHECK(em * ep == both);   // exponent additivity

    // r * rho^-1 times r equals 1
    CHECK(radical_inverse() * r == gf::c(1));
}

TEST_CASE("henon-heiles hamiltonian term count") {
    GeneralizedFunction V = gf::q1() * gf::pow(gf::q2(), 2) + gf::pow(gf::q1(), 3);
    GeneralizedFunction H = gf::c(FieldScalar(make_rational(1, 2))) * (gf::pow(gf::p1(), 2) + gf::pow(gf::p2(), 2)) + V;
    CHECK(V.size() == 2);
    CHECK(H.size() == 4);   // two kinetic + two potential monomials
}

TEST_CASE("derivatives: polynomial, radical, exponential") {
    GeneralizedFunction f = gf::pow(gf::q1(), 2) * gf::q2();
    CHECK(f.derive(0) == gf::c(2) * (gf::q1() * gf::q2()));

    GeneralizedFunction r = GeneralizedFunction::monomial(key_radical(0), FieldScalar(1));
    CHECK(r.derive(0) == GeneralizedFunction::monomial([] {
        MonomialKey k = key_radical(-1);
        k.exps[0] = 1;
        return k;
    }()));

    // d/dq1 (-kappa/r) = kappa q1 r rho^-2, the Kepler force kernel
    GeneralizedFunction mkr = gf::c(-1) * radical_inverse();
    MonomialKey expect = key_radical(-2);
    expect.exps[0] = 1;
    CHECK(mkr.derive(0) == GeneralizedFunction::monomial(expect, FieldScalar(1)));

    GeneralizedFunction e = GeneralizedFunction::monomial(key_exp(FieldScalar(make_rational(-1, 2)), FieldScalar(2)), FieldScalar(1));
    CHECK(e.derive(0) == FieldScalar(make_rational(-1, 2)) * e);
    CHECK(e.derive(1) == FieldScalar(2) * e);
    CHECK(e.derive(2).is_zero());
}

TEST_CASE("rho-reduction gives canonical forms") {
    // q1^2 rho^-1 + q2^2 rho^-1 == 1
    MonomialKey k1, k2;
    k1.exps[0] = 2;
    k1.rho_pow = -1;
    k2.exps[1] = 2;
    k2.rho_pow = -1;
    GeneralizedFunction f = GeneralizedFunction::monomial(k1, FieldScalar(1)) +
                            GeneralizedFunction::monomial(k2, FieldScalar(1));
    CHECK(f == gf::c(1));

    // 1 - q2^2 rho^-1 == q1^2 rho^-1 (same canonical form either way)
    GeneralizedFunction g = gf::c(1) - GeneralizedFunction::monomial(k2, FieldScalar(1));
    CHECK(g == GeneralizedFunction::monomial(k1, FieldScalar(1)));

    // differentiation triggers cancellation: d/dq1 (q1 * r rho^-1)
    GeneralizedFunction h = gf::q1() * radical_inverse();
    MonomialKey expect = key_radical(-2);
    expect.exps[1] = 2;
    CHECK(h.derive(0) == GeneralizedFunction::monomial(expect, FieldScalar(1)));
}

TEST_CASE("evaluate") {
    GeneralizedFunction Hk = gf::c(FieldScalar(make_rational(1, 2))) * (gf::pow(gf::p1(), 2) + gf::pow(gf::p2(), 2)) -
                             radical_inverse();
    CHECK(evaluate_real(Hk, {1, 0, 0, 1}) == doctest::Approx(-0.5).epsilon(1e-14));

    GeneralizedFunction r = GeneralizedFunction::monomial(key_radical(0), FieldScalar(1));
    CHECK(evaluate_real(r, {3, 4, 0, 0}) == doctest::Approx(5.0));

    CHECK_THROWS_AS(evaluate(Hk, {0, 0, 1, 1}), SingularityError);

    // complex values appear only for d < 0
    GeneralizedFunction gi = gf::c(FieldScalar::sqrt_disc(-1)) * gf::q1();
    std::complex<double> z = evaluate(gi, {2, 0, 0, 0});
    CHECK(z == std::complex<double>(0.0, 2.0));
}

TEST_CASE("coefficient split of parametric functions") {
    // f = a1 q1 p1 + (a1 + a2) q2
    ParamFunc f;
    MonomialKey qp;
    qp.exps[0] = 1;
    qp.exps[2] = 1;
    f += ParamFunc::monomial(qp, AffineForm::parameter(0));
    AffineForm a12 = AffineForm::parameter(0) + AffineForm::parameter(1);
    f += ParamFunc::monomial(key_var(1), a12);
    REQUIRE(f.terms().size() == 2);
    CHECK(f.terms().at(qp) == AffineForm::parameter(0));
    CHECK(f.terms().at(key_var(1)) == a12);

    ParamFunc zero;
    CHECK(zero.terms().empty());

    // substitution closes back to the concrete ring
    GeneralizedFunction g = substitute(f, {FieldScalar(2), FieldScalar(-2)});
    CHECK(g == gf::c(2) * (gf::q1() * gf::p1()));
}

TEST_CASE("ring axioms on randomized term sets") {
    Gen gen(20240811);
    for (int iter = 0; iter < 25; ++iter) {
        GeneralizedFunction f = gen.fn(4), g = gen.fn(4), h = gen.fn(3);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f * g == g * f);
        CHECK((f - f).is_zero());
    }
}

TEST_CASE("derive commutes across axes") {
    Gen gen(7);
    for (int iter = 0; iter < 25; ++iter) {
        GeneralizedFunction f = gen.fn(4);
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                CHECK(f.derive(a).derive(b) == f.derive(b).derive(a));
    }
}

TEST_CASE("evaluate is a ring homomorphism up to float tolerance") {
    Gen gen(99);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.25, 1.5);
    for (int iter = 0; iter < 20; ++iter) {
        GeneralizedFunction f = gen.fn(4), g = gen.fn(4);
        std::array<double, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
        std::complex<double> lhs = evaluate(f * g, x);
        std::complex<double> rhs = evaluate(f, x) * evaluate(g, x);
        double scale = 1.0 + std::abs(rhs);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);

        GeneralizedFunction r = GeneralizedFunction::monomial(key_radical(0), FieldScalar(1));
        GeneralizedFunction rho = gf::pow(gf::q1(), 2) + gf::pow(gf::q2(), 2);
        double rv = evaluate_real(r, x);
        CHECK(rv * rv == doctest::Approx(evaluate_real(rho, x)).epsilon(1e-12));
    }
}

TEST_CASE("deterministic serialization") {
    GeneralizedFunction V = gf::q1() * gf::pow(gf::q2(), 2) + gf::pow(gf::q1(), 3);
    CHECK(serialize(V) == "1*q1^3 + 1*q1*q2^2");

    GeneralizedFunction K1 = gf::p1() * (gf::p1() * gf::q2() - gf::p2() * gf::q1()) -
                             gf::q2() * radical_inverse();
    CHECK(serialize(K1) == "-1*q1*p1*p2 + 1*q2*p1^2 + -1*q2*r*rho^-1");

    GeneralizedFunction E2 = GeneralizedFunction::monomial(
        key_exp(FieldScalar(Rational(0), make_rational(-1, 2), Rational(3)), FieldScalar(make_rational(1, 2))),
        FieldScalar(1));
    CHECK(serialize(E2) == "1*exp((0-1/2*sqrt(3))*q1+1/2*q2)");

    CHECK(serialize(GeneralizedFunction{}) == "0");

    Gen gen(4242);
    GeneralizedFunction f = gen.fn(6);
    CHECK(serialize(f) == serialize(GeneralizedFunction{} + f));
}

TEST_CASE("polynomial parser") {
    CHECK(parse_polynomial("2*(q2*p1-q1*p2)") ==
          gf::c(2) * (gf::q2() * gf::p1() - gf::q1() * gf::p2()));
    CHECK(parse_polynomial("p1^2 - p2^2 + 1/3") ==
          gf::pow(gf::p1(), 2) - gf::pow(gf::p2(), 2) + gf::c(FieldScalar(make_rational(1, 3))));
    CHECK(parse_polynomial("-q1") == -gf::q1());
    CHECK_THROWS_AS(parse_polynomial("q3 + 1"), ConfigError);
    CHECK_THROWS_AS(parse_polynomial("1 +"), ConfigError);
}
