#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invlab/systems.hpp"

#include <random>

using namespace invlab;

namespace {

OneForm diff_of(const GeneralizedFunction& f) {
    OneForm df(0, 1);
    for (int i = 0; i < 4; ++i) df(i) = f.derive(i);
    return df;
}

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    FieldScalar scalar() {
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
        return FieldScalar(make_rational(num(rng), den(rng)));
    }
    GeneralizedFunction poly(int deg = 2, int nterms = 3) {
        std::uniform_int_distribution<int> e(0, deg);
        GeneralizedFunction f;
        for (int t = 0; t < nterms; ++t) {
            MonomialKey k;
            for (int i = 0; i < 4; ++i) k.exps[i] = e(rng);
            f += GeneralizedFunction::monomial(k, scalar());
        }
        return f;
    }
    XVector vec() {
        XVector v(1, 0);
        for (int i = 0; i < 4; ++i) v(i) = poly(1, 2);
        return v;
    }
    Bivector biv() {
        Bivector b(2, 0, true);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                GeneralizedFunction f = poly(2, 2);
                b(i, j) = f;
                b(j, i) = -f;
            }
        return b;
    }
    TwoForm form2() {
        TwoForm w(0, 2, true);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                GeneralizedFunction f = poly(2, 2);
                w(i, j) = f;
                w(j, i) = -f;
            }
        return w;
    }
};

} // namespace

TEST_CASE("canonical frame") {
    const Bivector P = frame::canonical_poisson();
    const TwoForm w = frame::canonical_symplectic();
    ComposeResult n = compose_trace(P, w);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(n.n(i, j) == (i == j ? gf::c(1) : GeneralizedFunction{}));
    CHECK(n.trace == gf::c(4));

    auto pr = pfaffian_rank(P);
    CHECK(pr.pfaffian == gf::c(-1));
    CHECK(pr.generic_rank == 4);
    CHECK(P.verify_skew());
}

TEST_CASE("lie derivative basics") {
    SystemDef s = build_henon_heiles(1, 1);
    CHECK(lie_derivative(s.X, frame::canonical_poisson()).is_zero());
    CHECK(lie_scalar(s.X, s.H).is_zero());

    // scalar case through the (p,q) = (0,0) tensor path too
    Tensor<FieldScalar> scalar(0, 0);
    scalar.at(0) = s.H;
    CHECK(lie_derivative(s.X, scalar).is_zero());

    // non-invariant detected
    Bivector bad = s.H * frame::canonical_poisson();
    bad(0, 1) += gf::q1();
    bad(1, 0) -= gf::q1();
    CHECK(!lie_derivative(s.X, bad).is_zero());
}

TEST_CASE("leibniz and naturality properties") {
    Gen gen(31415);
    for (int iter = 0; iter < 8; ++iter) {
        XVector X = gen.vec();
        GeneralizedFunction f = gen.poly();
        Bivector T = gen.biv();

        // L_X (f T) = (L_X f) T + f L_X T
        Tensor<FieldScalar> lhs = lie_derivative(X, f * T);
        Tensor<FieldScalar> rhs = lie_scalar(X, f) * T + f * lie_derivative(X, T);
        CHECK(lhs == rhs);

        // L_X (d w) = d (L_X w) on 1-forms
        OneForm w(0, 1);
        for (int i = 0; i < 4; ++i) w(i) = gen.poly();
        CHECK(lie_derivative(X, exterior_derivative(w)) == exterior_derivative(lie_derivative(X, w)));
    }
}

TEST_CASE("schouten bracket convention and symmetry") {
    const Bivector P = frame::canonical_poisson();
    CHECK(schouten_bracket(P, P).is_zero());

    Gen gen(99);
    for (int iter = 0; iter < 6; ++iter) {
        Bivector A = gen.biv(), B = gen.biv();
        Trivector ab = schouten_bracket(A, B);
        CHECK(ab == schouten_bracket(B, A));
        CHECK(ab.verify_skew());
        // bilinearity over field scalars
        FieldScalar c(make_rational(3, 2));
        CHECK(schouten_bracket(c * A, B) == c * ab);
    }

    Tensor<FieldScalar> notskew(2, 0, false);
    notskew(0, 1) = gf::q1();
    CHECK_THROWS_AS(schouten_bracket(notskew, P), ConfigError);
}

TEST_CASE("wedge products") {
    Gen gen(5);
    XVector U = gen.vec();
    CHECK(wedge(U, U).is_zero());

    const TwoForm w = frame::canonical_symplectic();
    auto vol = form_wedge(w, w);
    // (w ^ w)_1234 = 2 Pf(w) = -2 with the frame conventions
    CHECK(vol(0, 1, 2, 3) == gf::c(-2));
    CHECK(vol.verify_skew());
}

TEST_CASE("interior product and exterior derivative") {
    SystemDef s = build_henon_heiles(1, 1);
    const TwoForm w = frame::canonical_symplectic();

    OneForm ix = interior_product(s.X, w);
    OneForm dH = diff_of(s.H);
    CHECK(ix == dH);
    CHECK(dH(0) == s.V.derive(0));
    CHECK(dH(2) == gf::p1());

    CHECK(exterior_derivative(w).is_zero());

    Gen gen(17);
    for (int iter = 0; iter < 6; ++iter) {
        GeneralizedFunction f = gen.poly();
        Tensor<FieldScalar> f0(0, 0);
        f0.at(0) = f;
        CHECK(exterior_derivative(exterior_derivative(f0)).is_zero());

        // double contraction of a 4-form vanishes by alternation
        TwoForm A = gen.form2(), B = gen.form2();
        auto four = form_wedge(A, B);
        XVector X = gen.vec();
        auto once = interior_product(X, four);
        GeneralizedFunction total;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                GeneralizedFunction acc;
                for (int i = 0; i < 4; ++i) acc += once(a, b, i) * X(i);
                total += acc * acc;
            }
        CHECK(total.is_zero());
    }
}

TEST_CASE("pfaffian cofactor identity") {
    Gen gen(271828);
    for (int iter = 0; iter < 8; ++iter) {
        Bivector A = gen.biv();
        auto pr = pfaffian_rank(A);
        if (pr.generic_rank != 4) continue;
        // cofactor 2-form: A o cof(A) = Pf(A) Id
        TwoForm cof = make_two_form(-A(2, 3), A(1, 3), -A(1, 2), -A(0, 3), A(0, 2), -A(0, 1));
        ComposeResult n = compose_trace(A, cof);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(n.n(i, j) == (i == j ? pr.pfaffian : GeneralizedFunction{}));
    }
}

TEST_CASE("bivector apply") {
    SystemDef s = build_henon_heiles(2, 3);
    XVector X = bivector_apply(frame::canonical_poisson(), diff_of(s.H));
    CHECK(X == s.X);
    CHECK(X(0) == gf::p1());
    CHECK(X(2) == -s.V.derive(0));
}

TEST_CASE("tensor pretty printer is deterministic") {
    const Bivector P = frame::canonical_poisson();
    std::string txt = print_tensor(P, "P");
    CHECK(txt == "P[1,3] = 1\nP[2,4] = 1\n");
    CHECK(print_tensor(P, "P") == txt);
}
