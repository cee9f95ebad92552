#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invlab/systems.hpp"

using namespace invlab;

namespace {

void run_all_checks(const SystemDef& s) {
    for (const auto& ck : known_checks(s)) {
        CAPTURE(s.name);
        CAPTURE(ck.label);
        CheckResult r = ck.run();
        CHECK_MESSAGE(r.pass, ck.label, ": ", r.witness);
    }
}

} // namespace

TEST_CASE("henon_heiles construction") {
    SystemDef s = build_henon_heiles(1, 1);
    CHECK(s.H == parse_polynomial("1/2*p1^2 + 1/2*p2^2 + q1*q2^2 + q1^3"));
    CHECK(s.X(0) == gf::p1());
    CHECK(s.X(2) == parse_polynomial("-(q2^2 + 3*q1^2)"));
    CHECK(s.has_supplemental);
    CHECK(s.find_bivector("P_tilde") != nullptr);
    CHECK(s.find_two_form("omega_tilde") != nullptr);
}

TEST_CASE("henon_heiles identity suite at (1,1) and (2,3)") {
    run_all_checks(build_henon_heiles(1, 1));
    run_all_checks(build_henon_heiles(2, 3));
}

TEST_CASE("free motion and weight-homogeneous families") {
    run_all_checks(build_free_motion());
    // alpha = 1, f(w) = 1 + w^4: V = q1^4 + q2^4
    SystemDef wh = build_weight_homogeneous(1, {1, 0, 0, 0, 1});
    CHECK(wh.V == parse_polynomial("q1^4 + q2^4"));
    run_all_checks(wh);
    // alpha = 2, f(w) = w^2: V = q2^2 (zero-integration-constant branch)
    SystemDef wh2 = build_weight_homogeneous(2, {0, 0, 1});
    CHECK(wh2.V == parse_polynomial("q2^2"));
    run_all_checks(wh2);
    // alpha = 4/3 reproduces the Henon-Heiles case
    SystemDef hhw = build_weight_homogeneous(make_rational(4, 3), {2, 0, 5});
    CHECK(hhw.V == parse_polynomial("2*q1^3 + 5*q1*q2^2"));
    run_all_checks(hhw);

    CHECK_THROWS_AS(build_weight_homogeneous(3, {1}), ConfigError);       // 4/3 not integral
    CHECK_THROWS_AS(build_weight_homogeneous(1, {1, 1, 1, 1, 1, 1}), ConfigError);   // f too long
}

TEST_CASE("kepler registry") {
    SystemDef s = build_kepler(1);
    CHECK(s.disc == Rational(-1));
    CHECK(s.uses_radical);
    CHECK(evaluate_real(s.H, {1, 0, 0, 1}) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(evaluate_real(s.find_integral("K1")->f, {1, 0, 0, 1}) == doctest::Approx(0.0));
    CHECK(evaluate_real(s.find_integral("K2")->f, {1, 0, 0, 1}) == doctest::Approx(0.0));
    CHECK(evaluate_real(s.find_integral("K3")->f, {1, 0, 0, 1}) == doctest::Approx(1.0));
    for (const char* label : {"P_tilde", "P'1", "P'2", "P'3", "P'4", "X1^X3", "X2^X3"})
        CHECK(s.find_bivector(label) != nullptr);
}

TEST_CASE("kepler identity suite (d = -1 session)") {
    run_all_checks(build_kepler(1));
    // second parameter value guards against kappa-specific cancellations
    run_all_checks(build_kepler(make_rational(3, 2)));
}

TEST_CASE("toda family and G2 lattices") {
    SystemDef t = build_toda_family(4, 4, 1, 1);
    CHECK(t.exp_lattice.size() == 2);
    CHECK(serialize(t.V) == "1*exp(-1*q1+0*q2) + 1*exp(0*q1+1*q2)");
    run_all_checks(t);
    run_all_checks(build_toda_family(2, 4, 1, make_rational(1, 2)));

    SystemDef open = build_g2_toda(false);
    CHECK(open.disc == Rational(3));
    CHECK(open.has_supplemental);
    CHECK(open.exp_lattice.size() == 2);
    run_all_checks(open);

    SystemDef per = build_g2_toda(true);
    CHECK(!per.has_supplemental);
    CHECK(per.find_bivector("P_tilde") == nullptr);
    CHECK(per.exp_lattice.size() == 3);
    run_all_checks(per);

    CHECK_THROWS_AS(build_toda_family(0, 4, 1, 1), ConfigError);
}

TEST_CASE("cubic counterexample carries no supplemental invariant") {
    SystemDef s = build_cubic_nonhomogeneous(1, 1);
    CHECK(s.V == parse_polynomial("q1^3 + q1*q2"));
    CHECK(!s.has_supplemental);
    CHECK(s.known_bivectors.empty());
    run_all_checks(s);
}

TEST_CASE("registry lookup by CLI names") {
    CHECK(build_system("henon_heiles", {{"a", "2"}, {"b", "3"}}).params.at("a") == "2");
    CHECK(build_system("kepler", {}).params.at("kappa") == "1");
    CHECK(build_system("g2_toda", {{"periodic", "1"}}).has_supplemental == false);
    CHECK(build_system("weight_homogeneous", {{"alpha", "1"}, {"fcoeffs", "1,0,0,0,1"}}).V ==
          parse_polynomial("q1^4 + q2^4"));
    CHECK_THROWS_AS(build_system("lorenz", {}), ConfigError);
    CHECK_THROWS_AS(build_system("henon_heiles", {{"a", "x"}}), ConfigError);
}
