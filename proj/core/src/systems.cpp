#include "invlab/systems.hpp"

#include <sstream>

namespace invlab {

namespace {

using gf::c;
using gf::p1;
using gf::p2;
using gf::pow;
using gf::q1;
using gf::q2;

OneForm differential(const GeneralizedFunction& f) {
    OneForm df(0, 1);
    for (int i = 0; i < kDim; ++i) df(i) = f.derive(i);
    return df;
}

XVector hamiltonian_field(const GeneralizedFunction& H) {
    return bivector_apply(frame::canonical_poisson(), differential(H));
}

void finish(SystemDef& s) {
    s.H = (c(Rational(1, 2)) * (pow(p1(), 2) + pow(p2(), 2))) + s.V;
    s.X = hamiltonian_field(s.H);
    s.grad_v = {s.V.derive(0), s.V.derive(1)};
    s.hess_v = {s.grad_v[0].derive(0), s.grad_v[0].derive(1), s.grad_v[1].derive(1)};
}

// Prop 2 bivector for V = q1^(4/alpha) f(q2/q1) (zero integration constants);
// specializes to the Henon-Heiles P-tilde at alpha = 4/3.
Bivector weight_homogeneous_bivector(const FieldScalar& alpha, const GeneralizedFunction& V) {
    GeneralizedFunction v1 = V.derive(0), v2 = V.derive(1);
    GeneralizedFunction e13 = pow(p1(), 2) - pow(p2(), 2) - alpha * (q2() * v2) + c(2) * V;
    return make_bivector(alpha * (p1() * q2() - p2() * q1()),
                         e13,
                         c(2) * (p1() * p2()) + alpha * (q1() * v2),
                         c(2) * (p1() * p2()) + alpha * (q2() * v1),
                         -e13,
                         c(2) * (p1() * v2) - c(2) * (p2() * v1));
}

// Prop 4 bivector for the exponential family, geodesic seed alpha*p1 + beta*p2.
Bivector toda_bivector(const FieldScalar& alpha, const FieldScalar& beta, const GeneralizedFunction& V) {
    GeneralizedFunction v1 = V.derive(0), v2 = V.derive(1);
    GeneralizedFunction e13 = pow(p1(), 2) - pow(p2(), 2) - alpha * v2 + c(2) * V;
    return make_bivector(alpha * p1() + beta * p2(),
                         e13,
                         c(2) * (p1() * p2()) - beta * v2,
                         c(2) * (p1() * p2()) + alpha * v1,
                         -e13,
                         c(2) * (p1() * v2) - c(2) * (p2() * v1));
}

GeneralizedFunction radical_inverse() {                   // 1/r = r * rho^-1
    return GeneralizedFunction::monomial(key_radical(-1), FieldScalar(1));
}

GeneralizedFunction radical_inv_cubed() {                 // 1/r^3 = r * rho^-2
    return GeneralizedFunction::monomial(key_radical(-2), FieldScalar(1));
}

std::string rat_str(const Rational& r) { return to_string(r); }

} // namespace

const KnownTensor* SystemDef::find_bivector(const std::string& label) const {
    for (const auto& t : known_bivectors)
        if (t.label == label) return &t;
    return nullptr;
}

const KnownTensor* SystemDef::find_two_form(const std::string& label) const {
    for (const auto& t : known_two_forms)
        if (t.label == label) return &t;
    return nullptr;
}

const FirstIntegral* SystemDef::find_integral(const std::string& label) const {
    for (const auto& f : first_integrals)
        if (f.label == label) return &f;
    return nullptr;
}

SystemDef build_henon_heiles(const Rational& a, const Rational& b) {
    SystemDef s;
    s.name = "henon_heiles";
    s.params = {{"a", rat_str(a)}, {"b", rat_str(b)}};
    s.V = c(a) * (q1() * pow(q2(), 2)) + c(b) * pow(q1(), 3);
    finish(s);
    s.has_supplemental = true;

    s.known_bivectors.push_back({"P_tilde", weight_homogeneous_bivector(FieldScalar(Rational(4, 3)), s.V)});

    // omega-tilde as displayed in the paper; satisfies P_tilde o omega_tilde = H^2 Id.
    FieldScalar fa(a), fb(b);
    GeneralizedFunction w12 = FieldScalar(Rational(1, 2)) * ((fa * pow(q2(), 2) + FieldScalar(3) * fb * pow(q1(), 2)) * p2())
                              - fa * (q1() * q2() * p1());
    GeneralizedFunction w13 = FieldScalar(Rational(1, 6)) * fa * (q1() * pow(q2(), 2))
                              - FieldScalar(Rational(1, 2)) * fb * pow(q1(), 3)
                              - FieldScalar(Rational(1, 4)) * (pow(p1(), 2) - pow(p2(), 2));
    GeneralizedFunction w14 = -(FieldScalar(Rational(1, 3)) * fa * pow(q2(), 3)
                                + fb * (pow(q1(), 2) * q2())
                                + FieldScalar(Rational(1, 2)) * (p1() * p2()));
    GeneralizedFunction w23 = -(FieldScalar(Rational(2, 3)) * fa * (pow(q1(), 2) * q2())
                                + FieldScalar(Rational(1, 2)) * (p1() * p2()));
    GeneralizedFunction w34 = FieldScalar(Rational(1, 3)) * (q1() * p2() - q2() * p1());
    s.known_two_forms.push_back({"omega_tilde", make_two_form(w12, w13, w14, w23, -w13, w34)});
    return s;
}

SystemDef build_cubic_nonhomogeneous(const Rational& a, const Rational& b) {
    SystemDef s;
    s.name = "cubic_nonhomogeneous";
    s.params = {{"a", rat_str(a)}, {"b", rat_str(b)}};
    s.V = c(a) * pow(q1(), 3) + c(b) * (q1() * q2());
    finish(s);
    s.has_supplemental = false;
    return s;
}

SystemDef build_free_motion() {
    SystemDef s;
    s.name = "free_motion";
    finish(s);
    s.has_supplemental = true;
    GeneralizedFunction e13 = pow(p1(), 2) - pow(p2(), 2);
    GeneralizedFunction e14 = c(2) * (p1() * p2());
    s.known_bivectors.push_back(
        {"P_h", make_bivector(p1() * q2() - p2() * q1(), e13, e14, e14, -e13, {})});
    s.known_two_forms.push_back(
        {"omega_h", make_two_form({}, e13, e14, e14, -e13, -(p1() * q2() - p2() * q1()))});
    return s;
}

SystemDef build_weight_homogeneous(const Rational& alpha, const std::vector<Rational>& f_coeffs) {
    Rational m = 4 / alpha;
    if (m.get_den() != 1 || sgn(m) <= 0)
        throw ConfigError("weight_homogeneous requires 4/alpha to be a positive integer, got alpha = " + rat_str(alpha));
    long deg = m.get_num().get_si();
    if (static_cast<long>(f_coeffs.size()) > deg + 1)
        throw ConfigError("f degree exceeds 4/alpha; V would leave the polynomial ring");
    SystemDef s;
    s.name = "weight_homogeneous";
    std::string fc;
    for (std::size_t i = 0; i < f_coeffs.size(); ++i) fc += (i ? "," : "") + rat_str(f_coeffs[i]);
    s.params = {{"alpha", rat_str(alpha)}, {"fcoeffs", fc}};
    // V = sum_k f_k q1^(m-k) q2^k
    for (std::size_t k = 0; k < f_coeffs.size(); ++k)
        if (sgn(f_coeffs[k]) != 0)
            s.V += c(f_coeffs[k]) * pow(q1(), static_cast<int>(deg - k)) * pow(q2(), static_cast<int>(k));
    finish(s);
    s.has_supplemental = true;
    s.known_bivectors.push_back({"P_tilde", weight_homogeneous_bivector(FieldScalar(alpha), s.V)});
    return s;
}

SystemDef build_kepler(const Rational& kappa) {
    SystemDef s;
    s.name = "kepler";
    s.params = {{"kappa", rat_str(kappa)}};
    s.disc = -1;
    s.uses_radical = true;
    FieldScalar k(kappa);
    s.V = -(k * radical_inverse());
    finish(s);
    s.has_supplemental = true;

    GeneralizedFunction K3 = q1() * p2() - q2() * p1();
    GeneralizedFunction K1 = p1() * (p1() * q2() - p2() * q1()) - k * (q2() * radical_inverse());
    GeneralizedFunction K2 = p2() * (p1() * q2() - p2() * q1()) + k * (q1() * radical_inverse());
    s.first_integrals = {{"K1", K1}, {"K2", K2}, {"K3", K3}};

    const GeneralizedFunction r3 = radical_inv_cubed();
    const FieldScalar half(Rational(1, 2));
    // Supplemental bivector of Prop 3. The printed P~24 has the sign of
    // p1^2/2 flipped; the corrected entry is the unique invariant completion.
    Bivector Pt = make_bivector(
        q1() * p2() - p1() * q2(),
        -(half * pow(p2(), 2)) + k * (pow(q2(), 2) * r3),
        half * (p1() * p2()) - k * (q1() * q2() * r3),
        half * (p1() * p2()) - k * (q1() * q2() * r3),
        -(half * pow(p1(), 2)) + k * (pow(q1(), 2) * r3),
        half * k * ((p1() * q2() - p2() * q1()) * r3));
    s.known_bivectors.push_back({"P_tilde", Pt});

    const Bivector P = frame::canonical_poisson();
    XVector X1 = bivector_apply(P, differential(K1));
    XVector X2 = bivector_apply(P, differential(K2));
    XVector X3 = bivector_apply(P, differential(K3));
    s.known_bivectors.push_back({"X1^X3", wedge(X1, X3)});
    s.known_bivectors.push_back({"X2^X3", wedge(X2, X3)});

    // Jacobi-solving bivectors at (a,b) = (1,1); checks re-instantiate at (2,3).
    const FieldScalar i_unit = FieldScalar::sqrt_disc(-1);
    XVector X12(1, 0);
    for (int i = 0; i < kDim; ++i) X12(i) = X1(i) + i_unit * X2(i);
    s.known_bivectors.push_back({"P'1", wedge(X12, X3) + P});
    s.known_bivectors.push_back({"P'2", s.H * P - FieldScalar(2) * Pt});
    s.known_bivectors.push_back({"P'3", wedge(X1, X3) + K2 * P + (s.H * P + Pt)});
    s.known_bivectors.push_back({"P'4", wedge(X2, X3) - K1 * P + (s.H * P + Pt)});
    return s;
}

SystemDef build_toda_family(const Rational& alpha, const Rational& beta, const Rational& c1,
                            const Rational& c2) {
    if (sgn(alpha) == 0 || sgn(beta) == 0)
        throw ConfigError("toda_family requires nonzero alpha and beta");
    SystemDef s;
    s.name = "toda_family";
    s.params = {{"alpha", rat_str(alpha)}, {"beta", rat_str(beta)}, {"c1", rat_str(c1)}, {"c2", rat_str(c2)}};
    FieldScalar l1(Rational(-4) / beta), l2(Rational(4) / alpha);
    s.exp_lattice = {{l1, FieldScalar(0)}, {FieldScalar(0), l2}};
    GeneralizedFunction e1 = GeneralizedFunction::monomial(key_exp(l1, FieldScalar(0)), FieldScalar(1));
    GeneralizedFunction e2 = GeneralizedFunction::monomial(key_exp(FieldScalar(0), l2), FieldScalar(1));
    s.V = c(c1) * e1 + c(c2) * e2;
    finish(s);
    s.has_supplemental = true;
    s.known_bivectors.push_back({"P_tilde", toda_bivector(FieldScalar(alpha), FieldScalar(beta), s.V)});
    s.known_bivectors.push_back(
        {"P'", FieldScalar(2) * (s.H * frame::canonical_poisson()) + s.known_bivectors[0].tensor});
    return s;
}

SystemDef build_g2_toda(bool periodic) {
    SystemDef s;
    s.name = "g2_toda";
    s.params = {{"periodic", periodic ? "1" : "0"}};
    s.disc = 3;
    const FieldScalar sqrt3 = FieldScalar::sqrt_disc(3);
    const FieldScalar l1a(Rational(0), Rational(1, 3), 3);    // 1/sqrt(3) = sqrt(3)/3
    const FieldScalar l2a(Rational(0), Rational(-1, 2), 3);   // -sqrt(3)/2
    const FieldScalar l2b(Rational(1, 2));
    s.exp_lattice = {{l1a, FieldScalar(0)}, {l2a, l2b}};
    if (periodic) s.exp_lattice.push_back({FieldScalar(0), FieldScalar(-1)});

    GeneralizedFunction E1 = GeneralizedFunction::monomial(key_exp(l1a, FieldScalar(0)), FieldScalar(1));
    GeneralizedFunction E2 = GeneralizedFunction::monomial(key_exp(l2a, l2b), FieldScalar(1));
    s.V = E1 + E2;
    if (periodic)
        s.V += GeneralizedFunction::monomial(key_exp(FieldScalar(0), FieldScalar(-1)), FieldScalar(1));
    finish(s);
    s.has_supplemental = !periodic;

    if (!periodic) {
        const FieldScalar half(Rational(1, 2));
        Bivector Pt = make_bivector(
            sqrt3 * p2() - FieldScalar(5) * p1(),
            half * pow(p2(), 2) + FieldScalar(Rational(5, 2)) * E2,
            -(half * (p1() * p2())) - FieldScalar(Rational(0), Rational(1, 2), 3) * E2,
            -(half * (p1() * p2())) - FieldScalar(Rational(0), Rational(5, 3), 3) * E1
                + FieldScalar(Rational(0), Rational(5, 2), 3) * E2,
            half * pow(p1(), 2) - FieldScalar(Rational(3, 2)) * E2 + E1,
            -(FieldScalar(Rational(1, 4)) * (E2 * p1()))
                + FieldScalar(Rational(0), Rational(1, 6), 3) * (E1 * p2())
                - FieldScalar(Rational(0), Rational(1, 4), 3) * (E2 * p2()));
        s.known_bivectors.push_back({"P_tilde", Pt});
    }
    return s;
}

namespace {

Rational param_or(const std::map<std::string, std::string>& params, const std::string& key,
                  const Rational& dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : parse_rational(it->second);
}

} // namespace

SystemDef build_system(const std::string& name, const std::map<std::string, std::string>& params) {
    if (name == "henon_heiles")
        return build_henon_heiles(param_or(params, "a", 1), param_or(params, "b", 1));
    if (name == "cubic_nonhomogeneous")
        return build_cubic_nonhomogeneous(param_or(params, "a", 1), param_or(params, "b", 1));
    if (name == "free_motion") return build_free_motion();
    if (name == "weight_homogeneous") {
        Rational alpha = param_or(params, "alpha", 1);
        std::vector<Rational> fc;
        auto it = params.find("fcoeffs");
        if (it != params.end()) {
            std::stringstream ss(it->second);
            std::string tok;
            while (std::getline(ss, tok, ',')) fc.push_back(parse_rational(tok));
        } else {
            fc = {1};
        }
        return build_weight_homogeneous(alpha, fc);
    }
    if (name == "kepler") return build_kepler(param_or(params, "kappa", 1));
    if (name == "toda_family")
        return build_toda_family(param_or(params, "alpha", 4), param_or(params, "beta", 4),
                                 param_or(params, "c1", 1), param_or(params, "c2", 1));
    if (name == "g2_toda") {
        auto it = params.find("periodic");
        bool periodic = it != params.end() && it->second != "0" && it->second != "false";
        return build_g2_toda(periodic);
    }
    throw ConfigError("unknown system '" + name + "'");
}

namespace {

CheckResult zero_check(const Tensor<FieldScalar>& T) {
    const int n = T.order();
    std::vector<int> idx(n, 0);
    while (true) {
        std::size_t flat = 0;
        for (int v : idx) flat = (flat << 2) | std::size_t(v);
        if (!T.at(flat).is_zero()) {
            std::ostringstream os;
            os << "component [";
            for (int a = 0; a < n; ++a) os << (a ? "," : "") << idx[a] + 1;
            os << "] = " << serialize(T.at(flat));
            return {false, os.str()};
        }
        int c = n - 1;
        while (c >= 0 && idx[c] == 3) idx[c--] = 0;
        if (c >= 0) ++idx[c]; else break;
    }
    return {true, ""};
}

CheckResult zero_check(const GeneralizedFunction& f) {
    if (f.is_zero()) return {true, ""};
    return {false, serialize(f)};
}

CheckResult nonzero_check(const Tensor<FieldScalar>& T) {
    CheckResult z = zero_check(T);
    if (z.pass) return {false, "identically zero"};
    return {true, z.witness};
}

OneForm diff_of(const GeneralizedFunction& f) {
    OneForm df(0, 1);
    for (int i = 0; i < kDim; ++i) df(i) = f.derive(i);
    return df;
}

void add_kepler_checks(std::vector<NamedCheck>& out, const SystemDef& s);

} // namespace

std::vector<NamedCheck> known_checks(const SystemDef& s) {
    std::vector<NamedCheck> out;
    const Bivector P = frame::canonical_poisson();
    const TwoForm w = frame::canonical_symplectic();

    out.push_back({"L_X H = 0", [s] { return zero_check(lie_scalar(s.X, s.H)); }});
    out.push_back({"L_X P = 0", [s, P] { return zero_check(lie_derivative(s.X, P)); }});
    out.push_back({"L_X omega = 0", [s, w] { return zero_check(lie_derivative(s.X, w)); }});

    for (const auto& kt : s.known_bivectors) {
        out.push_back({"L_X " + kt.label + " = 0",
                       [s, kt] { return zero_check(lie_derivative(s.X, kt.tensor)); }});
    }
    for (const auto& kt : s.known_two_forms) {
        out.push_back({"L_X " + kt.label + " = 0",
                       [s, kt] { return zero_check(lie_derivative(s.X, kt.tensor)); }});
    }
    for (const auto& fi : s.first_integrals) {
        out.push_back({"L_X " + fi.label + " = 0",
                       [s, fi] { return zero_check(lie_scalar(s.X, fi.f)); }});
    }

    if (s.name == "henon_heiles" || s.name == "weight_homogeneous" || s.name == "toda_family") {
        const Bivector Pt = s.find_bivector("P_tilde")->tensor;
        out.push_back({"P_tilde dH = 2 H X (bi-hamiltonian form)", [s, Pt] {
                           XVector lhs = bivector_apply(Pt, diff_of(s.H));
                           XVector rhs = s.X;
                           XVector d(1, 0);
                           for (int i = 0; i < kDim; ++i)
                               d(i) = lhs(i) - FieldScalar(2) * (s.H * rhs(i));
                           return zero_check(d);
                       }});
        out.push_back({"(P_tilde - 2HP) dH = 0", [s, Pt, P] {
                           Bivector M = Pt - FieldScalar(2) * (s.H * P);
                           XVector d = bivector_apply(M, diff_of(s.H));
                           return zero_check(d);
                       }});
        out.push_back({"[[P, P_tilde]] != 0 (incompatible)",
                       [Pt, P] { return nonzero_check(schouten_bracket(P, Pt)); }});
    }

    if (s.name == "henon_heiles") {
        const Bivector Pt = s.find_bivector("P_tilde")->tensor;
        const TwoForm wt = s.find_two_form("omega_tilde")->tensor;
        out.push_back({"P_tilde o omega_tilde = H^2 Id", [s, Pt, wt] {
                           ComposeResult cr = compose_trace(Pt, wt);
                           GeneralizedFunction h2 = s.H * s.H;
                           Tensor<FieldScalar> d = cr.n;
                           for (int i = 0; i < kDim; ++i) d(i, i) -= h2;
                           return zero_check(d);
                       }});
        out.push_back({"omega_tilde^2 = -(H^2/4) omega^2 (volume, orientation-reversed)", [s, wt, w] {
                           auto lhs = form_wedge(wt, wt);
                           auto rhs = form_wedge(w, w);
                           GeneralizedFunction f = FieldScalar(Rational(1, 4)) * (s.H * s.H);
                           return zero_check(lhs + f * rhs);
                       }});
        out.push_back({"i_X omega_tilde = (H/2) dH", [s, wt] {
                           auto ix = interior_product(s.X, wt);
                           OneForm d(0, 1);
                           for (int j = 0; j < kDim; ++j)
                               d(j) = ix(j) - FieldScalar(Rational(1, 2)) * (s.H * s.H.derive(j));
                           return zero_check(d);
                       }});
        out.push_back({"i_X omega = dH", [s, w] {
                           auto ix = interior_product(s.X, w);
                           OneForm d(0, 1);
                           for (int j = 0; j < kDim; ++j) d(j) = ix(j) - s.H.derive(j);
                           return zero_check(d);
                       }});
    }

    if (s.name == "toda_family") {
        const Bivector Pp = s.find_bivector("P'")->tensor;
        out.push_back({"[[P', P']] = 0 (Jacobi)", [Pp] { return zero_check(schouten_bracket(Pp, Pp)); }});
        out.push_back({"(P' - 4HP) dH = 0", [s, Pp, P] {
                           Bivector M = Pp - FieldScalar(4) * (s.H * P);
                           return zero_check(bivector_apply(M, diff_of(s.H)));
                       }});
        out.push_back({"[[P, P']] != 0 (incompatible)",
                       [Pp, P] { return nonzero_check(schouten_bracket(P, Pp)); }});
    }

    if (s.name == "kepler") add_kepler_checks(out, s);
    return out;
}

namespace {

void add_kepler_checks(std::vector<NamedCheck>& out, const SystemDef& s) {
    const Bivector P = frame::canonical_poisson();
    const TwoForm w = frame::canonical_symplectic();
    const Bivector Pt = s.find_bivector("P_tilde")->tensor;
    const GeneralizedFunction K1 = s.find_integral("K1")->f;
    const GeneralizedFunction K2 = s.find_integral("K2")->f;
    const GeneralizedFunction K3 = s.find_integral("K3")->f;
    const FieldScalar kap(parse_rational(s.params.at("kappa")));
    const FieldScalar i_unit = FieldScalar::sqrt_disc(-1);

    out.push_back({"K1^2 + K2^2 = 2 H K3^2 + kappa^2", [=] {
                       GeneralizedFunction lhs = K1 * K1 + K2 * K2;
                       GeneralizedFunction rhs =
                           FieldScalar(2) * (s.H * (K3 * K3)) + gf::c(kap * kap);
                       return zero_check(lhs - rhs);
                   }});
    out.push_back({"P_tilde dH = 0 (rank-2 kernel contains dH)",
                   [=] { return zero_check(bivector_apply(Pt, diff_of(s.H))); }});
    out.push_back({"rank P_tilde = 2", [=] {
                       auto pr = pfaffian_rank(Pt);
                       return CheckResult{pr.generic_rank == 2, "Pf = " + serialize(pr.pfaffian)};
                   }});

    XVector X1 = bivector_apply(P, diff_of(K1));
    XVector X2 = bivector_apply(P, diff_of(K2));
    XVector X3 = bivector_apply(P, diff_of(K3));

    // The four Jacobi bivectors and their identities at two parameter points.
    struct AB { Rational a, b; };
    for (AB ab : {AB{1, 1}, AB{2, 3}}) {
        const FieldScalar a(ab.a), b(ab.b);
        const std::string at = " (a=" + to_string(ab.a) + ", b=" + to_string(ab.b) + ")";

        XVector U(1, 0);
        for (int i = 0; i < kDim; ++i) U(i) = a * (X1(i) + i_unit * X2(i));
        Bivector P1p = wedge(U, X3) + b * P;
        Bivector P2p = a * (s.H * P - FieldScalar(2) * Pt);
        Bivector P3p = a * (wedge(X1, X3) + K2 * P) + b * (s.H * P + Pt);
        Bivector P4p = a * (wedge(X2, X3) - K1 * P) + b * (s.H * P + Pt);

        const Bivector list[4] = {P1p, P2p, P3p, P4p};
        const int ranks[4] = {4, 4, 2, 2};
        for (int i = 0; i < 4; ++i) {
            std::string nm = "P'" + std::to_string(i + 1);
            Bivector B = list[i];
            out.push_back({"L_X " + nm + " = 0" + at,
                           [s, B] { return zero_check(lie_derivative(s.X, B)); }});
            out.push_back({"[[" + nm + ", " + nm + "]] = 0" + at,
                           [B] { return zero_check(schouten_bracket(B, B)); }});
            int want = ranks[i];
            out.push_back({"rank " + nm + " = " + std::to_string(want) + at, [B, want] {
                               auto pr = pfaffian_rank(B);
                               return CheckResult{pr.generic_rank == want,
                                                  "generic rank " + std::to_string(pr.generic_rank)};
                           }});
            if (i == 0) {
                out.push_back({"[[P, " + nm + "]] = 0 (compatible)" + at,
                               [B, P] { return zero_check(schouten_bracket(P, B)); }});
            } else {
                out.push_back({"[[P, " + nm + "]] != 0" + at,
                               [B, P] { return nonzero_check(schouten_bracket(P, B)); }});
            }
        }

        // Dependence relations (corrected forms; see P'1 also against dK3).
        OneForm dH = diff_of(s.H), dK3 = diff_of(K3);
        XVector PdH = bivector_apply(P, dH), PdK3 = bivector_apply(P, dK3);
        out.push_back({"P'1 dH = b PdH" + at, [=] {
                           XVector lhs = bivector_apply(P1p, dH);
                           XVector d(1, 0);
                           for (int i = 0; i < kDim; ++i) d(i) = lhs(i) - b * PdH(i);
                           return zero_check(d);
                       }});
        out.push_back({"P'1 dK3 = (b - a(K2 - i K1)) PdK3" + at, [=] {
                           XVector lhs = bivector_apply(P1p, dK3);
                           GeneralizedFunction f = gf::c(b) - a * (K2 - i_unit * K1);
                           XVector d(1, 0);
                           for (int i = 0; i < kDim; ++i) d(i) = lhs(i) - f * PdK3(i);
                           return zero_check(d);
                       }});
        out.push_back({"P'2 dH = a H PdH" + at, [=] {
                           XVector lhs = bivector_apply(P2p, dH);
                           XVector d(1, 0);
                           for (int i = 0; i < kDim; ++i) d(i) = lhs(i) - a * (s.H * PdH(i));
                           return zero_check(d);
                       }});
        out.push_back({"P'3 dH = (a K2 + b H) PdH" + at, [=] {
                           XVector lhs = bivector_apply(P3p, dH);
                           GeneralizedFunction f = a * K2 + b * s.H;
                           XVector d(1, 0);
                           for (int i = 0; i < kDim; ++i) d(i) = lhs(i) - f * PdH(i);
                           return zero_check(d);
                       }});
        out.push_back({"P'4 dH = (b H - a K1) PdH" + at, [=] {
                           XVector lhs = bivector_apply(P4p, dH);
                           GeneralizedFunction f = b * s.H - a * K1;
                           XVector d(1, 0);
                           for (int i = 0; i < kDim; ++i) d(i) = lhs(i) - f * PdH(i);
                           return zero_check(d);
                       }});
    }

    // Recursion trace: tr(B o omega) for each direction of the generic solution,
    // i.e. tr N = (4a3-2a9)H + (2a2+4a5)K1 + (4a6-2a1)K2 + 4a4 K3^2 + 4a7 K3 + 4a8.
    struct TraceCase {
        std::string label;
        Bivector B;
        GeneralizedFunction expect;
    };
    std::vector<TraceCase> cases;
    cases.push_back({"tr((X1^X3) o omega) = -2 K2", wedge(X1, X3), FieldScalar(-2) * K2});
    cases.push_back({"tr((X2^X3) o omega) = 2 K1", wedge(X2, X3), FieldScalar(2) * K1});
    cases.push_back({"tr(HP o omega) = 4 H", s.H * P, FieldScalar(4) * s.H});
    cases.push_back({"tr(K3^2 P o omega) = 4 K3^2", (K3 * K3) * P, FieldScalar(4) * (K3 * K3)});
    cases.push_back({"tr(K1 P o omega) = 4 K1", K1 * P, FieldScalar(4) * K1});
    cases.push_back({"tr(K2 P o omega) = 4 K2", K2 * P, FieldScalar(4) * K2});
    cases.push_back({"tr(K3 P o omega) = 4 K3", K3 * P, FieldScalar(4) * K3});
    cases.push_back({"tr(P o omega) = 4", P, gf::c(4)});
    cases.push_back({"tr(P_tilde o omega) = -2 H", Pt, FieldScalar(-2) * s.H});
    for (auto& tc : cases) {
        Bivector B = tc.B;
        GeneralizedFunction expect = tc.expect;
        out.push_back({tc.label, [B, expect, w] {
                           ComposeResult cr = compose_trace(B, w);
                           return zero_check(cr.trace - expect);
                       }});
    }
}

} // namespace

} // namespace invlab
