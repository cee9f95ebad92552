#pragma once

#include "invlab/tensor.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace invlab {

struct KnownTensor {
    std::string label;
    Tensor<FieldScalar> tensor;
};

struct FirstIntegral {
    std::string label;
    GeneralizedFunction f;
};

// A benchmark system: Hamiltonian, exact vector field X = P dH, ring-extension
// requirements and the known invariant tensors packaged for verification.
struct SystemDef {
    std::string name;
    std::map<std::string, std::string> params;
    Rational disc{0};                       // session discriminant (0: plain rationals)
    bool uses_radical = false;
    std::vector<std::pair<FieldScalar, FieldScalar>> exp_lattice;   // potential exponent vectors

    GeneralizedFunction V;
    GeneralizedFunction H;
    XVector X;
    std::array<GeneralizedFunction, 2> grad_v;
    std::array<GeneralizedFunction, 3> hess_v;   // V11, V12, V22

    std::vector<KnownTensor> known_bivectors;
    std::vector<KnownTensor> known_two_forms;
    std::vector<FirstIntegral> first_integrals;

    // cubic_nonhomogeneous and periodic G2 carry no supplemental invariant on
    // purpose; the solver acceptance enforces their absence.
    bool has_supplemental = false;

    const KnownTensor* find_bivector(const std::string& label) const;
    const KnownTensor* find_two_form(const std::string& label) const;
    const FirstIntegral* find_integral(const std::string& label) const;
};

SystemDef build_henon_heiles(const Rational& a, const Rational& b);
SystemDef build_cubic_nonhomogeneous(const Rational& a, const Rational& b);
SystemDef build_free_motion();
// V = q1^(4/alpha) f(q2/q1) with 4/alpha a positive integer and f polynomial
// (coefficients f0..fm, m = 4/alpha), so V stays in the ring.
SystemDef build_weight_homogeneous(const Rational& alpha, const std::vector<Rational>& f_coeffs);
SystemDef build_kepler(const Rational& kappa);
SystemDef build_toda_family(const Rational& alpha, const Rational& beta, const Rational& c1,
                            const Rational& c2);
SystemDef build_g2_toda(bool periodic);

// CLI/JSON entry point; throws ConfigError for unknown names or bad parameters.
SystemDef build_system(const std::string& name, const std::map<std::string, std::string>& params);

struct CheckResult {
    bool pass = false;
    std::string witness;   // first nonzero component (failure), or evidence for !=0 checks
};

struct NamedCheck {
    std::string label;
    std::function<CheckResult()> run;
};

// The system's executable identity suite (exact symbolic checks only).
std::vector<NamedCheck> known_checks(const SystemDef& s);

} // namespace invlab
