#pragma once

#include "invlab/systems.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace invlab {

// Independent skew components in the fixed order (12),(13),(14),(23),(24),(34).
inline constexpr int kSkewComponents = 6;
inline constexpr std::pair<int, int> kSkewIndex[kSkewComponents] = {
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// Finite key menu per skew component; one formal parameter per listed key.
// Pinned components contribute a fixed function and no unknowns.
struct AnsatzSpec {
    std::array<std::vector<MonomialKey>, kSkewComponents> keys;
    std::array<GeneralizedFunction, kSkewComponents> pinned;
    int momentum_degree = 2;
    int q_degree = 0;
    std::string descriptor;     // human-readable menu summary

    int unknown_count() const;
    // Number of unknown coefficient functions: distinct (component, p-structure)
    // slots carrying at least one key (36 for the generic quadratic ansatz).
    int function_count() const;
    std::string digest() const;   // FNV-1a over the canonical serialization
};

// Generic menu of Eq.-subs shape: momentum degree <= 2, q-polynomials of
// degree <= q_degree, optionally times the radical menu {r rho^-1, r rho^-2}
// and/or exponential keys. exp_height limits non-negative integer combinations
// of the system's lattice generators.
struct MenuOptions {
    int momentum_degree = 2;
    int q_degree = 3;
    bool radical = false;
    int exp_height = 0;
    std::vector<std::pair<FieldScalar, FieldScalar>> exp_lattice;
};
AnsatzSpec make_menu(const MenuOptions& opt);

// Documented per-system defaults: HH/cubic/free/weight-homogeneous use
// q-degree <= 3 polynomials; Kepler uses q-degree <= 2 with the radical menu;
// Toda-type systems use q-degree 0 with exponential height <= 2.
AnsatzSpec default_menu(const SystemDef& s, int q_degree_override = -1);

// Pin component (1,2) to a fixed function (CLI --pin12), dropping its unknowns.
void pin_component12(AnsatzSpec& spec, const GeneralizedFunction& f);

struct ParamBivector {
    Tensor<AffineForm> tensor;                        // skew (2,0), affine coefficients
    int nparams = 0;
    std::array<std::vector<MonomialKey>, kSkewComponents> keys;   // param order
    // Parameter index of a key within a component, when present.
    std::optional<int> param_index(int comp, const MonomialKey& k) const;
};

ParamBivector build_ansatz(const AnsatzSpec& spec);

// Exact coordinates of a concrete bivector in the spec's key basis; nullopt if
// any component uses a key outside the menu (after canonical normalization).
std::optional<std::vector<FieldScalar>> coordinates_in_menu(const ParamBivector& pb, const Bivector& B);

} // namespace invlab
