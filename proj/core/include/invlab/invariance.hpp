#pragma once

#include "invlab/linsys.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace invlab {

struct SolveStats {
    int rows = 0;
    int cols = 0;
    int rank = 0;
    int nullity = 0;
    int n_functions = 0;              // unknown coefficient functions in the menu
    int n_functional_equations = 0;   // distinct (component, p-monomial) equations
    std::string digest;
    std::string menu;
};

// Discovery result: basis of the solution space of L_X P' = 0 over the menu.
// Every basis element is re-verified against an independent Lie-derivative
// evaluation after elimination.
struct SolveResult {
    SolveStats stats;
    std::vector<Bivector> basis;
    std::optional<Bivector> particular;   // pinned-component inhomogeneous part
    ParamBivector pb;
    NullspaceBasis raw;
    std::array<GeneralizedFunction, kSkewComponents> pins;

    // Exact membership of a concrete bivector in the affine solution set
    // particular + span(basis); coordinates over the basis when member.
    std::optional<std::vector<FieldScalar>> span_coords(const Bivector& target) const;
    bool contains(const Bivector& target) const { return span_coords(target).has_value(); }
};

SolveResult solve_invariance(const SystemDef& s, const AnsatzSpec& spec);

// Zero-witness check, independent of the elimination path.
struct InvarianceReport {
    bool pass = false;
    std::string witness;   // first nonzero component when failing
};
InvarianceReport verify_invariant(const XVector& X, const Tensor<FieldScalar>& T);

// Polarized Jacobi table over a basis: Q[j][k] = [[B_j, B_k]], j <= k, and the
// induced quadratic scalar equations in the parameters.
class JacobiSystem {
public:
    explicit JacobiSystem(std::vector<Bivector> basis);

    struct QuadraticEquation {
        MonomialKey key;
        int comp_i, comp_j, comp_k;                      // trivector component
        std::vector<std::pair<std::pair<int, int>, FieldScalar>> coeffs;  // (j<=k) -> c
    };

    const std::vector<QuadraticEquation>& equations() const { return eqs_; }
    const Trivector& bracket(int j, int k) const;
    std::size_t dimension() const { return basis_.size(); }

    // Exact evaluation of [[sum u_j B_j, sum u_k B_k]] = 0 at a parameter point.
    struct PointReport {
        bool pass = false;
        std::string witness;
    };
    PointReport verify_point(const std::vector<FieldScalar>& u) const;

    // Enumerate Jacobi points over a finite candidate grid (exact checks).
    std::vector<std::vector<FieldScalar>> scan_grid(
        const std::vector<std::vector<FieldScalar>>& grid) const;

private:
    std::vector<Bivector> basis_;
    std::vector<Trivector> table_;   // packed j<=k
    std::vector<QuadraticEquation> eqs_;
    std::size_t pack(int j, int k) const;
};

// Numeric Jacobi residual for the scaled bivector H^expA * A (and optionally
// the compatibility bracket with H^expB * B) sampled at random points with
// H > 0; exact symbolic derivatives, floating assembly.
struct ScaledJacobiReport {
    int points = 0;
    int resampled = 0;
    double max_residual = 0.0;
    bool pass = false;
};
ScaledJacobiReport verify_jacobi_scaled_numeric(const SystemDef& s, const Bivector& A,
                                                const Rational& exponent, int npoints, double tol,
                                                std::uint64_t seed);
ScaledJacobiReport verify_compatibility_scaled_numeric(const SystemDef& s, const Bivector& A,
                                                       const Rational& expA, const Bivector& B,
                                                       const Rational& expB, int npoints, double tol,
                                                       std::uint64_t seed);

} // namespace invlab
