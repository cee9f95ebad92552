#pragma once

#include "invlab/scalar.hpp"

#include <array>
#include <compare>
#include <string>

namespace invlab {

// Phase-space coordinates are x = (q1, q2, p1, p2), axes 0..3.
inline constexpr int kDim = 4;
extern const char* const kAxisNames[kDim];

// One basis monomial of the function ring:
//   q1^e0 q2^e1 p1^e2 p2^e3 * r^rad * rho^rho_pow * exp(lam1*q1 + lam2*q2)
// with r = sqrt(q1^2+q2^2) and rho = q1^2+q2^2. Canonical form keeps
// rad in {0,1} (r^2 folds into rho) and rho_pow <= 0 (positive powers are
// expanded into polynomials by normalization).
struct MonomialKey {
    std::array<int, kDim> exps{0, 0, 0, 0};
    int rad = 0;
    int rho_pow = 0;
    FieldScalar lam1{};
    FieldScalar lam2{};

    bool has_exp() const { return !lam1.is_zero() || !lam2.is_zero(); }
    bool is_one() const {
        return exps == std::array<int, kDim>{0, 0, 0, 0} && rad == 0 && rho_pow == 0 && !has_exp();
    }
    int momentum_degree() const { return exps[2] + exps[3]; }
    int coordinate_degree() const { return exps[0] + exps[1]; }

    bool operator==(const MonomialKey& o) const = default;
    std::strong_ordering operator<=>(const MonomialKey& o) const;

    std::string str() const;   // deterministic text form; "1" for the unit key
};

// Product of two monomials: exponents add, exponential keys add, radical
// parities combine with carry into rho_pow.
MonomialKey key_product(const MonomialKey& a, const MonomialKey& b);

// Convenience builders.
MonomialKey key_var(int axis, int power = 1);
MonomialKey key_radical(int rho_pow);                       // r * rho^rho_pow
MonomialKey key_exp(const FieldScalar& l1, const FieldScalar& l2);

} // namespace invlab
