#pragma once

#include "invlab/scalar.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace invlab {

// Affine form c0 + sum_t c_t * u_t over formal parameters u_t. Coefficients of
// a ParametricBivector live here. Products are defined only when one factor is
// constant; the parametric layer never needs quadratic coefficient arithmetic
// (Jacobi analysis polarizes over concrete basis bivectors instead).
class AffineForm {
public:
    AffineForm() = default;
    AffineForm(const FieldScalar& c) : const_(c) {}     // NOLINT(google-explicit-constructor)
    AffineForm(long n) : const_(FieldScalar(n)) {}      // NOLINT(google-explicit-constructor)

    static AffineForm parameter(int index, const FieldScalar& coeff = FieldScalar(1)) {
        AffineForm f;
        if (!coeff.is_zero()) f.lin_[index] = coeff;
        return f;
    }

    const FieldScalar& constant() const { return const_; }
    const std::map<int, FieldScalar>& linear() const { return lin_; }
    bool is_constant() const { return lin_.empty(); }
    bool is_zero() const { return const_.is_zero() && lin_.empty(); }

    AffineForm operator-() const;
    AffineForm& operator+=(const AffineForm& o);
    AffineForm& operator-=(const AffineForm& o);
    AffineForm& operator*=(const AffineForm& o);

    friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
    friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
    friend AffineForm operator*(AffineForm a, const AffineForm& b) { return a *= b; }
    bool operator==(const AffineForm& o) const = default;

    FieldScalar eval(const std::vector<FieldScalar>& u) const;

    std::string str() const;

private:
    FieldScalar const_{};
    std::map<int, FieldScalar> lin_;
};

inline bool is_zero(const AffineForm& f) { return f.is_zero(); }

} // namespace invlab
