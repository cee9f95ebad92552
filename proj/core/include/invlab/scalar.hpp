#pragma once

#include "invlab/errors.hpp"
#include "invlab/rational.hpp"

#include <compare>
#include <complex>
#include <string>

namespace invlab {

// Element of the coefficient field Q(sqrt(d)): rat + surd*sqrt(d).
// The discriminant is fixed per computation session; a scalar with surd == 0
// carries disc == 0 and mixes with any session. d = -1 gives Gaussian
// rationals (Kepler P'_1), d = 3 gives Q(sqrt 3) (G2 Toda), and perfect-square
// discriminants collapse to plain rationals on construction.
class FieldScalar {
public:
    FieldScalar() = default;
    FieldScalar(long n) : rat_(make_rational(n)) {}                     // NOLINT(google-explicit-constructor)
    FieldScalar(const Rational& r) : rat_(r) {}                        // NOLINT(google-explicit-constructor)
    FieldScalar(Rational rat, Rational surd, Rational disc);

    static FieldScalar sqrt_disc(const Rational& d) { return {Rational(0), Rational(1), d}; }

    const Rational& rat() const { return rat_; }
    const Rational& surd() const { return surd_; }
    const Rational& disc() const { return disc_; }

    bool is_zero() const { return sgn(rat_) == 0 && sgn(surd_) == 0; }
    bool is_rational() const { return sgn(surd_) == 0; }

    FieldScalar operator-() const;
    FieldScalar& operator+=(const FieldScalar& o);
    FieldScalar& operator-=(const FieldScalar& o);
    FieldScalar& operator*=(const FieldScalar& o);
    FieldScalar inverse() const;

    friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
    friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
    friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
    friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) { return a * b.inverse(); }

    bool operator==(const FieldScalar& o) const { return rat_ == o.rat_ && surd_ == o.surd_ && disc_ == o.disc_; }
    std::strong_ordering operator<=>(const FieldScalar& o) const;

    // Sign of the leading rational component; used for primitive normalization.
    int lead_sign() const { return sgn(rat_) != 0 ? sgn(rat_) : sgn(surd_); }

    std::complex<double> to_complex() const;
    double to_double() const;   // throws ConfigError if the value is not real

    std::string str() const;

private:
    Rational rat_{0};
    Rational surd_{0};
    Rational disc_{0};

    static const Rational& merge_disc(const Rational& a, const Rational& b);
};

inline bool is_zero(const FieldScalar& s) { return s.is_zero(); }

} // namespace invlab
