#pragma once

#include <gmpxx.h>

#include <string>

namespace invlab {

// Exact rational with arbitrary-precision backing. Fraction-free elimination
// grows coefficients superlinearly, so fixed-width integers are not an option.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }

// "num" or "num/den"; the deterministic text form used everywhere.
std::string to_string(const Rational& r);

// Parses "num" or "num/den" (optional leading '-'). Throws ConfigError on junk.
Rational parse_rational(const std::string& text);

// Exact square root if the rational is a perfect square, else nullopt-style flag.
bool exact_sqrt(const Rational& r, Rational& out);

} // namespace invlab
