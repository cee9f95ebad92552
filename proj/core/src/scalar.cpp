#include "invlab/scalar.hpp"

#include <sstream>

namespace invlab {

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r.get_num().get_str();
    if (r.get_den() != 1) os << "/" << r.get_den().get_str();
    return os.str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ConfigError("empty rational literal");
    try {
        Rational r(text);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad rational literal: '" + text + "'");
    }
}

bool exact_sqrt(const Rational& r, Rational& out) {
    if (sgn(r) < 0) return false;
    const Integer& num = r.get_num();
    const Integer& den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    out = Rational(sn, sd);
    out.canonicalize();
    return true;
}

FieldScalar::FieldScalar(Rational rat, Rational surd, Rational disc)
    : rat_(std::move(rat)), surd_(std::move(surd)), disc_(std::move(disc)) {
    if (sgn(surd_) == 0) {
        disc_ = 0;
        return;
    }
    if (sgn(disc_) == 0) {
        surd_ = 0;
        return;
    }
    Rational root;
    if (exact_sqrt(disc_, root)) {      // perfect square: fold into the rational part
        rat_ += surd_ * root;
        surd_ = 0;
        disc_ = 0;
    }
}

const Rational& FieldScalar::merge_disc(const Rational& a, const Rational& b) {
    if (sgn(a) == 0) return b;
    if (sgn(b) == 0) return a;
    if (a != b)
        throw ConfigError("mixed discriminants: sqrt(" + to_string(a) + ") vs sqrt(" + to_string(b) + ")");
    return a;
}

FieldScalar FieldScalar::operator-() const {
    FieldScalar r;
    r.rat_ = -rat_;
    r.surd_ = -surd_;
    r.disc_ = disc_;
    return r;
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
    disc_ = merge_disc(disc_, o.disc_);
    rat_ += o.rat_;
    surd_ += o.surd_;
    if (sgn(surd_) == 0) disc_ = 0;
    return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
    disc_ = merge_disc(disc_, o.disc_);
    rat_ -= o.rat_;
    surd_ -= o.surd_;
    if (sgn(surd_) == 0) disc_ = 0;
    return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
    const Rational d = merge_disc(disc_, o.disc_);
    Rational nr = rat_ * o.rat_ + surd_ * o.surd_ * d;
    Rational ns = rat_ * o.surd_ + surd_ * o.rat_;
    rat_ = std::move(nr);
    surd_ = std::move(ns);
    disc_ = sgn(surd_) == 0 ? Rational(0) : d;
    return *this;
}

FieldScalar FieldScalar::inverse() const {
    if (is_zero()) throw ConfigError("division by zero FieldScalar");
    if (is_rational()) return FieldScalar(1 / rat_);
    // (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - d b^2); the norm cannot vanish
    // for a non-square d (d square was folded at construction).
    Rational norm = rat_ * rat_ - disc_ * surd_ * surd_;
    if (sgn(norm) == 0) throw ConfigError("non-invertible scalar (degenerate discriminant)");
    return {rat_ / norm, -surd_ / norm, disc_};
}

std::strong_ordering FieldScalar::operator<=>(const FieldScalar& o) const {
    if (int c = cmp(rat_, o.rat_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(surd_, o.surd_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(disc_, o.disc_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::complex<double> FieldScalar::to_complex() const {
    double re = rat_.get_d();
    if (is_rational()) return {re, 0.0};
    double d = disc_.get_d();
    double s = surd_.get_d();
    if (d >= 0) return {re + s * std::sqrt(d), 0.0};
    return {re, s * std::sqrt(-d)};
}

double FieldScalar::to_double() const {
    std::complex<double> z = to_complex();
    if (z.imag() != 0.0) throw ConfigError("complex scalar where a real value is required");
    return z.real();
}

std::string FieldScalar::str() const {
    if (is_rational()) return to_string(rat_);
    std::ostringstream os;
    os << "(" << to_string(rat_);
    os << (sgn(surd_) < 0 ? "-" : "+");
    Rational as = abs(surd_);
    if (as != 1) os << to_string(as) << "*";
    os << "sqrt(" << to_string(disc_) << "))";
    return os.str();
}

} // namespace invlab
