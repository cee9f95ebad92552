#include "invlab/gfunc.hpp"

#include <cmath>
#include <sstream>

namespace invlab {

AffineForm AffineForm::operator-() const {
    AffineForm r;
    r.const_ = -const_;
    for (const auto& [i, c] : lin_) r.lin_.emplace(i, -c);
    return r;
}

AffineForm& AffineForm::operator+=(const AffineForm& o) {
    const_ += o.const_;
    for (const auto& [i, c] : o.lin_) {
        auto [it, fresh] = lin_.emplace(i, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) lin_.erase(it);
        }
    }
    return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& o) { return *this += -o; }

AffineForm& AffineForm::operator*=(const AffineForm& o) {
    if (!is_constant() && !o.is_constant())
        throw std::logic_error("affine*affine with two non-constant factors; polarize instead");
    if (o.is_constant()) {
        const FieldScalar s = o.const_;
        const_ *= s;
        if (s.is_zero()) {
            lin_.clear();
            return *this;
        }
        for (auto& [i, c] : lin_) c *= s;
        return *this;
    }
    const FieldScalar s = const_;
    *this = o;
    return *this *= AffineForm(s);
}

FieldScalar AffineForm::eval(const std::vector<FieldScalar>& u) const {
    FieldScalar r = const_;
    for (const auto& [i, c] : lin_) {
        if (i < 0 || static_cast<std::size_t>(i) >= u.size())
            throw ConfigError("parameter index out of range in AffineForm::eval");
        r += c * u[i];
    }
    return r;
}

std::string AffineForm::str() const {
    std::ostringstream os;
    bool first = true;
    if (!const_.is_zero() || lin_.empty()) {
        os << const_.str();
        first = false;
    }
    for (const auto& [i, c] : lin_) {
        if (!first) os << " + ";
        os << c.str() << "*u" << i;
        first = false;
    }
    return os.str();
}

std::complex<double> evaluate(const GeneralizedFunction& f, const std::array<double, 4>& x,
                              RadicalBranch branch) {
    const double rho = x[0] * x[0] + x[1] * x[1];
    const double r = (branch == RadicalBranch::positive ? 1.0 : -1.0) * std::sqrt(rho);
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [k, c] : f.terms()) {
        if (k.rho_pow < 0 && rho == 0.0)
            throw SingularityError("evaluation at rho = 0 with negative rho power");
        double m = 1.0;
        for (int i = 0; i < kDim; ++i)
            for (int e = 0; e < k.exps[i]; ++e) m *= x[i];
        if (k.rad != 0) m *= r;
        if (k.rho_pow != 0) m *= std::pow(rho, k.rho_pow);
        std::complex<double> v = c.to_complex() * m;
        if (k.has_exp()) v *= std::exp(k.lam1.to_complex() * x[0] + k.lam2.to_complex() * x[1]);
        acc += v;
    }
    return acc;
}

double evaluate_real(const GeneralizedFunction& f, const std::array<double, 4>& x, RadicalBranch branch) {
    std::complex<double> z = evaluate(f, x, branch);
    if (std::abs(z.imag()) > 1e-12 * (1.0 + std::abs(z.real())))
        throw ConfigError("complex value in evaluate_real");
    return z.real();
}

GeneralizedFunction substitute(const ParamFunc& f, const std::vector<FieldScalar>& u) {
    GeneralizedFunction r;
    for (const auto& [k, c] : f.terms()) {
        FieldScalar v = c.eval(u);
        if (!v.is_zero()) r += GeneralizedFunction::monomial(k, v);
    }
    return r;
}

std::string serialize(const GeneralizedFunction& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : f.terms()) {
        if (!first) os << " + ";
        os << c.str();
        if (!k.is_one()) os << "*" << k.str();
        first = false;
    }
    return os.str();
}

namespace gf {
GeneralizedFunction q1() { return GeneralizedFunction::var(0); }
GeneralizedFunction q2() { return GeneralizedFunction::var(1); }
GeneralizedFunction p1() { return GeneralizedFunction::var(2); }
GeneralizedFunction p2() { return GeneralizedFunction::var(3); }
GeneralizedFunction c(const FieldScalar& v) { return GeneralizedFunction::constant(v); }
GeneralizedFunction c(long v) { return GeneralizedFunction::constant(FieldScalar(v)); }
GeneralizedFunction pow(const GeneralizedFunction& f, int n) {
    GeneralizedFunction r = c(1);
    for (int i = 0; i < n; ++i) r *= f;
    return r;
}
} // namespace gf

} // namespace invlab
