#include "invlab/compiled.hpp"

#include <cmath>

namespace invlab {

CompiledFunction compile(const GeneralizedFunction& f) {
    CompiledFunction cf;
    for (const auto& [k, c] : f.terms()) {
        CompiledFunction::Term t;
        std::complex<double> z = c.to_complex();
        t.cre = z.real();
        t.cim = z.imag();
        if (t.cim != 0.0) cf.real_ = false;
        t.exps = k.exps;
        t.rad = k.rad;
        t.rho_pow = k.rho_pow;
        if (k.rho_pow < 0) cf.singular_ = true;
        if (k.has_exp()) {
            t.has_exp = true;
            t.lam1 = k.lam1.to_double();   // throws if a complex exponent sneaks in
            t.lam2 = k.lam2.to_double();
        }
        cf.terms_.push_back(t);
    }
    return cf;
}

double CompiledFunction::eval_real(const std::array<double, 4>& x) const {
    const double rho = x[0] * x[0] + x[1] * x[1];
    double r = 0.0;
    bool have_r = false;
    double acc = 0.0;
    for (const Term& t : terms_) {
        if (t.rho_pow < 0 && rho == 0.0)
            throw SingularityError("rho = 0 with negative rho power");
        double m = t.cre;
        for (int i = 0; i < 4; ++i) {
            double b = x[i];
            int e = t.exps[i];
            while (e >= 4) { double b2 = b * b; m *= b2 * b2; e -= 4; }
            while (e-- > 0) m *= b;
        }
        if (t.rad != 0) {
            if (!have_r) { r = std::sqrt(rho); have_r = true; }
            m *= r;
        }
        if (t.rho_pow > 0)
            for (int e = 0; e < t.rho_pow; ++e) m *= rho;
        else if (t.rho_pow < 0)
            for (int e = 0; e < -t.rho_pow; ++e) m /= rho;
        if (t.has_exp) m *= std::exp(t.lam1 * x[0] + t.lam2 * x[1]);
        acc += m;
    }
    return acc;
}

std::complex<double> CompiledFunction::eval(const std::array<double, 4>& x) const {
    const double rho = x[0] * x[0] + x[1] * x[1];
    std::complex<double> acc{0.0, 0.0};
    for (const Term& t : terms_) {
        if (t.rho_pow < 0 && rho == 0.0)
            throw SingularityError("rho = 0 with negative rho power");
        double m = 1.0;
        for (int i = 0; i < 4; ++i)
            for (int e = 0; e < t.exps[i]; ++e) m *= x[i];
        if (t.rad != 0) m *= std::sqrt(rho);
        m *= std::pow(rho, t.rho_pow);
        if (t.has_exp) m *= std::exp(t.lam1 * x[0] + t.lam2 * x[1]);
        acc += std::complex<double>(t.cre, t.cim) * m;
    }
    return acc;
}

} // namespace invlab
