#pragma once

#include "invlab/gfunc.hpp"

#include <array>
#include <complex>
#include <vector>

namespace invlab {

// Flattened numeric form of a GeneralizedFunction for tight evaluation loops
// (integrators call these millions of times). Exponential keys must be real.
class CompiledFunction {
public:
    CompiledFunction() = default;

    double eval_real(const std::array<double, 4>& x) const;
    std::complex<double> eval(const std::array<double, 4>& x) const;
    bool real_valued() const { return real_; }

    friend CompiledFunction compile(const GeneralizedFunction& f);

private:
    struct Term {
        double cre = 0.0, cim = 0.0;
        std::array<int, 4> exps{0, 0, 0, 0};
        int rad = 0;
        int rho_pow = 0;
        double lam1 = 0.0, lam2 = 0.0;
        bool has_exp = false;
    };
    std::vector<Term> terms_;
    bool real_ = true;
    bool singular_ = false;   // any negative rho power present
};

CompiledFunction compile(const GeneralizedFunction& f);

} // namespace invlab
