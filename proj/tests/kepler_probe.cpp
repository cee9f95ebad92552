#include "invlab/integrate.hpp"
#include <cstdio>
using namespace invlab;
int main() {
    SystemDef s = build_kepler(1);
    NumericSystem ns(s);
    std::array<double,4> x{1, 0, 0, 1};
    auto f = ns.xdot(x);
    std::printf("xdot at (1,0,0,1): %g %g %g %g (expect 0 1 -1 0)\n", f[0], f[1], f[2], f[3]);
    std::array<double,4> x2{0.6, 0.8, 0.1, 0.2};
    auto f2 = ns.xdot(x2);
    std::printf("xdot at (.6,.8,...): %g %g (expect %g %g)\n", f2[2], f2[3], -0.6, -0.8);
    double h11, h12, h22;
    ns.hess(x, h11, h12, h22);
    std::printf("hess at (1,0): %g %g %g (expect -2 0 1)\n", h11, h12, h22);
    // plain repeated step()
    std::array<double,4> y{1, 0, 0, 1};
    for (int n = 0; n < 6283; ++n) y = step(Method::stormer_verlet, ns, y, 1e-3);
    std::printf("step() final: %.9g %.9g %.9g %.9g\n", y[0], y[1], y[2], y[3]);
    IntegratorConfig cfg;
    cfg.y0 = {1, 0, 0, 1};
    cfg.h = 1e-3;
    cfg.steps = 6283;
    cfg.cadence = 6283;
    TrajectoryRecord rec = integrate_with_tangent(cfg, s);
    auto& z = rec.y.back();
    std::printf("tangent run final: %.9g %.9g %.9g %.9g\n", z[0], z[1], z[2], z[3]);
    return 0;
}
