#pragma once

#include "invlab/compiled.hpp"
#include "invlab/systems.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace invlab {

enum class Method { stormer_verlet, implicit_midpoint, rk4 };

Method method_from_string(const std::string& name);
std::string method_to_string(Method m);

struct IntegratorConfig {
    Method method = Method::stormer_verlet;
    double h = 1e-2;
    long steps = 1000;
    double tol = 1e-14;       // implicit solver tolerance
    int max_iters = 50;
    std::array<double, 4> y0{0, 0, 0, 0};
    long cadence = 1;         // record diagnostics every k steps
};

struct SingularityEvent {
    long step = 0;
    std::string what;
};

using Mat4 = std::array<std::array<double, 4>, 4>;

struct TrajectoryRecord {
    std::vector<long> step;
    std::vector<double> t;
    std::vector<std::array<double, 4>> y;
    std::vector<Mat4> tangent;            // dPhi/dy0 at the samples
    std::optional<SingularityEvent> event;
    double wall_seconds = 0.0;
};

// Numeric view of a SystemDef: compiled Hamiltonian, forces and Hessian.
struct NumericSystem {
    CompiledFunction H;
    std::array<CompiledFunction, 2> grad_v;
    std::array<CompiledFunction, 3> hess_v;   // V11 V12 V22
    bool guard_radius = false;                // Kepler near-collision guard
    double min_radius = 1e-6;

    explicit NumericSystem(const SystemDef& s);
    std::array<double, 4> xdot(const std::array<double, 4>& y) const;
    void hess(const std::array<double, 4>& y, double& h11, double& h12, double& h22) const;
};

// One step of the chosen scheme (no tangent); throws SingularityError /
// SolverError per the module contract.
std::array<double, 4> step(Method m, const NumericSystem& ns, const std::array<double, 4>& y, double h,
                           double tol = 1e-14, int max_iters = 50);

// Full run with tangent-map propagation. The tangent update is the exact
// Jacobian of the discrete map for every scheme. Stormer-Verlet uses
// compensated (Kahan) accumulation in the state and tangent updates so the
// canonical defect stays at the roundoff floor over long runs.
TrajectoryRecord integrate_with_tangent(const IntegratorConfig& cfg, const SystemDef& s);

// ||J^T W(y_n) J - W(y_0)||_inf along the samples.
std::vector<double> pullback_defect(const TrajectoryRecord& rec, const TwoForm& W);

// |F(y_n) - F(y_0)| along the samples.
std::vector<double> integral_drift(const TrajectoryRecord& rec, const GeneralizedFunction& F);

struct DriftReport {
    std::vector<long> step;
    std::vector<double> t;
    std::vector<std::array<double, 4>> y;
    std::vector<double> energy_drift;
    std::vector<double> canonical_defect;
    std::vector<std::pair<std::string, std::vector<double>>> form_defects;
    std::vector<std::pair<std::string, std::vector<double>>> integral_drifts;
    std::optional<SingularityEvent> event;
    double wall_seconds = 0.0;
};

// Energy + canonical defect + every registered 2-form and first integral.
DriftReport drift_report(const TrajectoryRecord& rec, const SystemDef& s);

// CSV emission, UTF-8/LF, fixed column order:
// step,t,y1..y4,energy_drift,canonical_defect,<form defect cols>,<integral cols>
std::string drift_csv(const DriftReport& rep);

// Central-difference flow pullback ((Phi_h^* T - Phi_-h^* T)/2h): residual
// scales as O(h^2) when L_X T = 0 and tends to |L_X T| otherwise. The local
// flow uses a small-step RK4 reference integration with tangent.
struct FdLieRow {
    double h = 0.0;
    double residual = 0.0;
};
struct FdLieTable {
    std::vector<FdLieRow> rows;
    std::vector<double> halving_ratios;   // residual(h) / residual(h/2)
};
FdLieTable fd_lie_check(const SystemDef& s, const Tensor<FieldScalar>& T,
                        std::span<const std::array<double, 4>> points, std::span<const double> h_list,
                        int substeps = 64);

} // namespace invlab
