#include "invlab/integrate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace invlab {

Method method_from_string(const std::string& name) {
    if (name == "stormer_verlet" || name == "sv") return Method::stormer_verlet;
    if (name == "implicit_midpoint" || name == "im") return Method::implicit_midpoint;
    if (name == "rk4") return Method::rk4;
    throw ConfigError("unknown integrator '" + name + "'");
}

std::string method_to_string(Method m) {
    switch (m) {
        case Method::stormer_verlet: return "stormer_verlet";
        case Method::implicit_midpoint: return "implicit_midpoint";
        case Method::rk4: return "rk4";
    }
    return "?";
}

NumericSystem::NumericSystem(const SystemDef& s)
    : H(compile(s.H)),
      grad_v{compile(s.grad_v[0]), compile(s.grad_v[1])},
      hess_v{compile(s.hess_v[0]), compile(s.hess_v[1]), compile(s.hess_v[2])},
      guard_radius(s.uses_radical) {}

std::array<double, 4> NumericSystem::xdot(const std::array<double, 4>& y) const {
    return {y[2], y[3], -grad_v[0].eval_real(y), -grad_v[1].eval_real(y)};
}

void NumericSystem::hess(const std::array<double, 4>& y, double& h11, double& h12, double& h22) const {
    h11 = hess_v[0].eval_real(y);
    h12 = hess_v[1].eval_real(y);
    h22 = hess_v[2].eval_real(y);
}

namespace {

const Mat4 kIdentity = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};

Mat4 matmul(const Mat4& A, const Mat4& B) {
    Mat4 C{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double a = A[i][k];
            if (a == 0.0) continue;
            for (int j = 0; j < 4; ++j) C[i][j] += a * B[k][j];
        }
    return C;
}

// DX = [[0, I], [-Hess V, 0]]
Mat4 dx_matrix(const NumericSystem& ns, const std::array<double, 4>& y) {
    double h11, h12, h22;
    ns.hess(y, h11, h12, h22);
    Mat4 A{};
    A[0][2] = 1.0;
    A[1][3] = 1.0;
    A[2][0] = -h11;
    A[2][1] = -h12;
    A[3][0] = -h12;
    A[3][1] = -h22;
    return A;
}

void guard(const NumericSystem& ns, const std::array<double, 4>& y, long stepno) {
    for (double v : y)
        if (!std::isfinite(v))
            throw SingularityError("non-finite state at step " + std::to_string(stepno));
    if (ns.guard_radius) {
        double rho = y[0] * y[0] + y[1] * y[1];
        if (rho < ns.min_radius * ns.min_radius)
            throw SingularityError("near-collision (r < 1e-6) at step " + std::to_string(stepno));
    }
}

// Kahan-compensated accumulator: value += inc with carried correction.
inline void comp_add(double& value, double& carry, double inc) {
    const double corrected = inc - carry;
    const double t = value + corrected;
    carry = (t - value) - corrected;
    value = t;
}

struct SvState {
    std::array<double, 4> y;
    std::array<double, 4> cy{};    // compensation for y
    Mat4 J = kIdentity;
    Mat4 cJ{};

    void kick(const NumericSystem& ns, double hh) {
        const double f1 = -ns.grad_v[0].eval_real(y);
        const double f2 = -ns.grad_v[1].eval_real(y);
        double h11, h12, h22;
        ns.hess(y, h11, h12, h22);
        comp_add(y[2], cy[2], hh * f1);
        comp_add(y[3], cy[3], hh * f2);
        for (int c = 0; c < 4; ++c) {
            const double jq1 = J[0][c], jq2 = J[1][c];
            comp_add(J[2][c], cJ[2][c], -hh * (h11 * jq1 + h12 * jq2));
            comp_add(J[3][c], cJ[3][c], -hh * (h12 * jq1 + h22 * jq2));
        }
    }
    void drift(double h) {
        comp_add(y[0], cy[0], h * y[2]);
        comp_add(y[1], cy[1], h * y[3]);
        for (int c = 0; c < 4; ++c) {
            comp_add(J[0][c], cJ[0][c], h * J[2][c]);
            comp_add(J[1][c], cJ[1][c], h * J[3][c]);
        }
    }
};

void solve4(Mat4 A, std::array<double, 4>& b) {
    // Gaussian elimination with partial pivoting; A is well-conditioned here
    // (I - (h/2) DX with h small).
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        if (A[c][c] == 0.0) throw SolverError("singular linear system in implicit solver");
        for (int r = c + 1; r < 4; ++r) {
            const double f = A[r][c] / A[c][c];
            if (f == 0.0) continue;
            for (int k = c; k < 4; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    for (int c = 3; c >= 0; --c) {
        for (int k = c + 1; k < 4; ++k) b[c] -= A[c][k] * b[k];
        b[c] /= A[c][c];
    }
}

std::array<double, 4> implicit_midpoint_step(const NumericSystem& ns, const std::array<double, 4>& y,
                                             double h, double tol, int max_iters, Mat4* tangent_update) {
    // y' = y + h X((y+y')/2): damped fixed point, then Newton fallback.
    std::array<double, 4> z = y;
    {
        auto f = ns.xdot(y);
        for (int i = 0; i < 4; ++i) z[i] = y[i] + h * f[i];
    }
    auto residual = [&](const std::array<double, 4>& zz, std::array<double, 4>& mid) {
        for (int i = 0; i < 4; ++i) mid[i] = 0.5 * (y[i] + zz[i]);
        auto f = ns.xdot(mid);
        std::array<double, 4> g;
        for (int i = 0; i < 4; ++i) g[i] = zz[i] - y[i] - h * f[i];
        return g;
    };
    std::array<double, 4> mid{};
    int it = 0;
    for (; it < 10 && it < max_iters; ++it) {
        auto g = residual(z, mid);
        double n = 0.0;
        for (double v : g) n = std::max(n, std::abs(v));
        if (n < tol) break;
        for (int i = 0; i < 4; ++i) z[i] -= g[i];
    }
    for (; it < max_iters; ++it) {
        auto g = residual(z, mid);
        double n = 0.0;
        for (double v : g) n = std::max(n, std::abs(v));
        if (n < tol) break;
        Mat4 A = dx_matrix(ns, mid);
        Mat4 M = kIdentity;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) M[i][j] -= 0.5 * h * A[i][j];
        solve4(M, g);
        for (int i = 0; i < 4; ++i) z[i] -= g[i];
    }
    {
        auto g = residual(z, mid);
        double n = 0.0;
        for (double v : g) n = std::max(n, std::abs(v));
        if (n >= tol)
            throw SolverError("implicit midpoint did not converge: residual " + std::to_string(n) +
                              " after " + std::to_string(it) + " iterations");
    }
    if (tangent_update) {
        // J' = (I - h/2 DX(m))^{-1} (I + h/2 DX(m)), the exact Jacobian of the map.
        Mat4 A = dx_matrix(ns, mid);
        Mat4 Mm = kIdentity, Mp = kIdentity;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Mm[i][j] -= 0.5 * h * A[i][j];
                Mp[i][j] += 0.5 * h * A[i][j];
            }
        Mat4 R{};
        for (int col = 0; col < 4; ++col) {
            std::array<double, 4> b{Mp[0][col], Mp[1][col], Mp[2][col], Mp[3][col]};
            solve4(Mm, b);
            for (int r = 0; r < 4; ++r) R[r][col] = b[r];
        }
        *tangent_update = R;
    }
    return z;
}

struct Rk4Result {
    std::array<double, 4> y;
    Mat4 update;   // exact Jacobian of the RK4 map (stage-differentiated)
};

Rk4Result rk4_step(const NumericSystem& ns, const std::array<double, 4>& y, double h, bool with_tangent) {
    Rk4Result out;
    auto add = [](const std::array<double, 4>& a, double s, const std::array<double, 4>& b) {
        std::array<double, 4> r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    auto k1 = ns.xdot(y);
    auto y2 = add(y, 0.5 * h, k1);
    auto k2 = ns.xdot(y2);
    auto y3 = add(y, 0.5 * h, k2);
    auto k3 = ns.xdot(y3);
    auto y4 = add(y, h, k3);
    auto k4 = ns.xdot(y4);
    for (int i = 0; i < 4; ++i)
        out.y[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (with_tangent) {
        Mat4 A1 = dx_matrix(ns, y), A2 = dx_matrix(ns, y2), A3 = dx_matrix(ns, y3), A4 = dx_matrix(ns, y4);
        // K1 = A1, K2 = A2 (I + h/2 K1), ...
        Mat4 K1 = A1;
        Mat4 T = kIdentity;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) T[i][j] += 0.5 * h * K1[i][j];
        Mat4 K2 = matmul(A2, T);
        T = kIdentity;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) T[i][j] += 0.5 * h * K2[i][j];
        Mat4 K3 = matmul(A3, T);
        T = kIdentity;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) T[i][j] += h * K3[i][j];
        Mat4 K4 = matmul(A4, T);
        out.update = kIdentity;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                out.update[i][j] += (h / 6.0) * (K1[i][j] + 2.0 * K2[i][j] + 2.0 * K3[i][j] + K4[i][j]);
    }
    return out;
}

} // namespace

std::array<double, 4> step(Method m, const NumericSystem& ns, const std::array<double, 4>& y, double h,
                           double tol, int max_iters) {
    guard(ns, y, 0);
    switch (m) {
        case Method::stormer_verlet: {
            SvState st{y};
            st.kick(ns, 0.5 * h);
            st.drift(h);
            st.kick(ns, 0.5 * h);
            return st.y;
        }
        case Method::implicit_midpoint:
            return implicit_midpoint_step(ns, y, h, tol, max_iters, nullptr);
        case Method::rk4:
            return rk4_step(ns, y, h, false).y;
    }
    throw ConfigError("bad method");
}

TrajectoryRecord integrate_with_tangent(const IntegratorConfig& cfg, const SystemDef& s) {
    if (!(cfg.h > 0.0) || cfg.steps < 0 || cfg.cadence <= 0 || !(cfg.tol > 0.0))
        throw ConfigError("bad integrator configuration");
    NumericSystem ns(s);
    TrajectoryRecord rec;
    const auto t0 = std::chrono::steady_clock::now();

    auto sample = [&](long n, const std::array<double, 4>& y, const Mat4& J) {
        rec.step.push_back(n);
        rec.t.push_back(n * cfg.h);
        rec.y.push_back(y);
        rec.tangent.push_back(J);
    };

    SvState sv{cfg.y0};
    std::array<double, 4> y = cfg.y0;
    Mat4 J = kIdentity;
    sample(0, cfg.y0, kIdentity);
    try {
        for (long n = 1; n <= cfg.steps; ++n) {
            if (cfg.method == Method::stormer_verlet) {
                guard(ns, sv.y, n);
                sv.kick(ns, 0.5 * cfg.h);
                sv.drift(cfg.h);
                sv.kick(ns, 0.5 * cfg.h);
                guard(ns, sv.y, n);
                y = sv.y;
                J = sv.J;
            } else if (cfg.method == Method::implicit_midpoint) {
                guard(ns, y, n);
                Mat4 upd;
                y = implicit_midpoint_step(ns, y, cfg.h, cfg.tol, cfg.max_iters, &upd);
                guard(ns, y, n);
                J = matmul(upd, J);
            } else {
                guard(ns, y, n);
                Rk4Result r = rk4_step(ns, y, cfg.h, true);
                y = r.y;
                guard(ns, y, n);
                J = matmul(r.update, J);
            }
            if (n % cfg.cadence == 0 || n == cfg.steps) sample(n, y, J);
        }
    } catch (const SingularityError& e) {
        long at = rec.step.empty() ? 0 : rec.step.back();
        rec.event = SingularityEvent{at, e.what()};
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

namespace {

struct CompiledForm {
    std::array<CompiledFunction, 16> w;
    explicit CompiledForm(const TwoForm& W) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) w[std::size_t(i) * 4 + j] = compile(W(i, j));
    }
    Mat4 eval(const std::array<double, 4>& x) const {
        Mat4 M{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) M[i][j] = w[std::size_t(i) * 4 + j].eval_real(x);
        return M;
    }
};

double congruence_defect(const Mat4& J, const Mat4& Wx, const Mat4& W0) {
    // ||J^T Wx J - W0||_inf
    Mat4 T{};
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int l = 0; l < 4; ++l) acc += Wx[k][l] * J[l][j];
            T[k][j] = acc;
        }
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += J[k][i] * T[k][j];
            worst = std::max(worst, std::abs(acc - W0[i][j]));
        }
    return worst;
}

} // namespace

std::vector<double> pullback_defect(const TrajectoryRecord& rec, const TwoForm& W) {
    CompiledForm cw(W);
    std::vector<double> out;
    out.reserve(rec.y.size());
    if (rec.y.empty()) return out;
    Mat4 W0 = cw.eval(rec.y.front());
    for (std::size_t n = 0; n < rec.y.size(); ++n)
        out.push_back(congruence_defect(rec.tangent[n], cw.eval(rec.y[n]), W0));
    return out;
}

std::vector<double> integral_drift(const TrajectoryRecord& rec, const GeneralizedFunction& F) {
    CompiledFunction cf = compile(F);
    std::vector<double> out;
    out.reserve(rec.y.size());
    if (rec.y.empty()) return out;
    const double f0 = cf.eval_real(rec.y.front());
    for (const auto& y : rec.y) out.push_back(std::abs(cf.eval_real(y) - f0));
    return out;
}

DriftReport drift_report(const TrajectoryRecord& rec, const SystemDef& s) {
    DriftReport rep;
    rep.step = rec.step;
    rep.t = rec.t;
    rep.y = rec.y;
    rep.event = rec.event;
    rep.wall_seconds = rec.wall_seconds;
    rep.energy_drift = integral_drift(rec, s.H);
    rep.canonical_defect = pullback_defect(rec, frame::canonical_symplectic());
    for (const auto& kt : s.known_two_forms)
        rep.form_defects.push_back({kt.label, pullback_defect(rec, kt.tensor)});
    for (const auto& fi : s.first_integrals)
        rep.integral_drifts.push_back({fi.label, integral_drift(rec, fi.f)});
    return rep;
}

std::string drift_csv(const DriftReport& rep) {
    std::ostringstream os;
    os << "step,t,y1,y2,y3,y4,energy_drift,canonical_defect";
    for (const auto& [label, col] : rep.form_defects) os << ",defect_" << label;
    for (const auto& [label, col] : rep.integral_drifts) os << ",drift_" << label;
    os << "\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << "," << buf;
    };
    for (std::size_t n = 0; n < rep.step.size(); ++n) {
        os << rep.step[n];
        put(rep.t[n]);
        for (double v : rep.y[n]) put(v);
        put(rep.energy_drift[n]);
        put(rep.canonical_defect[n]);
        for (const auto& [label, col] : rep.form_defects) put(col[n]);
        for (const auto& [label, col] : rep.integral_drifts) put(col[n]);
        os << "\n";
    }
    return os.str();
}

namespace {

struct FlowWithTangent {
    std::array<double, 4> y;
    Mat4 J;
};

// High-accuracy local flow: RK4 with tangent over |h| split into substeps.
FlowWithTangent reference_flow(const NumericSystem& ns, const std::array<double, 4>& x, double h,
                               int substeps) {
    FlowWithTangent f{x, kIdentity};
    const double hs = h / substeps;
    for (int i = 0; i < substeps; ++i) {
        Rk4Result r = rk4_step(ns, f.y, hs, true);
        f.y = r.y;
        f.J = matmul(r.update, f.J);
    }
    return f;
}

Mat4 invert4(const Mat4& A) {
    Mat4 inv = kIdentity;
    Mat4 M = A;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        std::swap(M[c], M[piv]);
        std::swap(inv[c], inv[piv]);
        const double d = M[c][c];
        for (int k = 0; k < 4; ++k) {
            M[c][k] /= d;
            inv[c][k] /= d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            const double f = M[r][c];
            if (f == 0.0) continue;
            for (int k = 0; k < 4; ++k) {
                M[r][k] -= f * M[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

// Pullback of a (2,0) or (0,2) tensor under the local flow map.
Mat4 pullback_at(const NumericSystem& ns, const CompiledForm& cT, bool contravariant,
                 const std::array<double, 4>& x, double h, int substeps) {
    FlowWithTangent f = reference_flow(ns, x, h, substeps);
    Mat4 Tx = cT.eval(f.y);
    if (contravariant) {
        // (Phi^* T)(x) = A^-1 T(Phi x) A^-T with A = dPhi(x)
        Mat4 Ai = invert4(f.J);
        Mat4 tmp{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) acc += Ai[i][k] * Tx[k][j];
                tmp[i][j] = acc;
            }
        Mat4 out{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) acc += tmp[i][k] * Ai[j][k];
                out[i][j] = acc;
            }
        return out;
    }
    // (Phi^* W)(x) = A^T W(Phi x) A
    Mat4 tmp{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += Tx[i][k] * f.J[k][j];
            tmp[i][j] = acc;
        }
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += f.J[k][i] * tmp[k][j];
            out[i][j] = acc;
        }
    return out;
}

} // namespace

FdLieTable fd_lie_check(const SystemDef& s, const Tensor<FieldScalar>& T,
                        std::span<const std::array<double, 4>> points, std::span<const double> h_list,
                        int substeps) {
    const bool contravariant = T.contravariant_order() == 2;
    if (!((T.contravariant_order() == 2 && T.covariant_order() == 0) ||
          (T.contravariant_order() == 0 && T.covariant_order() == 2)))
        throw ConfigError("fd_lie_check expects a bivector or a 2-form");
    NumericSystem ns(s);
    CompiledForm cT((TwoForm(T)));
    FdLieTable table;
    for (double h : h_list) {
        double worst = 0.0;
        for (const auto& x : points) {
            Mat4 plus = pullback_at(ns, cT, contravariant, x, h, substeps);
            Mat4 minus = pullback_at(ns, cT, contravariant, x, -h, substeps);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    worst = std::max(worst, std::abs((plus[i][j] - minus[i][j]) / (2.0 * h)));
        }
        table.rows.push_back({h, worst});
    }
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i)
        table.halving_ratios.push_back(table.rows[i].residual /
                                       std::max(table.rows[i + 1].residual, 1e-300));
    return table;
}

} // namespace invlab
