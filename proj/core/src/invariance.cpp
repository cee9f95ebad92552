#include "invlab/invariance.hpp"

#include "invlab/compiled.hpp"

#include <random>
#include <sstream>

namespace invlab {

namespace {

Bivector realize(const ParamBivector& pb, const std::vector<FieldScalar>& u) {
    Bivector B(2, 0, true);
    for (int c = 0; c < kSkewComponents; ++c) {
        auto [i, j] = kSkewIndex[c];
        GeneralizedFunction f = substitute(pb.tensor(i, j), u);
        B(i, j) = f;
        B(j, i) = -f;
    }
    return B;
}

} // namespace

SolveResult solve_invariance(const SystemDef& s, const AnsatzSpec& spec) {
    SolveResult res;
    res.pins = spec.pinned;
    res.pb = build_ansatz(spec);
    LinearSystem sys = assemble(s.X, res.pb);
    res.raw = nullspace(sys);
    if (!res.raw.consistent)
        throw ConfigError("pinned component admits no invariant completion over this menu");

    res.stats.rows = res.raw.rows;
    res.stats.cols = res.raw.cols;
    res.stats.rank = res.raw.rank;
    res.stats.nullity = res.raw.nullity;
    res.stats.n_functions = spec.function_count();
    res.stats.n_functional_equations = sys.n_functional;
    res.stats.digest = spec.digest();
    res.stats.menu = spec.descriptor;

    for (const auto& v : res.raw.vectors) {
        // Basis vectors span the homogeneous solution space; strip the pin.
        Bivector B(2, 0, true);
        for (int c = 0; c < kSkewComponents; ++c) {
            auto [i, j] = kSkewIndex[c];
            GeneralizedFunction f = substitute(res.pb.tensor(i, j), v) - spec.pinned[c];
            B(i, j) = f;
            B(j, i) = -f;
        }
        InvarianceReport rep = verify_invariant(s.X, B);
        if (!rep.pass)
            throw ConfigError("post-solve re-verification failed: " + rep.witness);
        res.basis.push_back(std::move(B));
    }
    if (res.raw.particular) {
        Bivector B = realize(res.pb, *res.raw.particular);
        InvarianceReport rep = verify_invariant(s.X, B);
        if (!rep.pass)
            throw ConfigError("post-solve re-verification of particular solution failed: " + rep.witness);
        res.particular = std::move(B);
    }
    return res;
}

std::optional<std::vector<FieldScalar>> SolveResult::span_coords(const Bivector& target) const {
    // Map the target into parameter space: strip the pinned offsets, read the
    // key coordinates, then shift by the particular solution when present.
    Bivector t = target;
    for (int c = 0; c < kSkewComponents; ++c) {
        if (pins[c].is_zero()) continue;
        auto [i, j] = kSkewIndex[c];
        t(i, j) -= pins[c];
        t(j, i) += pins[c];
    }
    auto coords = coordinates_in_menu(pb, t);
    if (!coords) return std::nullopt;
    std::vector<FieldScalar> u = *coords;
    if (raw.particular)
        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= (*raw.particular)[i];
    return solve_in_span(raw.vectors, u);
}

InvarianceReport verify_invariant(const XVector& X, const Tensor<FieldScalar>& T) {
    Tensor<FieldScalar> L = lie_derivative(X, T);
    const int n = L.order();
    std::vector<int> idx(n, 0);
    while (true) {
        std::size_t flat = 0;
        for (int v : idx) flat = (flat << 2) | std::size_t(v);
        if (!L.at(flat).is_zero()) {
            std::ostringstream os;
            os << "(L_X T)[";
            for (int a = 0; a < n; ++a) os << (a ? "," : "") << idx[a] + 1;
            os << "] = " << serialize(L.at(flat));
            return {false, os.str()};
        }
        int c = n - 1;
        while (c >= 0 && idx[c] == 3) idx[c--] = 0;
        if (c >= 0) ++idx[c]; else break;
    }
    return {true, ""};
}

std::size_t JacobiSystem::pack(int j, int k) const {
    // row-major upper triangle, j <= k
    const std::size_t n = basis_.size();
    return std::size_t(j) * n - std::size_t(j) * (j + 1) / 2 + std::size_t(k);
}

JacobiSystem::JacobiSystem(std::vector<Bivector> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) throw ConfigError("jacobi_analysis requires a nonempty basis");
    const int n = static_cast<int>(basis_.size());
    table_.reserve(std::size_t(n) * (n + 1) / 2);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) table_.push_back(schouten_bracket(basis_[j], basis_[k]));

    // Collect quadratic scalar equations per independent trivector component.
    struct Slot {
        int ci, cj, ck;
    };
    static const Slot slots[4] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const Slot& sl : slots) {
        std::map<MonomialKey, std::vector<std::pair<std::pair<int, int>, FieldScalar>>> rows;
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                const Trivector& Q = table_[pack(j, k)];
                // [[sum u B, sum u B]] = sum_{j,k} u_j u_k [[B_j,B_k]]; the
                // off-diagonal pairs appear twice by symmetry.
                FieldScalar mult(j == k ? 1 : 2);
                for (const auto& [key, c] : Q(sl.ci, sl.cj, sl.ck).terms())
                    rows[key].push_back({{j, k}, mult * c});
            }
        for (auto& [key, coeffs] : rows) {
            QuadraticEquation eq;
            eq.key = key;
            eq.comp_i = sl.ci;
            eq.comp_j = sl.cj;
            eq.comp_k = sl.ck;
            eq.coeffs = std::move(coeffs);
            eqs_.push_back(std::move(eq));
        }
    }
}

const Trivector& JacobiSystem::bracket(int j, int k) const {
    if (j > k) std::swap(j, k);
    return table_[pack(j, k)];
}

JacobiSystem::PointReport JacobiSystem::verify_point(const std::vector<FieldScalar>& u) const {
    if (u.size() != basis_.size()) throw ConfigError("parameter point has wrong dimension");
    for (const auto& eq : eqs_) {
        FieldScalar acc(0);
        for (const auto& [jk, c] : eq.coeffs) acc += c * u[jk.first] * u[jk.second];
        if (!acc.is_zero()) {
            std::ostringstream os;
            os << "[[P',P']](" << eq.comp_i + 1 << "," << eq.comp_j + 1 << "," << eq.comp_k + 1
               << ") coefficient of " << eq.key.str() << " = " << acc.str();
            return {false, os.str()};
        }
    }
    return {true, ""};
}

std::vector<std::vector<FieldScalar>> JacobiSystem::scan_grid(
    const std::vector<std::vector<FieldScalar>>& grid) const {
    std::vector<std::vector<FieldScalar>> hits;
    for (const auto& u : grid)
        if (verify_point(u).pass) hits.push_back(u);
    return hits;
}

namespace {

struct CompiledBivector {
    std::array<CompiledFunction, 16> comp;
    std::array<CompiledFunction, 64> dcomp;   // derivative along l of comp (i,j)

    explicit CompiledBivector(const Bivector& B) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                comp[std::size_t(i) * 4 + j] = compile(B(i, j));
                for (int l = 0; l < 4; ++l)
                    dcomp[std::size_t(l) * 16 + std::size_t(i) * 4 + j] = compile(B(i, j).derive(l));
            }
    }
    double val(int i, int j, const std::array<double, 4>& x) const {
        return comp[std::size_t(i) * 4 + j].eval_real(x);
    }
    double dval(int l, int i, int j, const std::array<double, 4>& x) const {
        return dcomp[std::size_t(l) * 16 + std::size_t(i) * 4 + j].eval_real(x);
    }
};

// max over components of the polarized bracket [[f A, g B]] at x, where
// f = H^ea and g = H^eb, using d(fA)^{jk}/dl = f' H_l A + f dA.
double scaled_bracket_residual(const CompiledBivector& A, const CompiledBivector& B,
                               const CompiledFunction& H, const std::array<CompiledFunction, 4>& dH,
                               double ea, double eb, const std::array<double, 4>& x) {
    const double h = H.eval_real(x);
    const double f = std::pow(h, ea), g = std::pow(h, eb);
    const double df_dh = ea == 0.0 ? 0.0 : ea * std::pow(h, ea - 1.0);
    const double dg_dh = eb == 0.0 ? 0.0 : eb * std::pow(h, eb - 1.0);
    double hx[4];
    for (int l = 0; l < 4; ++l) hx[l] = dH[l].eval_real(x);

    double worst = 0.0;
    static const int slots[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& sl : slots) {
        const int i = sl[0], j = sl[1], k = sl[2];
        double acc = 0.0;
        for (int l = 0; l < 4; ++l) {
            const double dB_jk = dg_dh * hx[l] * B.val(j, k, x) + g * B.dval(l, j, k, x);
            const double dB_ki = dg_dh * hx[l] * B.val(k, i, x) + g * B.dval(l, k, i, x);
            const double dB_ij = dg_dh * hx[l] * B.val(i, j, x) + g * B.dval(l, i, j, x);
            acc += f * A.val(i, l, x) * dB_jk + f * A.val(j, l, x) * dB_ki + f * A.val(k, l, x) * dB_ij;
            const double dA_jk = df_dh * hx[l] * A.val(j, k, x) + f * A.dval(l, j, k, x);
            const double dA_ki = df_dh * hx[l] * A.val(k, i, x) + f * A.dval(l, k, i, x);
            const double dA_ij = df_dh * hx[l] * A.val(i, j, x) + f * A.dval(l, i, j, x);
            acc += g * B.val(i, l, x) * dA_jk + g * B.val(j, l, x) * dA_ki + g * B.val(k, l, x) * dA_ij;
        }
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

ScaledJacobiReport run_scaled(const SystemDef& s, const Bivector& A, const Rational& expA,
                              const Bivector* Bopt, const Rational& expB, int npoints, double tol,
                              std::uint64_t seed) {
    CompiledBivector ca(A);
    CompiledBivector cb(Bopt ? *Bopt : A);
    CompiledFunction H = compile(s.H);
    std::array<CompiledFunction, 4> dH;
    for (int l = 0; l < 4; ++l) dH[l] = compile(s.H.derive(l));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ScaledJacobiReport rep;
    rep.points = npoints;
    int accepted = 0;
    while (accepted < npoints) {
        std::array<double, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
        if (H.eval_real(x) <= 0.0) {
            ++rep.resampled;
            continue;
        }
        ++accepted;
        double r = scaled_bracket_residual(ca, Bopt ? cb : ca, H, dH, expA.get_d(),
                                           (Bopt ? expB : expA).get_d(), x);
        rep.max_residual = std::max(rep.max_residual, r);
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

} // namespace

ScaledJacobiReport verify_jacobi_scaled_numeric(const SystemDef& s, const Bivector& A,
                                                const Rational& exponent, int npoints, double tol,
                                                std::uint64_t seed) {
    return run_scaled(s, A, exponent, nullptr, 0, npoints, tol, seed);
}

ScaledJacobiReport verify_compatibility_scaled_numeric(const SystemDef& s, const Bivector& A,
                                                       const Rational& expA, const Bivector& B,
                                                       const Rational& expB, int npoints, double tol,
                                                       std::uint64_t seed) {
    return run_scaled(s, A, expA, &B, expB, npoints, tol, seed);
}

} // namespace invlab
