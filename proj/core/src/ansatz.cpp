#include "invlab/ansatz.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace invlab {

int AnsatzSpec::unknown_count() const {
    int n = 0;
    for (const auto& ks : keys) n += static_cast<int>(ks.size());
    return n;
}

int AnsatzSpec::function_count() const {
    std::set<std::pair<int, std::pair<int, int>>> slots;
    for (int c = 0; c < kSkewComponents; ++c)
        for (const auto& k : keys[c]) slots.insert({c, {k.exps[2], k.exps[3]}});
    return static_cast<int>(slots.size());
}

std::string AnsatzSpec::digest() const {
    std::ostringstream os;
    os << momentum_degree << "|" << q_degree << "|" << descriptor << "|";
    for (int c = 0; c < kSkewComponents; ++c) {
        os << "[";
        for (const auto& k : keys[c]) os << k.str() << ";";
        os << serialize(pinned[c]) << "]";
    }
    const std::string s = os.str();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream hx;
    hx << std::hex << h;
    return hx.str();
}

AnsatzSpec make_menu(const MenuOptions& opt) {
    std::vector<MonomialKey> base;
    // momentum structures
    std::vector<std::pair<int, int>> pmon;
    for (int dp = 0; dp <= opt.momentum_degree; ++dp)
        for (int e1 = dp; e1 >= 0; --e1) pmon.push_back({e1, dp - e1});
    // coordinate polynomials
    std::vector<std::pair<int, int>> qmon;
    for (int dq = 0; dq <= opt.q_degree; ++dq)
        for (int e1 = dq; e1 >= 0; --e1) qmon.push_back({e1, dq - e1});
    // multiplicative extras: 1, radical menu, exponential lattice combinations
    struct Extra {
        int rad = 0, rho = 0;
        FieldScalar l1{}, l2{};
    };
    std::vector<Extra> extras{{}};
    if (opt.radical) {
        extras.push_back({1, -1, {}, {}});
        extras.push_back({1, -2, {}, {}});
    }
    if (opt.exp_height > 0 && !opt.exp_lattice.empty()) {
        std::set<std::pair<FieldScalar, FieldScalar>> seen;
        std::vector<std::pair<FieldScalar, FieldScalar>> level{{FieldScalar(0), FieldScalar(0)}};
        for (int h = 1; h <= opt.exp_height; ++h) {
            std::vector<std::pair<FieldScalar, FieldScalar>> next;
            for (const auto& v : level)
                for (const auto& g : opt.exp_lattice)
                    next.push_back({v.first + g.first, v.second + g.second});
            for (const auto& v : next) {
                if (v.first.is_zero() && v.second.is_zero()) continue;
                if (seen.insert(v).second) extras.push_back({0, 0, v.first, v.second});
            }
            level = std::move(next);
        }
    }

    AnsatzSpec spec;
    spec.momentum_degree = opt.momentum_degree;
    spec.q_degree = opt.q_degree;
    std::ostringstream ds;
    ds << "pdeg<=" << opt.momentum_degree << ", qdeg<=" << opt.q_degree;
    if (opt.radical) ds << ", radical {r*rho^-1, r*rho^-2}";
    if (opt.exp_height > 0) ds << ", exp height<=" << opt.exp_height;
    spec.descriptor = ds.str();

    std::set<MonomialKey> menu;
    for (const auto& [pe1, pe2] : pmon)
        for (const auto& [qe1, qe2] : qmon)
            for (const auto& ex : extras) {
                MonomialKey k;
                k.exps = {qe1, qe2, pe1, pe2};
                k.rad = ex.rad;
                k.rho_pow = ex.rho;
                k.lam1 = ex.l1;
                k.lam2 = ex.l2;
                menu.insert(k);
            }
    for (int c = 0; c < kSkewComponents; ++c) spec.keys[c] = {menu.begin(), menu.end()};
    return spec;
}

AnsatzSpec default_menu(const SystemDef& s, int q_degree_override) {
    MenuOptions opt;
    if (s.uses_radical) {
        opt.q_degree = 2;
        opt.radical = true;
    } else if (!s.exp_lattice.empty()) {
        opt.q_degree = 0;
        opt.exp_height = 2;
        opt.exp_lattice = s.exp_lattice;
    } else {
        opt.q_degree = 3;
    }
    if (q_degree_override >= 0) opt.q_degree = q_degree_override;
    return make_menu(opt);
}

void pin_component12(AnsatzSpec& spec, const GeneralizedFunction& f) {
    spec.keys[0].clear();
    spec.pinned[0] = f;
    spec.descriptor += ", pinned (1,2)";
}

ParamBivector build_ansatz(const AnsatzSpec& spec) {
    if (spec.unknown_count() == 0 && std::all_of(spec.pinned.begin(), spec.pinned.end(),
                                                 [](const GeneralizedFunction& f) { return f.is_zero(); }))
        throw ConfigError("empty ansatz");
    ParamBivector pb;
    pb.tensor = Tensor<AffineForm>(2, 0, true);
    pb.keys = spec.keys;
    int t = 0;
    for (int c = 0; c < kSkewComponents; ++c) {
        auto [i, j] = kSkewIndex[c];
        ParamFunc comp = to_affine(spec.pinned[c]);
        for (const auto& k : spec.keys[c]) {
            comp += ParamFunc::monomial(k, AffineForm::parameter(t));
            ++t;
        }
        pb.tensor(i, j) = comp;
        pb.tensor(j, i) = -comp;
    }
    pb.nparams = t;
    return pb;
}

std::optional<int> ParamBivector::param_index(int comp, const MonomialKey& k) const {
    int base = 0;
    for (int c = 0; c < comp; ++c) base += static_cast<int>(keys[c].size());
    auto it = std::find(keys[comp].begin(), keys[comp].end(), k);
    if (it == keys[comp].end()) return std::nullopt;
    return base + static_cast<int>(it - keys[comp].begin());
}

std::optional<std::vector<FieldScalar>> coordinates_in_menu(const ParamBivector& pb, const Bivector& B) {
    std::vector<FieldScalar> u(pb.nparams, FieldScalar(0));
    for (int c = 0; c < kSkewComponents; ++c) {
        auto [i, j] = kSkewIndex[c];
        for (const auto& [k, coeff] : B(i, j).terms()) {
            auto idx = pb.param_index(c, k);
            if (!idx) return std::nullopt;
            u[*idx] = coeff;
        }
    }
    return u;
}

} // namespace invlab
