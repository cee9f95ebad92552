#include "invlab/monomial.hpp"

#include <sstream>

namespace invlab {

const char* const kAxisNames[kDim] = {"q1", "q2", "p1", "p2"};

std::strong_ordering MonomialKey::operator<=>(const MonomialKey& o) const {
    if (auto c = lam1 <=> o.lam1; c != 0) return c;
    if (auto c = lam2 <=> o.lam2; c != 0) return c;
    if (auto c = rad <=> o.rad; c != 0) return c;
    if (auto c = rho_pow <=> o.rho_pow; c != 0) return c;
    for (int i = 0; i < kDim; ++i)
        if (auto c = exps[i] <=> o.exps[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string MonomialKey::str() const {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const std::string& f) {
        if (!first) os << "*";
        os << f;
        first = false;
    };
    for (int i = 0; i < kDim; ++i) {
        if (exps[i] == 0) continue;
        std::string f = kAxisNames[i];
        if (exps[i] != 1) f += "^" + std::to_string(exps[i]);
        put(f);
    }
    if (rad != 0) put("r");
    if (rho_pow != 0) put("rho^" + std::to_string(rho_pow));
    if (has_exp()) {
        std::string f = "exp(" + lam1.str() + "*q1";
        f += lam2.lead_sign() < 0 ? "" : "+";
        f += lam2.str() + "*q2)";
        put(f);
    }
    if (first) os << "1";
    return os.str();
}

MonomialKey key_product(const MonomialKey& a, const MonomialKey& b) {
    MonomialKey k;
    for (int i = 0; i < kDim; ++i) k.exps[i] = a.exps[i] + b.exps[i];
    int rp = a.rad + b.rad;
    k.rad = rp & 1;
    k.rho_pow = a.rho_pow + b.rho_pow + (rp >> 1);
    k.lam1 = a.lam1 + b.lam1;
    k.lam2 = a.lam2 + b.lam2;
    return k;
}

MonomialKey key_var(int axis, int power) {
    MonomialKey k;
    k.exps[axis] = power;
    return k;
}

MonomialKey key_radical(int rho_pow) {
    MonomialKey k;
    k.rad = 1;
    k.rho_pow = rho_pow;
    return k;
}

MonomialKey key_exp(const FieldScalar& l1, const FieldScalar& l2) {
    MonomialKey k;
    k.lam1 = l1;
    k.lam2 = l2;
    return k;
}

} // namespace invlab
