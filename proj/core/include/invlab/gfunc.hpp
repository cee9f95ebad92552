#pragma once

#include "invlab/affine.hpp"
#include "invlab/errors.hpp"
#include "invlab/monomial.hpp"

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace invlab {

// Exact element of the phase-space function ring: a normalized linear
// combination of MonomialKeys. The coefficient type C is FieldScalar for
// concrete functions and AffineForm for parametric ansatz components.
//
// Normalization keeps exactly one representation per ring element:
//   * no zero coefficients, equal keys merged,
//   * rho powers <= 0 (positive powers expand into q-polynomials),
//   * per (p-exponents, radical parity, exp-key) class, all terms share the
//     maximal denominator rho^-M and the joint numerator polynomial is not
//     divisible by rho (common factors cancel eagerly).
// Zero test is then emptiness of the term map; it relies on the documented
// independence of {q,p-monomials} x {r} x {distinct exponentials}.
template <class C>
class GFunc {
public:
    using Terms = std::map<MonomialKey, C>;

    GFunc() = default;

    static GFunc constant(const C& c) { return monomial(MonomialKey{}, c); }
    static GFunc monomial(const MonomialKey& k, const C& c) {
        GFunc f;
        f.add_term(k, c);
        f.normalize();
        return f;
    }
    static GFunc var(int axis) { return monomial(key_var(axis), C(1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool operator==(const GFunc& o) const { return terms_ == o.terms_; }

    GFunc operator-() const {
        GFunc r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }

    GFunc& operator+=(const GFunc& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        normalize();
        return *this;
    }
    GFunc& operator-=(const GFunc& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        normalize();
        return *this;
    }

    friend GFunc operator+(GFunc a, const GFunc& b) { return a += b; }
    friend GFunc operator-(GFunc a, const GFunc& b) { return a -= b; }

    friend GFunc operator*(const GFunc& a, const GFunc& b) {
        GFunc r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(key_product(ka, kb), ca * cb);
        r.normalize();
        return r;
    }

    GFunc& operator*=(const GFunc& o) { return *this = *this * o; }

    // Scalar multiple; no normalization needed beyond zero sweep.
    friend GFunc operator*(const GFunc& a, const FieldScalar& s) {
        GFunc r;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : a.terms_) {
            C v = c * C(s);
            if (!invlab::is_zero(v)) r.terms_.emplace(k, std::move(v));
        }
        return r;
    }
    friend GFunc operator*(const FieldScalar& s, const GFunc& a) { return a * s; }

    // Exact partial derivative along axis s in {0..3}:
    //   d r/d q_i   = q_i * r * rho^-1
    //   d rho^m/dq_i = 2 m q_i rho^(m-1)
    //   d exp(lam.q)/d q_i = lam_i exp(lam.q)
    GFunc derive(int axis) const {
        GFunc r;
        for (const auto& [k, c] : terms_) {
            if (k.exps[axis] > 0) {
                MonomialKey nk = k;
                nk.exps[axis] -= 1;
                r.add_term(nk, c * C(FieldScalar(k.exps[axis])));
            }
            if (axis < 2) {
                if (k.rad != 0) {
                    MonomialKey nk = k;
                    nk.exps[axis] += 1;
                    nk.rho_pow -= 1;
                    r.add_term(nk, c);
                }
                if (k.rho_pow != 0) {
                    MonomialKey nk = k;
                    nk.exps[axis] += 1;
                    nk.rho_pow -= 1;
                    r.add_term(nk, c * C(FieldScalar(2 * k.rho_pow)));
                }
                const FieldScalar& lam = axis == 0 ? k.lam1 : k.lam2;
                if (!lam.is_zero()) r.add_term(k, c * C(lam));
            }
        }
        r.normalize();
        return r;
    }

private:
    Terms terms_;

    void add_term(const MonomialKey& k, const C& c) {
        if (invlab::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (invlab::is_zero(it->second)) terms_.erase(it);
        }
    }

    // Class id for rho-reduction: everything but the q-exponents and rho power.
    struct ClassKey {
        int p1, p2, rad;
        FieldScalar lam1, lam2;
        auto operator<=>(const ClassKey&) const = default;
    };

    void normalize() {
        bool needs = false;
        for (const auto& [k, c] : terms_)
            if (k.rho_pow != 0) { needs = true; break; }
        if (!needs) return;

        // Expand positive rho powers into polynomial terms.
        std::vector<std::pair<MonomialKey, C>> expanded;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.rho_pow > 0) {
                expanded.emplace_back(it->first, it->second);
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
        for (auto& [k, c] : expanded) {
            int m = k.rho_pow;
            MonomialKey base = k;
            base.rho_pow = 0;
            // (q1^2 + q2^2)^m
            std::vector<Integer> binom(m + 1);
            binom[0] = 1;
            for (int i = 1; i <= m; ++i) binom[i] = binom[i - 1] * (m - i + 1) / i;
            for (int i = 0; i <= m; ++i) {
                MonomialKey nk = base;
                nk.exps[0] += 2 * (m - i);
                nk.exps[1] += 2 * i;
                add_term(nk, c * C(FieldScalar(Rational(binom[i]))));
            }
        }

        // Group classes containing negative rho powers.
        std::map<ClassKey, std::vector<std::pair<MonomialKey, C>>> classes;
        for (const auto& [k, c] : terms_) {
            ClassKey ck{k.exps[2], k.exps[3], k.rad, k.lam1, k.lam2};
            classes[ck].push_back({k, c});
        }
        for (auto& [ck, group] : classes) {
            int maxden = 0;
            for (auto& [k, c] : group) maxden = std::max(maxden, -k.rho_pow);
            if (maxden == 0) continue;
            for (auto& [k, c] : group) terms_.erase(k);

            // Joint numerator over the common denominator rho^maxden.
            std::map<std::pair<int, int>, C> num;
            auto acc = [&num](int a, int b, const C& v) {
                auto [it, fresh] = num.emplace(std::make_pair(a, b), v);
                if (!fresh) {
                    it->second += v;
                    if (invlab::is_zero(it->second)) num.erase(it);
                }
            };
            for (auto& [k, c] : group) {
                int up = maxden + k.rho_pow;   // rho^up multiplies the numerator
                std::vector<Integer> binom(up + 1);
                binom[0] = 1;
                for (int i = 1; i <= up; ++i) binom[i] = binom[i - 1] * (up - i + 1) / i;
                for (int i = 0; i <= up; ++i)
                    acc(k.exps[0] + 2 * (up - i), k.exps[1] + 2 * i, c * C(FieldScalar(Rational(binom[i]))));
            }

            // Cancel rho while the numerator divides exactly (division by the
            // q2-monic quadratic q2^2 + q1^2 needs no coefficient division).
            int M = maxden;
            while (M > 0 && !num.empty()) {
                std::map<std::pair<int, int>, C> quot, rem = num;
                bool divisible = true;
                while (true) {
                    auto pick = rem.end();
                    for (auto it = rem.begin(); it != rem.end(); ++it)
                        if (it->first.second >= 2 && (pick == rem.end() || it->first.second > pick->first.second))
                            pick = it;
                    if (pick == rem.end()) break;
                    auto [a, b] = pick->first;
                    C c = pick->second;
                    rem.erase(pick);
                    auto [qit, fresh] = quot.emplace(std::make_pair(a, b - 2), c);
                    if (!fresh) qit->second += c;
                    auto [rit, rfresh] = rem.emplace(std::make_pair(a + 2, b - 2), -c);
                    if (!rfresh) {
                        rit->second += -c;
                        if (invlab::is_zero(rit->second)) rem.erase(rit);
                    }
                }
                divisible = rem.empty();
                if (!divisible) break;
                num = std::move(quot);
                for (auto it = num.begin(); it != num.end();)
                    it = invlab::is_zero(it->second) ? num.erase(it) : std::next(it);
                --M;
            }

            for (auto& [ab, c] : num) {
                MonomialKey nk;
                nk.exps = {ab.first, ab.second, ck.p1, ck.p2};
                nk.rad = ck.rad;
                nk.rho_pow = -M;
                nk.lam1 = ck.lam1;
                nk.lam2 = ck.lam2;
                add_term(nk, c);
            }
        }
    }
};

using GeneralizedFunction = GFunc<FieldScalar>;
using ParamFunc = GFunc<AffineForm>;

inline ParamFunc to_affine(const GeneralizedFunction& f) {
    ParamFunc r;
    for (const auto& [k, c] : f.terms()) r += ParamFunc::monomial(k, AffineForm(c));
    return r;
}

enum class RadicalBranch { positive, negative };

// Floating evaluation at x = (q1,q2,p1,p2); complex only when d < 0.
// Throws SingularityError at rho = 0 with a negative rho power.
std::complex<double> evaluate(const GeneralizedFunction& f, const std::array<double, 4>& x,
                              RadicalBranch branch = RadicalBranch::positive);
double evaluate_real(const GeneralizedFunction& f, const std::array<double, 4>& x,
                     RadicalBranch branch = RadicalBranch::positive);

// Substitute exact parameter values into a parametric function.
GeneralizedFunction substitute(const ParamFunc& f, const std::vector<FieldScalar>& u);

// Deterministic text form (sorted keys, exact rationals as num/den).
std::string serialize(const GeneralizedFunction& f);

// Parses a polynomial expression in q1,q2,p1,p2 (rational literals, + - * ^,
// parentheses). Used for pinned ansatz components on the CLI.
GeneralizedFunction parse_polynomial(const std::string& text);

// Small helpers used throughout systems construction.
namespace gf {
GeneralizedFunction q1();
GeneralizedFunction q2();
GeneralizedFunction p1();
GeneralizedFunction p2();
GeneralizedFunction c(const FieldScalar& v);
GeneralizedFunction c(long v);
GeneralizedFunction pow(const GeneralizedFunction& f, int n);
} // namespace gf

} // namespace invlab
