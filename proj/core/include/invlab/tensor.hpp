#pragma once

#include "invlab/gfunc.hpp"

#include <cassert>
#include <string>
#include <vector>

namespace invlab {

// Dense tensor field of type (p,q) over the 4-dimensional phase space.
// Components are indexed by (i1..ip, j1..jq), each in 0..3, row-major.
template <class C>
class Tensor {
public:
    Tensor() : p_(0), q_(0), comp_(1) {}
    Tensor(int p, int q, bool skew = false)
        : p_(p), q_(q), skew_(skew), comp_(std::size_t(1) << (2 * (p + q))) {}

    int contravariant_order() const { return p_; }
    int covariant_order() const { return q_; }
    int order() const { return p_ + q_; }
    bool skew_flag() const { return skew_; }

    static std::size_t size_for(int order) { return std::size_t(1) << (2 * order); }
    std::size_t size() const { return comp_.size(); }

    const GFunc<C>& at(std::size_t flat) const { return comp_[flat]; }
    GFunc<C>& at(std::size_t flat) { return comp_[flat]; }

    template <class... Idx>
    const GFunc<C>& operator()(Idx... idx) const {
        return comp_[flatten({int(idx)...})];
    }
    template <class... Idx>
    GFunc<C>& operator()(Idx... idx) {
        return comp_[flatten({int(idx)...})];
    }

    std::size_t flatten(std::initializer_list<int> idx) const {
        assert(static_cast<int>(idx.size()) == order());
        std::size_t f = 0;
        for (int i : idx) f = (f << 2) | std::size_t(i);
        return f;
    }

    bool is_zero() const {
        for (const auto& c : comp_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const Tensor& o) const { return p_ == o.p_ && q_ == o.q_ && comp_ == o.comp_; }

    Tensor operator-() const {
        Tensor r(p_, q_, skew_);
        for (std::size_t i = 0; i < comp_.size(); ++i) r.comp_[i] = -comp_[i];
        return r;
    }
    Tensor& operator+=(const Tensor& o) {
        assert(p_ == o.p_ && q_ == o.q_);
        for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] += o.comp_[i];
        return r_self();
    }
    Tensor& operator-=(const Tensor& o) {
        assert(p_ == o.p_ && q_ == o.q_);
        for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] -= o.comp_[i];
        return r_self();
    }
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }

    friend Tensor operator*(const GFunc<C>& f, Tensor t) {
        for (auto& c : t.comp_) c = f * c;
        return t;
    }
    friend Tensor operator*(const FieldScalar& s, Tensor t) {
        for (auto& c : t.comp_) c = c * s;
        return t;
    }

    // Exact antisymmetry check under adjacent transpositions of the declared block.
    bool verify_skew() const;

private:
    int p_ = 0, q_ = 0;
    bool skew_ = false;
    std::vector<GFunc<C>> comp_;
    Tensor& r_self() { return *this; }
};

template <class C>
using VectorField = Tensor<C>;   // (1,0)

using XVector = Tensor<FieldScalar>;            // concrete (1,0)
using OneForm = Tensor<FieldScalar>;            // (0,1)
using Bivector = Tensor<FieldScalar>;           // (2,0) skew
using TwoForm = Tensor<FieldScalar>;            // (0,2) skew
using Trivector = Tensor<FieldScalar>;          // (3,0) skew
using ParamBivectorTensor = Tensor<AffineForm>; // (2,0) skew, parametric

// Fixed frame data: x = (q1,q2,p1,p2), canonical Poisson bivector P and the
// canonical symplectic matrix J_w = [[0,-I],[I,0]] with P o J_w = Id. The
// interior product contracts the LAST slot so that i_X omega = +dH comes out
// exactly with these conventions.
namespace frame {
Bivector canonical_poisson();
TwoForm canonical_symplectic();
} // namespace frame

Bivector make_bivector(const GeneralizedFunction& e12, const GeneralizedFunction& e13,
                       const GeneralizedFunction& e14, const GeneralizedFunction& e23,
                       const GeneralizedFunction& e24, const GeneralizedFunction& e34);
TwoForm make_two_form(const GeneralizedFunction& w12, const GeneralizedFunction& w13,
                      const GeneralizedFunction& w14, const GeneralizedFunction& w23,
                      const GeneralizedFunction& w24, const GeneralizedFunction& w34);

// Lie derivative of a (p,q) tensor along a vector field, component formula:
//   (L_X T)^I_J = X^k d_k T^I_J - sum_a (d_l X^{i_a}) T^{..l..}_J
//                + sum_b (d_{j_b} X^m) T^I_{..m..}
template <class C>
Tensor<C> lie_derivative(const XVector& X, const Tensor<C>& T);

// Scalar overload: L_X f = X^k d_k f.
template <class C>
GFunc<C> lie_scalar(const XVector& X, const GFunc<C>& f);

// Symmetric Schouten bracket of two bivectors, normalized so that
// [[P,P]]^{ijk} = 2 sum_l (P^{il} d_l P^{jk} + P^{jl} d_l P^{ki} + P^{kl} d_l P^{ij}).
Trivector schouten_bracket(const Bivector& A, const Bivector& B);

// (U ^ V)^{ij} = U^i V^j - U^j V^i.
Bivector wedge(const XVector& U, const XVector& V);

// Wedge of two 2-forms -> (0,4); shuffle convention, so (w ^ w)_{1234} = 2 Pf(w).
Tensor<FieldScalar> form_wedge(const TwoForm& A, const TwoForm& B);

// Interior product contracting the last slot of a k-form, k in {2,4}.
Tensor<FieldScalar> interior_product(const XVector& X, const Tensor<FieldScalar>& w);

// Exterior derivative of a k-form, k in {0,1,2,3}; d o d = 0.
Tensor<FieldScalar> exterior_derivative(const Tensor<FieldScalar>& w);

// N^i_j = sum_k A^{ik} w_{kj} as a (1,1) tensor, plus its trace.
struct ComposeResult {
    Tensor<FieldScalar> n;          // (1,1)
    GeneralizedFunction trace;
};
ComposeResult compose_trace(const Bivector& A, const TwoForm& w);

// Pfaffian A12 A34 - A13 A24 + A14 A23 and generic rank (0, 2 or 4).
struct PfaffianRank {
    GeneralizedFunction pfaffian;
    int generic_rank;
};
PfaffianRank pfaffian_rank(const Tensor<FieldScalar>& A);

// (A df)^i = sum_j A^{ij} (df)_j.
XVector bivector_apply(const Bivector& A, const OneForm& df);

// Pretty-printer: one "T[i,j] = ..." line per independent component.
std::string print_tensor(const Tensor<FieldScalar>& T, const std::string& name);

extern template class Tensor<FieldScalar>;
extern template class Tensor<AffineForm>;
extern template Tensor<FieldScalar> lie_derivative(const XVector&, const Tensor<FieldScalar>&);
extern template Tensor<AffineForm> lie_derivative(const XVector&, const Tensor<AffineForm>&);
extern template GFunc<FieldScalar> lie_scalar(const XVector&, const GFunc<FieldScalar>&);

} // namespace invlab
