#include "invlab/tensor.hpp"

#include <sstream>

namespace invlab {

template <class C>
bool Tensor<C>::verify_skew() const {
    if (!skew_ || order() < 2) return true;
    // Antisymmetry under swapping any pair of slots within the declared block.
    const int n = order();
    std::vector<int> idx(n, 0);
    while (true) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                std::vector<int> sw = idx;
                std::swap(sw[a], sw[b]);
                std::size_t fa = 0, fb = 0;
                for (int v : idx) fa = (fa << 2) | std::size_t(v);
                for (int v : sw) fb = (fb << 2) | std::size_t(v);
                if (!(comp_[fa] + comp_[fb]).is_zero()) return false;
            }
        int c = n - 1;
        while (c >= 0 && idx[c] == 3) idx[c--] = 0;
        if (c < 0) break;
        ++idx[c];
    }
    return true;
}

namespace frame {

Bivector canonical_poisson() {
    Bivector P(2, 0, true);
    P(0, 2) = gf::c(1);
    P(1, 3) = gf::c(1);
    P(2, 0) = gf::c(-1);
    P(3, 1) = gf::c(-1);
    return P;
}

TwoForm canonical_symplectic() {
    TwoForm w(0, 2, true);
    w(0, 2) = gf::c(-1);
    w(1, 3) = gf::c(-1);
    w(2, 0) = gf::c(1);
    w(3, 1) = gf::c(1);
    return w;
}

} // namespace frame

namespace {

template <class T>
T from_upper(const GeneralizedFunction& e12, const GeneralizedFunction& e13,
             const GeneralizedFunction& e14, const GeneralizedFunction& e23,
             const GeneralizedFunction& e24, const GeneralizedFunction& e34, int p, int q) {
    T t(p, q, true);
    const GeneralizedFunction* up[4][4] = {};
    up[0][1] = &e12; up[0][2] = &e13; up[0][3] = &e14;
    up[1][2] = &e23; up[1][3] = &e24; up[2][3] = &e34;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            t(i, j) = *up[i][j];
            t(j, i) = -*up[i][j];
        }
    return t;
}

} // namespace

Bivector make_bivector(const GeneralizedFunction& e12, const GeneralizedFunction& e13,
                       const GeneralizedFunction& e14, const GeneralizedFunction& e23,
                       const GeneralizedFunction& e24, const GeneralizedFunction& e34) {
    return from_upper<Bivector>(e12, e13, e14, e23, e24, e34, 2, 0);
}

TwoForm make_two_form(const GeneralizedFunction& w12, const GeneralizedFunction& w13,
                      const GeneralizedFunction& w14, const GeneralizedFunction& w23,
                      const GeneralizedFunction& w24, const GeneralizedFunction& w34) {
    return from_upper<TwoForm>(w12, w13, w14, w23, w24, w34, 0, 2);
}

namespace {

// Multiplication of a C-valued function by a concrete function; for C =
// AffineForm the concrete factor is lifted to constant affine coefficients.
template <class C>
GFunc<C> lift_mul(const GFunc<C>& f, const GeneralizedFunction& g);

template <>
GFunc<FieldScalar> lift_mul(const GFunc<FieldScalar>& f, const GeneralizedFunction& g) {
    return f * g;
}

template <>
GFunc<AffineForm> lift_mul(const GFunc<AffineForm>& f, const GeneralizedFunction& g) {
    return f * to_affine(g);
}

} // namespace

template <class C>
GFunc<C> lie_scalar(const XVector& X, const GFunc<C>& f) {
    GFunc<C> r;
    for (int k = 0; k < kDim; ++k) r += lift_mul(f.derive(k), X(k));
    return r;
}

template <class C>
Tensor<C> lie_derivative(const XVector& X, const Tensor<C>& T) {
    const int p = T.contravariant_order(), q = T.covariant_order();
    const int n = p + q;
    if (n == 0) {
        Tensor<C> r(0, 0);
        GFunc<C> acc;
        for (int k = 0; k < kDim; ++k) acc += lift_mul(T.at(0).derive(k), X(k));
        r.at(0) = acc;
        return r;
    }
    // Partial derivative tables of the field components.
    std::array<GeneralizedFunction, kDim * kDim> dX;   // dX[l*4+i] = d_l X^i
    for (int l = 0; l < kDim; ++l)
        for (int i = 0; i < kDim; ++i) dX[std::size_t(l) * kDim + i] = X(i).derive(l);

    Tensor<C> R(p, q, T.skew_flag());
    std::vector<int> idx(n, 0);
    while (true) {
        std::size_t flat = 0;
        for (int v : idx) flat = (flat << 2) | std::size_t(v);
        GFunc<C> acc;
        for (int k = 0; k < kDim; ++k) acc += lift_mul(T.at(flat).derive(k), X(k));
        // contravariant slots: - (d_l X^{i_a}) T^{..l..}
        for (int a = 0; a < p; ++a) {
            const int ia = idx[a];
            for (int l = 0; l < kDim; ++l) {
                std::vector<int> jdx = idx;
                jdx[a] = l;
                std::size_t jf = 0;
                for (int v : jdx) jf = (jf << 2) | std::size_t(v);
                acc -= lift_mul(T.at(jf), dX[std::size_t(l) * kDim + ia]);
            }
        }
        // covariant slots: + (d_{j_b} X^m) T_{..m..}
        for (int b = 0; b < q; ++b) {
            const int jb = idx[p + b];
            for (int m = 0; m < kDim; ++m) {
                std::vector<int> jdx = idx;
                jdx[p + b] = m;
                std::size_t jf = 0;
                for (int v : jdx) jf = (jf << 2) | std::size_t(v);
                acc += lift_mul(T.at(jf), dX[std::size_t(jb) * kDim + m]);
            }
        }
        R.at(flat) = acc;
        int c = n - 1;
        while (c >= 0 && idx[c] == 3) idx[c--] = 0;
        if (c >= 0) ++idx[c]; else break;
    }
    return R;
}

Trivector schouten_bracket(const Bivector& A, const Bivector& B) {
    if (!A.skew_flag() || !B.skew_flag() || A.contravariant_order() != 2 || B.contravariant_order() != 2)
        throw ConfigError("schouten_bracket requires skew bivectors");
    // dA[l][i][j], dB[l][i][j]
    std::array<GeneralizedFunction, 4 * 16> dA, dB;
    for (int l = 0; l < 4; ++l)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                dA[std::size_t(l) * 16 + std::size_t(i) * 4 + j] = A(i, j).derive(l);
                dB[std::size_t(l) * 16 + std::size_t(i) * 4 + j] = B(i, j).derive(l);
            }
    auto da = [&](int l, int i, int j) -> const GeneralizedFunction& {
        return dA[std::size_t(l) * 16 + std::size_t(i) * 4 + j];
    };
    auto db = [&](int l, int i, int j) -> const GeneralizedFunction& {
        return dB[std::size_t(l) * 16 + std::size_t(i) * 4 + j];
    };
    Trivector R(3, 0, true);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) {
                GeneralizedFunction acc;
                for (int l = 0; l < 4; ++l) {
                    acc += A(i, l) * db(l, j, k) + A(j, l) * db(l, k, i) + A(k, l) * db(l, i, j);
                    acc += B(i, l) * da(l, j, k) + B(j, l) * da(l, k, i) + B(k, l) * da(l, i, j);
                }
                // fill all permutations of (i,j,k)
                const int perm[6][3] = {{i, j, k}, {j, k, i}, {k, i, j}, {j, i, k}, {i, k, j}, {k, j, i}};
                for (int t = 0; t < 6; ++t) {
                    GeneralizedFunction v = t < 3 ? acc : -acc;
                    R(perm[t][0], perm[t][1], perm[t][2]) = v;
                }
            }
    return R;
}

Bivector wedge(const XVector& U, const XVector& V) {
    Bivector R(2, 0, true);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) R(i, j) = U(i) * V(j) - U(j) * V(i);
    return R;
}

Tensor<FieldScalar> form_wedge(const TwoForm& A, const TwoForm& B) {
    Tensor<FieldScalar> R(0, 4, true);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    R(i, j, k, l) = A(i, j) * B(k, l) - A(i, k) * B(j, l) + A(i, l) * B(j, k)
                                  + A(k, l) * B(i, j) - A(j, l) * B(i, k) + A(j, k) * B(i, l);
                }
    return R;
}

Tensor<FieldScalar> interior_product(const XVector& X, const Tensor<FieldScalar>& w) {
    const int q = w.covariant_order();
    if (w.contravariant_order() != 0 || (q != 2 && q != 4))
        throw ConfigError("interior_product expects a 2-form or 4-form");
    Tensor<FieldScalar> R(0, q - 1, q == 4);
    if (q == 2) {
        for (int j = 0; j < 4; ++j) {
            GeneralizedFunction acc;
            for (int i = 0; i < 4; ++i) acc += w(j, i) * X(i);
            R(j) = acc;
        }
        return R;
    }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                GeneralizedFunction acc;
                for (int i = 0; i < 4; ++i) acc += w(a, b, c, i) * X(i);
                R(a, b, c) = acc;
            }
    return R;
}

Tensor<FieldScalar> exterior_derivative(const Tensor<FieldScalar>& w) {
    if (w.contravariant_order() != 0) throw ConfigError("exterior_derivative expects a form");
    const int k = w.covariant_order();
    if (k > 3) throw ConfigError("exterior_derivative defined for k <= 3");
    Tensor<FieldScalar> R(0, k + 1, true);
    std::vector<int> idx(k + 1, 0);
    while (true) {
        GeneralizedFunction acc;
        for (int a = 0; a <= k; ++a) {
            // drop slot a, differentiate along idx[a]
            std::size_t jf = 0;
            for (int b = 0; b <= k; ++b) {
                if (b == a) continue;
                jf = (jf << 2) | std::size_t(idx[b]);
            }
            GeneralizedFunction d = w.at(jf).derive(idx[a]);
            acc += (a % 2 == 0) ? d : -d;
        }
        std::size_t flat = 0;
        for (int v : idx) flat = (flat << 2) | std::size_t(v);
        R.at(flat) = acc;
        int c = k;
        while (c >= 0 && idx[c] == 3) idx[c--] = 0;
        if (c >= 0) ++idx[c]; else break;
    }
    return R;
}

ComposeResult compose_trace(const Bivector& A, const TwoForm& w) {
    ComposeResult res{Tensor<FieldScalar>(1, 1), GeneralizedFunction{}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            GeneralizedFunction acc;
            for (int k = 0; k < 4; ++k) acc += A(i, k) * w(k, j);
            res.n(i, j) = acc;
        }
    for (int i = 0; i < 4; ++i) res.trace += res.n(i, i);
    return res;
}

PfaffianRank pfaffian_rank(const Tensor<FieldScalar>& A) {
    if (A.order() != 2) throw ConfigError("pfaffian_rank expects a 4x4 skew tensor");
    GeneralizedFunction pf = A(0, 1) * A(2, 3) - A(0, 2) * A(1, 3) + A(0, 3) * A(1, 2);
    int rank = 0;
    if (!pf.is_zero()) rank = 4;
    else if (!A.is_zero()) rank = 2;
    return {pf, rank};
}

XVector bivector_apply(const Bivector& A, const OneForm& df) {
    XVector R(1, 0);
    for (int i = 0; i < 4; ++i) {
        GeneralizedFunction acc;
        for (int j = 0; j < 4; ++j) acc += A(i, j) * df(j);
        R(i) = acc;
    }
    return R;
}

std::string print_tensor(const Tensor<FieldScalar>& T, const std::string& name) {
    std::ostringstream os;
    const int n = T.order();
    if (n == 0) {
        os << name << " = " << serialize(T.at(0)) << "\n";
        return os.str();
    }
    std::vector<int> idx(n, 0);
    while (true) {
        bool print = true;
        if (T.skew_flag()) {
            for (int a = 0; a + 1 < n; ++a)
                if (idx[a] >= idx[a + 1]) print = false;
        }
        std::size_t flat = 0;
        for (int v : idx) flat = (flat << 2) | std::size_t(v);
        if (print && !(T.skew_flag() && T.at(flat).is_zero())) {
            os << name << "[";
            for (int a = 0; a < n; ++a) os << (a ? "," : "") << idx[a] + 1;
            os << "] = " << serialize(T.at(flat)) << "\n";
        }
        int c = n - 1;
        while (c >= 0 && idx[c] == 3) idx[c--] = 0;
        if (c >= 0) ++idx[c]; else break;
    }
    return os.str();
}

template class Tensor<FieldScalar>;
template class Tensor<AffineForm>;
template Tensor<FieldScalar> lie_derivative(const XVector&, const Tensor<FieldScalar>&);
template Tensor<AffineForm> lie_derivative(const XVector&, const Tensor<AffineForm>&);
template GFunc<FieldScalar> lie_scalar(const XVector&, const GFunc<FieldScalar>&);

} // namespace invlab
