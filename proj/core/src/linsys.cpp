#include "invlab/linsys.hpp"

#include <set>

namespace invlab {

LinearSystem assemble(const XVector& X, const ParamBivector& pb) {
    LinearSystem sys;
    sys.ncols = pb.nparams;
    Tensor<AffineForm> L = lie_derivative(X, pb.tensor);
    std::set<std::pair<int, std::pair<int, int>>> functional;
    for (int c = 0; c < kSkewComponents; ++c) {
        auto [i, j] = kSkewIndex[c];
        for (const auto& [k, aff] : L(i, j).terms()) {
            SparseRow row;
            row.component = c;
            row.key = k;
            row.c = aff.constant();
            for (const auto& [t, coeff] : aff.linear()) row.a.emplace(t, coeff);
            if (row.a.empty() && row.c.is_zero()) continue;
            functional.insert({c, {k.exps[2], k.exps[3]}});
            sys.rows.push_back(std::move(row));
        }
    }
    sys.n_functional = static_cast<int>(functional.size());
    return sys;
}

namespace {

// Rational content of a set of field scalars: gcd of all numerators over lcm
// of all denominators, taken across both field components.
Rational content_of(const std::vector<const FieldScalar*>& vals) {
    Integer g = 0, l = 1;
    auto fold = [&](const Rational& r) {
        if (sgn(r) == 0) return;
        Integer num = abs(r.get_num());
        Integer den = r.get_den();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    };
    for (const FieldScalar* v : vals) {
        fold(v->rat());
        fold(v->surd());
    }
    if (sgn(g) == 0) return 1;
    Rational c(g, l);
    c.canonicalize();
    return c;
}

struct PivotRow {
    std::map<int, FieldScalar> a;
    FieldScalar c;
    int pivot_col = -1;
};

void scale_primitive(PivotRow& row) {
    std::vector<const FieldScalar*> vals;
    for (const auto& [col, v] : row.a) vals.push_back(&v);
    if (!row.c.is_zero()) vals.push_back(&row.c);
    if (vals.empty()) return;
    Rational cont = content_of(vals);
    FieldScalar scale(1 / cont);
    const FieldScalar* lead = row.a.empty() ? &row.c : &row.a.begin()->second;
    if (lead->lead_sign() < 0) scale = -scale;
    for (auto& [col, v] : row.a) v *= scale;
    row.c *= scale;
}

// row -= factor * pivot
void eliminate(PivotRow& row, const PivotRow& piv, const FieldScalar& factor) {
    if (factor.is_zero()) return;
    for (const auto& [col, v] : piv.a) {
        auto [it, fresh] = row.a.emplace(col, -(factor * v));
        if (!fresh) {
            it->second -= factor * v;
            if (it->second.is_zero()) row.a.erase(it);
        } else if (it->second.is_zero()) {
            row.a.erase(it);
        }
    }
    row.c -= factor * piv.c;
}

} // namespace

NullspaceBasis nullspace(const LinearSystem& sys) {
    NullspaceBasis out;
    out.rows = static_cast<int>(sys.rows.size());
    out.cols = sys.ncols;

    std::vector<PivotRow> pivots;           // sorted by pivot_col
    std::map<int, int> pivot_of_col;        // col -> index into pivots
    bool inhomogeneous = false;

    for (const SparseRow& in : sys.rows) {
        if (!in.c.is_zero()) inhomogeneous = true;
        PivotRow row{in.a, in.c, -1};
        // Eliminate every pivot column present in the row. Pivot rows carry
        // only their own pivot column plus free columns, so this terminates.
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = row.a.begin(); it != row.a.end(); ++it) {
                auto p = pivot_of_col.find(it->first);
                if (p == pivot_of_col.end()) continue;
                const PivotRow& piv = pivots[p->second];
                FieldScalar factor = it->second / piv.a.at(it->first);
                eliminate(row, piv, factor);
                changed = true;
                break;   // map iterators invalidated; rescan
            }
        }
        if (row.a.empty()) {
            if (!row.c.is_zero()) out.consistent = false;
            continue;
        }
        scale_primitive(row);
        row.pivot_col = row.a.begin()->first;
        // back-eliminate the new pivot from existing rows
        for (auto& piv : pivots) {
            auto hit = piv.a.find(row.pivot_col);
            if (hit == piv.a.end()) continue;
            FieldScalar factor = hit->second / row.a.at(row.pivot_col);
            eliminate(piv, row, factor);
            scale_primitive(piv);
        }
        pivot_of_col.clear();
        pivots.push_back(std::move(row));
        std::sort(pivots.begin(), pivots.end(),
                  [](const PivotRow& x, const PivotRow& y) { return x.pivot_col < y.pivot_col; });
        for (std::size_t i = 0; i < pivots.size(); ++i) pivot_of_col[pivots[i].pivot_col] = static_cast<int>(i);
    }

    out.rank = static_cast<int>(pivots.size());
    out.nullity = out.cols - out.rank;

    std::vector<bool> is_pivot(sys.ncols, false);
    for (const auto& piv : pivots) is_pivot[piv.pivot_col] = true;

    for (int free = 0; free < sys.ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldScalar> v(sys.ncols, FieldScalar(0));
        v[free] = FieldScalar(1);
        for (const auto& piv : pivots) {
            auto it = piv.a.find(free);
            if (it != piv.a.end()) v[piv.pivot_col] = -(it->second / piv.a.at(piv.pivot_col));
        }
        make_primitive(v);
        out.vectors.push_back(std::move(v));
    }

    if (inhomogeneous && out.consistent) {
        std::vector<FieldScalar> part(sys.ncols, FieldScalar(0));
        for (const auto& piv : pivots)
            part[piv.pivot_col] = -(piv.c / piv.a.at(piv.pivot_col));
        out.particular = std::move(part);
    }
    return out;
}

void make_primitive(std::vector<FieldScalar>& v) {
    std::vector<const FieldScalar*> vals;
    for (const auto& s : v)
        if (!s.is_zero()) vals.push_back(&s);
    if (vals.empty()) return;
    Rational cont = content_of(vals);
    FieldScalar scale(1 / cont);
    if (vals.front()->lead_sign() < 0) scale = -scale;
    for (auto& s : v) s *= scale;
}

std::optional<std::vector<FieldScalar>> solve_in_span(const std::vector<std::vector<FieldScalar>>& basis,
                                                      const std::vector<FieldScalar>& target) {
    if (basis.empty()) {
        for (const auto& s : target)
            if (!s.is_zero()) return std::nullopt;
        return std::vector<FieldScalar>{};
    }
    const std::size_t n = target.size();
    const std::size_t m = basis.size();
    // dense elimination on the transposed system [basis^T | target]
    std::vector<std::vector<FieldScalar>> M(n, std::vector<FieldScalar>(m + 1, FieldScalar(0)));
    for (std::size_t j = 0; j < m; ++j) {
        if (basis[j].size() != n) throw ConfigError("basis/target dimension mismatch");
        for (std::size_t i = 0; i < n; ++i) M[i][j] = basis[j][i];
    }
    for (std::size_t i = 0; i < n; ++i) M[i][m] = target[i];

    std::vector<int> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < n; ++col) {
        std::size_t sel = r;
        while (sel < n && M[sel][col].is_zero()) ++sel;
        if (sel == n) continue;
        std::swap(M[sel], M[r]);
        FieldScalar inv = M[r][col].inverse();
        for (std::size_t j = col; j <= m; ++j) M[r][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || M[i][col].is_zero()) continue;
            FieldScalar f = M[i][col];
            for (std::size_t j = col; j <= m; ++j) M[i][j] -= f * M[r][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++r;
    }
    // consistency: zero rows must have zero rhs
    for (std::size_t i = r; i < n; ++i)
        if (!M[i][m].is_zero()) return std::nullopt;
    std::vector<FieldScalar> coords(m, FieldScalar(0));
    for (std::size_t i = 0; i < r; ++i) coords[pivot_col_of_row[i]] = M[i][m];
    return coords;
}

} // namespace invlab
