#pragma once

#include "invlab/ansatz.hpp"

#include <map>
#include <optional>
#include <vector>

namespace invlab {

// One scalar equation sum_t a_t u_t + c = 0 obtained by coefficient collection.
struct SparseRow {
    std::map<int, FieldScalar> a;
    FieldScalar c;
    int component = 0;        // originating skew component 0..5
    MonomialKey key;          // collected basis key
};

struct LinearSystem {
    int ncols = 0;
    std::vector<SparseRow> rows;
    int n_functional = 0;     // distinct (component, momentum-monomial) equations
};

// Collect L_X P' = 0 into exact scalar equations over the parameters.
LinearSystem assemble(const XVector& X, const ParamBivector& pb);

// Reduced row echelon solve with primitive (fraction-free) row scaling:
// rows are rescaled to integer content 1 with positive leading coefficient,
// pivots chosen at the smallest column index, input order fixed. Basis
// vectors are emitted per free column in ascending order, normalized to
// primitive integer form with the first nonzero entry positive.
struct NullspaceBasis {
    std::vector<std::vector<FieldScalar>> vectors;
    std::optional<std::vector<FieldScalar>> particular;   // present iff inhomogeneous & consistent
    bool consistent = true;
    int rows = 0;
    int cols = 0;
    int rank = 0;
    int nullity = 0;
};

NullspaceBasis nullspace(const LinearSystem& sys);

// Exact span membership: coordinates of target in span{basis} or nullopt.
std::optional<std::vector<FieldScalar>> solve_in_span(const std::vector<std::vector<FieldScalar>>& basis,
                                                      const std::vector<FieldScalar>& target);

// Scale a vector to primitive integer form, first nonzero entry positive.
void make_primitive(std::vector<FieldScalar>& v);

} // namespace invlab
