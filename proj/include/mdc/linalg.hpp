#ifndef MDC_LINALG_HPP
#define MDC_LINALG_HPP

#include <utility>
#include <vector>

#include "mdc/rational.hpp"

namespace mdc {

// Sparse matrix over Q, stored by rows as sorted (column, value) pairs with
// nonzero values.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Rational>>> entries;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), entries(r) {}

    void add(int r, int c, const Rational& v);
    Rational get(int r, int c) const;
    bool is_zero() const;
};

// Rank over Q by fraction-exact Gaussian elimination with sparsity-aware
// pivoting (Markowitz-style: fewest nonzeros in row, then in column).
int rank(SparseMatrix m);

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace mdc

#endif
