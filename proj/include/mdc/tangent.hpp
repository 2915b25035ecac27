#ifndef MDC_TANGENT_HPP
#define MDC_TANGENT_HPP

#include <optional>
#include <vector>

#include "mdc/rational.hpp"

namespace mdc {

// r+1 multisets of rationals, each of size d: the roots of a tuple of monic
// degree-d polynomials. The predicates below are rank conditions, invariant
// under field extension, so certifying them over Q is faithful.
struct RootTuple {
    std::vector<std::vector<Rational>> roots;  // roots[i] = R_i

    int r() const { return static_cast<int>(roots.size()) - 1; }
    int d() const { return roots.empty() ? 0 : static_cast<int>(roots[0].size()); }
    void validate() const;  // throws std::invalid_argument
};

// The tangent vector (-sum R_0, ..., -sum R_r) at [1:...:1], to be read
// modulo the diagonal span(1,...,1).
std::vector<Rational> derivative_at_marked_point(const RootTuple& t);

bool equal_mod_diagonal(const std::vector<Rational>& a, const std::vector<Rational>& b);
bool zero_mod_diagonal(const std::vector<Rational>& v);

bool has_basepoint(const RootTuple& t);

// A basepoint-free preimage of v (length r+1, read mod diagonal) under
// derivative_at_marked_point; nullopt exactly when d = 1 and v = 0.
std::optional<RootTuple> fiber_witness(const std::vector<Rational>& v, int d);

// m vectors in Q^dim.
struct TangentVectorList {
    std::vector<std::vector<Rational>> vectors;
};

// True iff some a in ker(v_1 | ... | v_m) has all coordinates nonzero,
// i.e. the kernel lies in no coordinate hyperplane; decided by m rank
// comparisons.
bool has_nonvanishing_dependency(const TangentVectorList& v);

}  // namespace mdc

#endif
