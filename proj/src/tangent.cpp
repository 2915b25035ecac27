#include "mdc/tangent.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mdc/linalg.hpp"

namespace mdc {

void RootTuple::validate() const {
    if (roots.size() < 2) throw std::invalid_argument("RootTuple: need r >= 1");
    for (const auto& ri : roots)
        if (ri.size() != roots[0].size() || ri.empty())
            throw std::invalid_argument("RootTuple: all R_i must have size d >= 1");
}

std::vector<Rational> derivative_at_marked_point(const RootTuple& t) {
    t.validate();
    std::vector<Rational> out;
    for (const auto& ri : t.roots) {
        Rational s = 0;
        for (const auto& y : ri) s += y;
        out.push_back(-s);
    }
    return out;
}

bool equal_mod_diagonal(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("equal_mod_diagonal: size mismatch");
    Rational c = a[0] - b[0];
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] - b[i] != c) return false;
    return true;
}

bool zero_mod_diagonal(const std::vector<Rational>& v) {
    return equal_mod_diagonal(v, std::vector<Rational>(v.size(), Rational(0)));
}

bool has_basepoint(const RootTuple& t) {
    t.validate();
    std::set<Rational> common(t.roots[0].begin(), t.roots[0].end());
    for (size_t i = 1; i < t.roots.size() && !common.empty(); ++i) {
        std::set<Rational> ri(t.roots[i].begin(), t.roots[i].end());
        std::set<Rational> next;
        for (const auto& y : common)
            if (ri.count(y)) next.insert(y);
        common = std::move(next);
    }
    return !common.empty();
}

std::optional<RootTuple> fiber_witness(const std::vector<Rational>& v, int d) {
    if (d < 1 || v.size() < 2) throw std::invalid_argument("fiber_witness: need d >= 1, r >= 1");
    int r1 = static_cast<int>(v.size());
    RootTuple t;
    t.roots.resize(r1);
    if (d == 1) {
        if (zero_mod_diagonal(v)) return std::nullopt;
        // Singletons with the prescribed sums; basepoint-free because the v_i
        // are not all equal.
        for (int i = 0; i < r1; ++i) t.roots[i] = {-v[i]};
        return t;
    }
    // Plant d-1 values in disjoint ranges per i, close with the sum.
    const Rational P = 1000 * (d + 1);
    for (int i = 0; i < r1; ++i) {
        Rational sum = 0;
        for (int j = 1; j < d; ++j) {
            Rational x = Rational(i + 1) * P + j;
            t.roots[i].push_back(x);
            sum += x;
        }
        t.roots[i].push_back(-v[i] - sum);
    }
    // Perturb R_0 preserving its sum until no common root remains.
    Rational a0 = t.roots[0][0], a1 = t.roots[0][1];
    for (int q = 2; has_basepoint(t); ++q) {
        if (q > 1000) throw std::logic_error("fiber_witness: perturbation failed");
        Rational eps = Rational(1) / q;
        t.roots[0][0] = a0 + eps;
        t.roots[0][1] = a1 - eps;
    }
    return t;
}

bool has_nonvanishing_dependency(const TangentVectorList& v) {
    int m = static_cast<int>(v.vectors.size());
    if (m < 1) throw std::invalid_argument("has_nonvanishing_dependency: need m >= 1");
    size_t dim = v.vectors[0].size();
    if (dim < 1) throw std::invalid_argument("has_nonvanishing_dependency: need dim >= 1");
    for (const auto& vec : v.vectors)
        if (vec.size() != dim)
            throw std::invalid_argument("has_nonvanishing_dependency: ragged vectors");
    auto build = [&](int skip) {
        SparseMatrix a(static_cast<int>(dim), skip < 0 ? m : m - 1);
        int col = 0;
        for (int i = 0; i < m; ++i) {
            if (i == skip) continue;
            for (size_t j = 0; j < dim; ++j) a.add(static_cast<int>(j), col, v.vectors[i][j]);
            ++col;
        }
        return a;
    };
    int full = rank(build(-1));
    for (int i = 0; i < m; ++i)
        if (rank(build(i)) != full) return false;
    return true;
}

}  // namespace mdc
