#include "mdc/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mdc {

void SparseMatrix::add(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw std::out_of_range("SparseMatrix::add");
    if (v == 0) return;
    auto& row = entries[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != row.end() && it->first == c) {
        it->second += v;
        if (it->second == 0) row.erase(it);
    } else {
        row.insert(it, {c, v});
    }
}

Rational SparseMatrix::get(int r, int c) const {
    const auto& row = entries[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    return (it != row.end() && it->first == c) ? it->second : Rational(0);
}

bool SparseMatrix::is_zero() const {
    for (const auto& row : entries)
        if (!row.empty()) return false;
    return true;
}

int rank(SparseMatrix m) {
    // Live rows as index lists per column count would be overkill at our
    // sizes; track column occupancy for pivot selection only.
    std::vector<char> row_done(m.rows, 0);
    std::vector<char> col_done(m.cols, 0);
    int r = 0;
    while (true) {
        std::vector<int> col_count(m.cols, 0);
        for (int i = 0; i < m.rows; ++i) {
            if (row_done[i]) continue;
            for (const auto& [c, v] : m.entries[i])
                if (!col_done[c]) ++col_count[c];
        }
        int best_row = -1, best_col = -1;
        long long best_score = -1;
        for (int i = 0; i < m.rows; ++i) {
            if (row_done[i] || m.entries[i].empty()) continue;
            long long nr = static_cast<long long>(m.entries[i].size());
            for (const auto& [c, v] : m.entries[i]) {
                long long score = (nr - 1) * (col_count[c] - 1);
                if (best_score < 0 || score < best_score) {
                    best_score = score;
                    best_row = i;
                    best_col = c;
                }
            }
        }
        if (best_row < 0) break;
        ++r;
        row_done[best_row] = 1;
        col_done[best_col] = 1;
        Rational pivot = m.get(best_row, best_col);
        std::vector<std::pair<int, Rational>> prow = m.entries[best_row];
        for (int i = 0; i < m.rows; ++i) {
            if (row_done[i]) continue;
            Rational x = m.get(i, best_col);
            if (x == 0) continue;
            Rational f = -x / pivot;
            // row_i += f * pivot_row (sorted merge)
            std::vector<std::pair<int, Rational>> merged;
            merged.reserve(m.entries[i].size() + prow.size());
            auto a = m.entries[i].begin(), ae = m.entries[i].end();
            auto b = prow.begin(), be = prow.end();
            while (a != ae || b != be) {
                if (b == be || (a != ae && a->first < b->first)) {
                    merged.push_back(*a++);
                } else if (a == ae || b->first < a->first) {
                    merged.emplace_back(b->first, f * b->second);
                    ++b;
                } else {
                    Rational v = a->second + f * b->second;
                    if (v != 0) merged.emplace_back(a->first, std::move(v));
                    ++a, ++b;
                }
            }
            m.entries[i] = std::move(merged);
        }
        m.entries[best_row].clear();
    }
    return r;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("multiply: shape mismatch");
    SparseMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        std::map<int, Rational> acc;
        for (const auto& [k, av] : a.entries[i])
            for (const auto& [j, bv] : b.entries[k]) acc[j] += av * bv;
        for (auto& [j, v] : acc)
            if (v != 0) out.entries[i].emplace_back(j, std::move(v));
    }
    return out;
}

}  // namespace mdc
