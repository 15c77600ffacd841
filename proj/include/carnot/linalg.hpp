#ifndef CARNOT_LINALG_HPP
#define CARNOT_LINALG_HPP

#include <optional>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

// Exact elimination over the rationals. Matrices are dense row-major and tiny
// (dimensions bounded by the algebra dimension), so no pivoting heuristics.

using RatMatrix = std::vector<std::vector<Rational>>;

// Reduces `m` to row echelon form in place; returns the pivot column indices.
inline std::vector<int> row_echelon(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(RatMatrix m) { return static_cast<int>(row_echelon(m).size()); }

// Solves sum_j x_j * cols[j] = rhs exactly. Returns the particular solution
// with all non-pivot variables set to zero, or nullopt if inconsistent.
inline std::optional<std::vector<Rational>> solve_columns(const std::vector<std::vector<Rational>>& cols,
                                                          const std::vector<Rational>& rhs) {
    const int n = static_cast<int>(rhs.size());
    const int k = static_cast<int>(cols.size());
    RatMatrix aug(n, std::vector<Rational>(k + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) aug[i][j] = cols[j][i];
        aug[i][k] = rhs[i];
    }
    std::vector<int> pivots = row_echelon(aug);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;  // pivot in rhs column
    std::vector<Rational> x(k, Rational(0));
    for (int i = static_cast<int>(pivots.size()) - 1; i >= 0; --i) {
        int c = pivots[i];
        Rational acc = aug[i][k];
        for (int j = c + 1; j < k; ++j)
            if (x[j] != 0) acc -= aug[i][j] * x[j];
        x[c] = acc / aug[i][c];
    }
    return x;
}

}  // namespace carnot

#endif
