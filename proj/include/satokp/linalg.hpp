#pragma once

#include "satokp/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace satokp {

using RatRow = std::vector<Rational>;
using RatMat = std::vector<RatRow>;

// In-place reduced row echelon form; returns the pivot column of each
// surviving nonzero row, in order.
inline std::vector<std::size_t> rref(RatMat &m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rational inv = m[row][col].inverse();
        for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row); // drop zero rows
    return pivots;
}

inline std::size_t rank(RatMat m) { return rref(m).size(); }

// Basis of the right nullspace (vectors v with M v = 0).
inline std::vector<RatRow> nullspace(RatMat m) {
    if (m.empty()) return {};
    std::size_t cols = m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatRow> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatRow v(cols, Rational::zero());
        v[free] = Rational::one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve M x = b; nullopt when inconsistent. Free variables are set to zero.
inline std::optional<RatRow> solve(RatMat m, RatRow b) {
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    for (std::size_t r = 0; r < rows; ++r) m[r].push_back(b[r]);
    auto pivots = rref(m);
    RatRow x(cols, Rational::zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt; // pivot in the rhs column
        x[pivots[r]] = m[r][cols];
    }
    return x;
}

} // namespace satokp
