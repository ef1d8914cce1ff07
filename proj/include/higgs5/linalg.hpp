#pragma once

#include "higgs5/rational.hpp"

#include <optional>
#include <vector>

namespace higgs5 {

/// Dense rational matrix, row major. Only the small exact eliminations this
/// project needs (nullspaces and solves on systems of size <= ~14).
using QMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<size_t> rref(QMatrix& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Basis of the right nullspace of m (n columns), echelonized with the free
/// variable set to 1 (deterministic basis, ordered by free column).
inline std::vector<std::vector<Rational>> nullspace(QMatrix m, size_t cols) {
    for (auto& row : m)
        if (row.size() != cols) throw DomainError("ragged matrix");
    std::vector<size_t> piv = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : piv) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) {
            size_t c = piv[i];
            // row i reads x_c + sum coeff * x_free = 0
            v[c] = -m[i][f];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve m x = rhs; returns empty optional when inconsistent. When the
/// system is underdetermined the free variables are set to 0.
inline std::optional<std::vector<Rational>> solve(QMatrix m, std::vector<Rational> rhs) {
    size_t cols = m.empty() ? 0 : m[0].size();
    for (size_t i = 0; i < m.size(); ++i) m[i].push_back(rhs[i]);
    std::vector<size_t> piv = rref(m);
    // inconsistent if a pivot lands in the rhs column
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][cols];
    return x;
}

} // namespace higgs5
