#pragma once

#include "wk/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wk {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Fraction-free Gaussian elimination (Bareiss). Every intermediate division is exact.
inline Rational det_bareiss(Matrix<Rational> m) {
    const std::size_t n = m.size();
    if (n == 0) return Rational(1);
    for (auto& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
    int sign = 1;
    Rational prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return Rational(0);
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = Rational(0);
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Division-free Laplace expansion with memoization over column subsets, for
// commutative rings without exact division (polynomials, series). O(2^n n).
template <class R>
R det_laplace(const Matrix<R>& m, const R& zero, const R& one) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    if (n > 24) throw std::invalid_argument("Laplace determinant too large");
    for (auto& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
    // dp[mask]: determinant of rows [0, popcount(mask)) restricted to columns in mask.
    std::vector<R> dp(std::size_t{1} << n, zero);
    std::vector<bool> live(dp.size(), false);
    dp[0] = one;
    live[0] = true;
    for (std::uint32_t mask = 0; mask < dp.size(); ++mask) {
        if (!live[mask]) continue;
        std::size_t row = static_cast<std::size_t>(__builtin_popcount(mask));
        if (row == n) continue;
        int above = 0;  // set columns greater than c, tracked from the top
        for (int c = static_cast<int>(n) - 1; c >= 0; --c) {
            std::uint32_t bit = 1u << c;
            if (mask & bit) { ++above; continue; }
            const R& entry = m[row][static_cast<std::size_t>(c)];
            R term = dp[mask] * entry;
            if (above % 2) dp[mask | bit] -= term;
            else dp[mask | bit] += term;
            live[mask | bit] = true;
        }
    }
    return dp.back();
}

} // namespace wk
