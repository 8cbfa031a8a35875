// linear.hpp
// Tiny dense solver for the normal-equation systems in the regression code.
// Dimensions here are single digits; Gauss-Jordan with partial pivoting is
// plenty.

#pragma once

#include "copsig/errors.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace copsig::num {

struct LinearSolve {
    std::vector<double> x;                     // solution of A x = b
    std::vector<std::vector<double>> inverse;  // A^-1
};

inline LinearSolve solve_with_inverse(std::vector<std::vector<double>> a,
                                      std::vector<double> b) {
    const std::size_t k = b.size();
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1.0;

    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        require(std::fabs(a[pivot][col]) > 1e-300, ErrorCode::DegenerateRegressor,
                "linear solve: singular matrix");
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        std::swap(b[col], b[pivot]);

        const double d = a[col][col];
        for (std::size_t c = 0; c < k; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        b[col] /= d;

        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double factor = a[r][col];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < k; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    return {std::move(b), std::move(inv)};
}

} // namespace copsig::num
