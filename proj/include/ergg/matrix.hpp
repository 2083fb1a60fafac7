// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "ergg/error.hpp"

namespace ergg {

/// Row-major dense matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    [[nodiscard]] double row_sum(std::size_t i) const
    {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) {
            s += (*this)(i, j);
        }
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Solves a·x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(Matrix a, std::vector<double> b)
{
    std::size_t const n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i) {
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) {
                piv = i;
            }
        }
        if (std::abs(a(piv, col)) < 1e-300) {
            throw DegenerateChainError("singular linear system");
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
            }
            std::swap(b[piv], b[col]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            double const f = a(i, col) / a(col, col);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                a(i, j) -= f * a(col, j);
            }
            b[i] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            s -= a(i, j) * x[j];
        }
        x[i] = s / a(i, i);
    }
    return x;
}

/// Stationary law of a row-stochastic matrix: solves πP = π, Σπ = 1.
inline std::vector<double> solve_stationary(Matrix const& p)
{
    std::size_t const n = p.rows();
    Matrix a(n, n);
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = p(j, i) - (i == j ? 1.0 : 0.0);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        a(n - 1, j) = 1.0;
    }
    b[n - 1] = 1.0;
    return solve_linear(std::move(a), std::move(b));
}

}  // namespace ergg
