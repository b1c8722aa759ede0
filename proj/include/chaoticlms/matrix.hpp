#pragma once

// Small dense square matrices. Filter orders here stay in the hundreds, so
// O(n^2) storage and O(n^3) solves are fine.

#include <cstddef>
#include <span>
#include <vector>

namespace chaoticlms {

struct Matrix {
    std::size_t n = 0;
    std::vector<double> a; // row-major n*n

    Matrix() = default;
    explicit Matrix(std::size_t n_, double diag = 0.0) : n(n_), a(n_ * n_, 0.0) {
        for (std::size_t i = 0; i < n; ++i) at(i, i) = diag;
    }

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static Matrix identity(std::size_t n, double scale = 1.0) { return Matrix(n, scale); }
};

std::vector<double> mat_vec(const Matrix& m, std::span<const double> v);

// LU with partial pivoting; throws std::runtime_error on a singular system.
std::vector<double> solve_linear(Matrix a, std::vector<double> rhs);

} // namespace chaoticlms
