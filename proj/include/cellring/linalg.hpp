#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cellring {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Maximum absolute row sum.
double infinity_norm(const Matrix& m);

/// Solves A x = b by LU with partial pivoting. Throws SingularJacobian when a
/// pivot falls below `pivot_tol` times the largest entry of A.
std::vector<double> lu_solve(Matrix a, std::vector<double> b, double pivot_tol = 1e-13);

} // namespace cellring
