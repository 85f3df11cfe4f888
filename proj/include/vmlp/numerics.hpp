#pragma once

#include <functional>
#include <span>
#include <vector>

namespace vmlp {

// Dense row-major matrix. Small (n <= 16 throughout the project), so no
// attempt at BLAS-grade performance.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);
    Matrix(int rows, int cols, std::vector<double> entries);
    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
    double at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::span<const double> entries() const { return entries_; }

    Matrix transposed() const;
    std::vector<double> apply(std::span<const double> x) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> entries_;
};

// Partial-pivot LU with a relative pivot threshold. `rank` counts pivots with
// |pivot| >= tol * max|entry|; the packed factors are only meaningful when
// the matrix is full rank (solve refuses otherwise).
struct LuFactorization {
    Matrix lu;
    std::vector<int> row_swaps; // step k swapped row k with row_swaps[k]
    int rank = 0;
    double abs_det = 0.0; // 0 when singular
    bool singular = true;
    double tol = 0.0;
};

LuFactorization lu_factorize(const Matrix& m, double tol = 1e-9);

// Solves M x = b for a non-singular factorization. Throws NumericError when
// the factorization is singular so the caller can pick a fallback.
std::vector<double> solve(const LuFactorization& f, std::span<const double> b);

struct LeastSquaresSolution {
    std::vector<double> x;
    double residual = 0.0; // Euclidean norm of M x - b
};

// Minimizes |M x - b| via the normal equations (fine at n <= 16). The Gram
// system is always consistent, so rank-deficient columns are pinned to zero
// and the returned x is an exact minimizer up to roundoff.
LeastSquaresSolution solve_least_squares(const Matrix& m, std::span<const double> b,
                                         double tol = 1e-12);

// Component i = (f(x + h e_i) - f(x - h e_i)) / 2h. The oracle used by the
// backpropagation tests.
std::vector<double> central_difference_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> x,
    double h = 1e-5);

} // namespace vmlp
