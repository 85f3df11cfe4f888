#include "vmlp/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "vmlp/errors.hpp"

namespace vmlp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
    entries_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
    require(entries_.size() == static_cast<std::size_t>(rows) * cols,
            "matrix entries length " + std::to_string(entries_.size()) + " does not match " +
                std::to_string(rows) + "x" + std::to_string(cols));
    for (double x : entries_) {
        require(std::isfinite(x), "matrix entries must be finite");
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    }
    return t;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
    require(static_cast<int>(x.size()) == cols_, "matrix-vector size mismatch");
    std::vector<double> y(static_cast<std::size_t>(rows_), 0.0);
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (int c = 0; c < cols_; ++c) acc += at(r, c) * x[static_cast<std::size_t>(c)];
        y[static_cast<std::size_t>(r)] = acc;
    }
    return y;
}

LuFactorization lu_factorize(const Matrix& m, double tol) {
    require(m.rows() == m.cols(), "lu_factorize needs a square matrix, got " +
                                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    require(tol > 0.0, "pivot tolerance must be positive");

    const int n = m.rows();
    LuFactorization f;
    f.lu = m;
    f.row_swaps.assign(static_cast<std::size_t>(n), 0);
    f.tol = tol;

    const double threshold = tol * max_abs(m.entries());
    Matrix& a = f.lu;
    int row = 0;
    double det = 1.0;
    // Echelon-style elimination: a column without an acceptable pivot is
    // skipped, which keeps the rank count correct for singular input. In the
    // full-rank case this is exactly packed LU with partial pivoting.
    for (int col = 0; col < n && row < n; ++col) {
        int pivot_row = row;
        for (int r = row + 1; r < n; ++r) {
            if (std::abs(a.at(r, col)) > std::abs(a.at(pivot_row, col))) pivot_row = r;
        }
        if (std::abs(a.at(pivot_row, col)) < threshold || threshold == 0.0) continue;
        if (pivot_row != row) {
            for (int c = 0; c < n; ++c) std::swap(a.at(row, c), a.at(pivot_row, c));
        }
        f.row_swaps[static_cast<std::size_t>(row)] = pivot_row;
        const double pivot = a.at(row, col);
        det *= pivot;
        for (int r = row + 1; r < n; ++r) {
            const double factor = a.at(r, col) / pivot;
            a.at(r, col) = factor;
            for (int c = col + 1; c < n; ++c) a.at(r, c) -= factor * a.at(row, c);
        }
        ++row;
    }
    f.rank = row;
    f.singular = f.rank < n;
    f.abs_det = f.singular ? 0.0 : std::abs(det);
    return f;
}

std::vector<double> solve(const LuFactorization& f, std::span<const double> b) {
    if (f.singular) throw NumericError("solve: matrix is singular (rank " +
                                       std::to_string(f.rank) + " of " +
                                       std::to_string(f.lu.cols()) + ")");
    const int n = f.lu.rows();
    require(static_cast<int>(b.size()) == n, "solve: right-hand side has wrong length");

    std::vector<double> x(b.begin(), b.end());
    for (int k = 0; k < n; ++k) {
        std::swap(x[static_cast<std::size_t>(k)],
                  x[static_cast<std::size_t>(f.row_swaps[static_cast<std::size_t>(k)])]);
    }
    // L has unit diagonal.
    for (int r = 1; r < n; ++r) {
        double acc = x[static_cast<std::size_t>(r)];
        for (int c = 0; c < r; ++c) acc -= f.lu.at(r, c) * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(r)] = acc;
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = x[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c) acc -= f.lu.at(r, c) * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(r)] = acc / f.lu.at(r, r);
    }
    return x;
}

LeastSquaresSolution solve_least_squares(const Matrix& m, std::span<const double> b, double tol) {
    require(static_cast<int>(b.size()) == m.rows(), "least squares: rhs has wrong length");
    require(tol > 0.0, "pivot tolerance must be positive");
    const int rows = m.rows();
    const int n = m.cols();

    // Normal equations G x = r with G = M^T M, r = M^T b.
    Matrix g(n, n);
    std::vector<double> r(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < rows; ++k) acc += m.at(k, i) * m.at(k, j);
            g.at(i, j) = acc;
        }
        double acc = 0.0;
        for (int k = 0; k < rows; ++k) acc += m.at(k, i) * b[static_cast<std::size_t>(k)];
        r[static_cast<std::size_t>(i)] = acc;
    }

    const double threshold = tol * std::max(1.0, max_abs(g.entries()));
    std::vector<std::pair<int, int>> pivots; // (row, col) in elimination order
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pivot_row = row;
        for (int k = row + 1; k < n; ++k) {
            if (std::abs(g.at(k, col)) > std::abs(g.at(pivot_row, col))) pivot_row = k;
        }
        if (std::abs(g.at(pivot_row, col)) < threshold) continue; // free column, x stays 0
        if (pivot_row != row) {
            for (int c = 0; c < n; ++c) std::swap(g.at(row, c), g.at(pivot_row, c));
            std::swap(r[static_cast<std::size_t>(row)], r[static_cast<std::size_t>(pivot_row)]);
        }
        for (int k = row + 1; k < n; ++k) {
            const double factor = g.at(k, col) / g.at(row, col);
            for (int c = col; c < n; ++c) g.at(k, c) -= factor * g.at(row, c);
            r[static_cast<std::size_t>(k)] -= factor * r[static_cast<std::size_t>(row)];
        }
        pivots.emplace_back(row, col);
        ++row;
    }

    LeastSquaresSolution out;
    out.x.assign(static_cast<std::size_t>(n), 0.0);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const auto [pr, pc] = *it;
        double acc = r[static_cast<std::size_t>(pr)];
        for (int c = pc + 1; c < n; ++c) acc -= g.at(pr, c) * out.x[static_cast<std::size_t>(c)];
        out.x[static_cast<std::size_t>(pc)] = acc / g.at(pr, pc);
    }

    double res2 = 0.0;
    for (int k = 0; k < rows; ++k) {
        double acc = -b[static_cast<std::size_t>(k)];
        for (int c = 0; c < n; ++c) acc += m.at(k, c) * out.x[static_cast<std::size_t>(c)];
        res2 += acc * acc;
    }
    out.residual = std::sqrt(res2);
    return out;
}

std::vector<double> central_difference_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> x,
    double h) {
    require(h > 0.0, "finite-difference step must be positive");
    std::vector<double> point(x.begin(), x.end());
    std::vector<double> grad(x.size(), 0.0);
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double saved = point[i];
        point[i] = saved + h;
        const double fp = f(point);
        point[i] = saved - h;
        const double fm = f(point);
        point[i] = saved;
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw NumericError("central difference: non-finite function value at coordinate " +
                               std::to_string(i));
        }
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

} // namespace vmlp
