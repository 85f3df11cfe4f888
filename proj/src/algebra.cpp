#include "vmlp/algebra.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "vmlp/errors.hpp"

namespace vmlp {

struct Algebra::Data {
    int dim = 0;
    // Slice-major layout: bk[(k*n + i)*n + j] = p[i][j][k], so each B_k is a
    // contiguous row-major n x n block.
    std::vector<double> bk;
    std::vector<std::string> labels;
    std::string name;
};

int Algebra::dim() const { return data_->dim; }

double Algebra::constant(int i, int j, int k) const {
    const int n = data_->dim;
    return data_->bk[(static_cast<std::size_t>(k) * n + i) * n + j];
}

const std::string& Algebra::name() const { return data_->name; }

const std::vector<std::string>& Algebra::labels() const { return data_->labels; }

std::span<const double> Algebra::bk(int k) const {
    const int n = data_->dim;
    if (k < 0 || k >= n) {
        throw ValidationError("component index " + std::to_string(k) + " out of range for dim " +
                              std::to_string(n));
    }
    return std::span<const double>(data_->bk).subspan(
        static_cast<std::size_t>(k) * n * n, static_cast<std::size_t>(n) * n);
}

Element Algebra::zero() const { return Element(*this, std::vector<double>(data_->dim, 0.0)); }

Element Algebra::basis(int i) const {
    if (i < 0 || i >= data_->dim) {
        throw ValidationError("basis index " + std::to_string(i) + " out of range for dim " +
                              std::to_string(data_->dim));
    }
    std::vector<double> c(static_cast<std::size_t>(data_->dim), 0.0);
    c[static_cast<std::size_t>(i)] = 1.0;
    return Element(*this, std::move(c));
}

Element Algebra::element(std::vector<double> coeffs) const {
    return Element(*this, std::move(coeffs));
}

Element Algebra::element(std::span<const double> coeffs) const {
    return Element(*this, std::vector<double>(coeffs.begin(), coeffs.end()));
}

bool Algebra::same_as(const Algebra& other) const {
    if (data_ == other.data_) return true;
    return data_->dim == other.data_->dim && data_->bk == other.data_->bk;
}

Algebra new_algebra(int dim, const std::vector<double>& constants_ijk,
                    std::vector<std::string> labels, std::string name) {
    if (dim < 1) throw ValidationError("algebra dimension must be positive");
    const auto n = static_cast<std::size_t>(dim);
    if (constants_ijk.size() != n * n * n) {
        throw ValidationError("structure constants have " + std::to_string(constants_ijk.size()) +
                              " entries, expected " + std::to_string(dim) + "^3 = " +
                              std::to_string(n * n * n));
    }
    for (double x : constants_ijk) {
        if (!std::isfinite(x)) throw ValidationError("structure constants must be finite");
    }
    if (!labels.empty() && labels.size() != n) {
        throw ValidationError("label count " + std::to_string(labels.size()) +
                              " does not match dimension " + std::to_string(dim));
    }
    auto data = std::make_shared<Algebra::Data>();
    data->dim = dim;
    data->labels = std::move(labels);
    data->name = std::move(name);
    data->bk.assign(n * n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                data->bk[(k * n + i) * n + j] = constants_ijk[(i * n + j) * n + k];
            }
        }
    }
    return Algebra(std::move(data));
}

Element::Element(Algebra algebra, std::vector<double> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != algebra_.dim()) {
        throw ValidationError("element has " + std::to_string(coeffs_.size()) +
                              " coefficients, algebra dimension is " +
                              std::to_string(algebra_.dim()));
    }
    for (double x : coeffs_) {
        if (!std::isfinite(x)) throw ValidationError("element coefficients must be finite");
    }
}

namespace {

void require_same_algebra(const Element& x, const Element& y, const char* op) {
    if (!x.algebra().same_as(y.algebra())) {
        throw ValidationError(std::string(op) + ": operands belong to different algebras");
    }
}

} // namespace

Element add(const Element& x, const Element& y) {
    require_same_algebra(x, y, "add");
    std::vector<double> c(x.coeffs().begin(), x.coeffs().end());
    for (int i = 0; i < y.dim(); ++i) c[static_cast<std::size_t>(i)] += y[i];
    return Element(x.algebra(), std::move(c));
}

Element scale(double a, const Element& x) {
    std::vector<double> c(x.coeffs().begin(), x.coeffs().end());
    for (double& v : c) v *= a;
    return Element(x.algebra(), std::move(c));
}

double bilinear_form(const Algebra& a, int k, std::span<const double> x,
                     std::span<const double> y) {
    const int n = a.dim();
    const std::span<const double> bk = a.bk(k);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        if (xi == 0.0) continue;
        double row = 0.0;
        const double* b = bk.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) row += b[j] * y[static_cast<std::size_t>(j)];
        acc += xi * row;
    }
    return acc;
}

Element mul(const Element& x, const Element& y) {
    require_same_algebra(x, y, "mul");
    const Algebra& a = x.algebra();
    const int n = a.dim();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = bilinear_form(a, k, x.coeffs(), y.coeffs());
    }
    return Element(a, std::move(out));
}

double abs(const Element& x) {
    double acc = 0.0;
    for (double v : x.coeffs()) acc += v * v;
    return std::sqrt(acc);
}

double project(const Element& x, int i) {
    if (i < 0 || i >= x.dim()) {
        throw ValidationError("project: index " + std::to_string(i) + " out of range");
    }
    return x[i];
}

Element operator+(const Element& x, const Element& y) { return add(x, y); }

Element operator-(const Element& x, const Element& y) { return add(x, scale(-1.0, y)); }

Element operator*(double a, const Element& x) { return scale(a, x); }

Element operator*(const Element& x, const Element& y) { return mul(x, y); }

BilinearMatrix bilinear_matrix(const Algebra& a, int k) {
    const std::span<const double> slice = a.bk(k); // validates k
    BilinearMatrix b;
    b.k = k;
    b.entries = Matrix(a.dim(), a.dim(), std::vector<double>(slice.begin(), slice.end()));
    return b;
}

std::vector<int> DegeneracyReport::singular_components() const {
    std::vector<int> out;
    for (const auto& c : per_component) {
        if (c.singular) out.push_back(c.k);
    }
    return out;
}

DegeneracyReport is_nondegenerate(const Algebra& a, double tol) {
    if (tol <= 0.0) throw ValidationError("degeneracy tolerance must be positive");
    DegeneracyReport report;
    report.tol = tol;
    report.overall_nondegenerate = true;
    for (int k = 0; k < a.dim(); ++k) {
        const LuFactorization f = lu_factorize(bilinear_matrix(a, k).entries, tol);
        report.per_component.push_back({k, f.rank, f.abs_det, f.singular});
        if (f.singular) report.overall_nondegenerate = false;
    }
    return report;
}

std::optional<Element> find_identity(const Algebra& a, double tol) {
    if (tol <= 0.0) throw ValidationError("identity tolerance must be positive");
    const int n = a.dim();
    // Identity constraints, 2 n^2 rows over the unknown phi(e):
    //   left  (j,k): sum_i p[i][j][k] e_i = delta_jk   (e * e_j = e_j)
    //   right (j,k): sum_i p[j][i][k] e_i = delta_jk   (e_j * e = e_j)
    Matrix sys(2 * n * n, n);
    std::vector<double> rhs(static_cast<std::size_t>(2 * n * n), 0.0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const int left_row = j * n + k;
            const int right_row = n * n + left_row;
            for (int i = 0; i < n; ++i) {
                sys.at(left_row, i) = a.constant(i, j, k);
                sys.at(right_row, i) = a.constant(j, i, k);
            }
            if (j == k) {
                rhs[static_cast<std::size_t>(left_row)] = 1.0;
                rhs[static_cast<std::size_t>(right_row)] = 1.0;
            }
        }
    }
    const LeastSquaresSolution ls = solve_least_squares(sys, rhs);
    if (ls.residual >= tol) return std::nullopt;
    return a.element(ls.x);
}

Algebra change_of_basis(const Algebra& a, const Matrix& p) {
    const int n = a.dim();
    if (p.rows() != n || p.cols() != n) {
        throw ValidationError("change_of_basis: matrix is " + std::to_string(p.rows()) + "x" +
                              std::to_string(p.cols()) + ", algebra dimension is " +
                              std::to_string(n));
    }
    const LuFactorization f = lu_factorize(p);
    if (f.singular) throw ValidationError("change_of_basis: basis matrix is singular");

    // New basis vector e'_j has old coordinates P[:,j]. The product of two
    // new basis vectors is computed in old coordinates and pulled back
    // through P^{-1} to produce the new structure constants.
    std::vector<Element> new_basis;
    new_basis.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<double> col(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = p.at(r, j);
        new_basis.push_back(a.element(std::move(col)));
    }

    const auto un = static_cast<std::size_t>(n);
    std::vector<double> constants(un * un * un, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Element prod = mul(new_basis[static_cast<std::size_t>(i)],
                                     new_basis[static_cast<std::size_t>(j)]);
            const std::vector<double> in_new = solve(f, prod.coeffs());
            for (int k = 0; k < n; ++k) {
                constants[(static_cast<std::size_t>(i) * un + j) * un + k] =
                    in_new[static_cast<std::size_t>(k)];
            }
        }
    }
    return new_algebra(n, constants);
}

} // namespace vmlp
