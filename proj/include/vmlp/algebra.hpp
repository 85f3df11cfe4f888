#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vmlp/numerics.hpp"

namespace vmlp {

class Element;

// Finite-dimensional real algebra fixed by its structure constants p[i][j][k],
// the coefficient of e_k in the basis product e_i * e_j. Immutable after
// construction and cheap to copy (shared payload), so values can be shared
// freely across concurrent runs.
class Algebra {
public:
    int dim() const;
    double constant(int i, int j, int k) const;
    const std::string& name() const;                // empty when unnamed
    const std::vector<std::string>& labels() const; // empty when unlabeled

    // Contiguous row-major view of the slice B_k (entries p[i][j][k], k
    // fixed). This is the hot-path layout used by mul and the network code.
    std::span<const double> bk(int k) const;

    Element zero() const;
    Element basis(int i) const;
    Element element(std::vector<double> coeffs) const;
    Element element(std::span<const double> coeffs) const;

    // Same payload or entrywise-equal structure constants. Two separately
    // built but identical algebras are interchangeable.
    bool same_as(const Algebra& other) const;

private:
    struct Data;
    explicit Algebra(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;

    friend Algebra new_algebra(int dim, const std::vector<double>& constants_ijk,
                               std::vector<std::string> labels, std::string name);
};

// Element of a specific algebra, held as the coefficient tuple phi(x).
class Element {
public:
    Element(Algebra algebra, std::vector<double> coeffs);

    const Algebra& algebra() const { return algebra_; }
    std::span<const double> coeffs() const { return coeffs_; }
    int dim() const { return static_cast<int>(coeffs_.size()); }
    double operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

private:
    Algebra algebra_;
    std::vector<double> coeffs_;
};

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator*(double a, const Element& x);
Element operator*(const Element& x, const Element& y); // algebra product, same as mul

Element add(const Element& x, const Element& y);
Element scale(double a, const Element& x);
Element mul(const Element& x, const Element& y);
double abs(const Element& x);                // Euclidean norm of the coefficients
double project(const Element& x, int i);     // coefficient xi_i

// phi(x)^T B_k phi(y). mul computes each output coefficient through this
// exact arithmetic path, so project(mul(x,y),k) == bilinear_form(...,k,...)
// holds bit for bit.
double bilinear_form(const Algebra& a, int k, std::span<const double> x,
                     std::span<const double> y);

struct BilinearMatrix {
    int k = 0;
    Matrix entries; // entries[i][j] = p[i][j][k]
};

BilinearMatrix bilinear_matrix(const Algebra& a, int k);

struct ComponentRank {
    int k = 0;
    int rank = 0;
    double abs_det = 0.0;
    bool singular = true;
};

struct DegeneracyReport {
    std::vector<ComponentRank> per_component;
    bool overall_nondegenerate = false;
    double tol = 0.0; // relative pivot threshold the ranks were computed with
    std::vector<int> singular_components() const;
};

// Builds a validated immutable algebra. constants_ijk is the flat n*n*n
// tensor in (i, j, k) nesting order, matching the JSON file layout.
Algebra new_algebra(int dim, const std::vector<double>& constants_ijk,
                    std::vector<std::string> labels = {}, std::string name = {});

// A component is singular when the numerical rank of B_k falls below n, with
// a pivot counting as zero below tol * max|entry|.
DegeneracyReport is_nondegenerate(const Algebra& a, double tol = 1e-9);

// Solves the 2 n^2 identity constraints mul(e, e_j) = e_j = mul(e_j, e) as a
// least-squares system; accepts when the residual stays below tol.
std::optional<Element> find_identity(const Algebra& a, double tol = 1e-8);

// Column j of p holds the old-basis coordinates of the new basis vector
// e'_j. Products of corresponding elements agree between the two algebras.
Algebra change_of_basis(const Algebra& a, const Matrix& p);

// The named algebras of the experiment tables: R (reals), A..E (2D), F, G,
// Q (quaternions), HQ (hyperbolic quaternions), DC (dual-complex) (4D).
Algebra catalog(const std::string& name);
const std::vector<std::string>& catalog_names();

// Clifford algebra Cl(p, q): generators g_1..g_p square to +1, the remaining
// q square to -1, all anticommute. Basis blades are indexed by generator
// bitmask (bit b set means g_{b+1} is a factor), i.e. 1, g1, g2, g1g2, g3,
// ... so clifford(0,1) and clifford(0,2) reproduce catalog C and Q exactly.
Algebra clifford(int p, int q);

// Cayley-Dickson doubling chain starting from R, one doubling per gamma:
// (a,b)(c,d) = (ac + gamma d* b, da + b c*), (a,b)* = (a*, -b).
// gammas = [-1] gives C, [-1,-1] gives Q, [-1,-1,-1] gives the octonions.
Algebra cayley_dickson_chain(const std::vector<double>& gammas);

} // namespace vmlp
