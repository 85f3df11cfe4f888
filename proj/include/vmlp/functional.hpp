#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vmlp/algebra.hpp"

namespace vmlp {

// Linear functional on the flattened coordinates of an N-tuple of algebra
// elements: L(phi(x_1..x_N)) = sum_j c_j . phi(x_j).
struct LinearFunctional {
    std::vector<std::vector<double>> coeffs; // blocks c_1..c_N, each length n

    int arity() const { return static_cast<int>(coeffs.size()); }
    int dim() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().size()); }

    double eval(std::span<const Element> xs) const;
    double eval_flat(std::span<const double> x) const; // length arity * dim
};

// The weights y_1..y_N realizing L as a projected weighted sum,
// L(phi(x)) = pi_component(sum_j y_j * x_j). residual is 0 when the
// representation is exact and otherwise reports the least-squares defect
// (the impossibility certificate of the degenerate case).
struct Representation {
    std::vector<Element> ys;
    int component = 0;
    double residual = 0.0;
};

// Solves B_component^T phi(y_j) = c_j per block. Falls back to least squares
// when that matrix is singular, reporting sum_j |B^T phi(y_j) - c_j|.
Representation represent(const Algebra& a, int component, const LinearFunctional& l);

// Draws `samples` random tuples with coefficients uniform in [-1, 1] and
// returns the max abs deviation between L and its represented form.
double verify_representation(const Algebra& a, const Representation& r,
                             const LinearFunctional& l, int samples, std::uint64_t seed);

} // namespace vmlp
