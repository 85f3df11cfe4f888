#include "vmlp/functional.hpp"

#include <cmath>
#include <string>

#include "vmlp/errors.hpp"
#include "vmlp/rng.hpp"

namespace vmlp {

namespace {

void require_consistent(const LinearFunctional& l) {
    if (l.coeffs.empty()) throw ValidationError("linear functional needs at least one block");
    const std::size_t n = l.coeffs.front().size();
    for (const auto& block : l.coeffs) {
        if (block.size() != n) {
            throw ValidationError("linear functional blocks must all have the same length");
        }
        for (double c : block) {
            if (!std::isfinite(c)) throw ValidationError("functional coefficients must be finite");
        }
    }
    if (n == 0) throw ValidationError("linear functional blocks must be non-empty");
}

} // namespace

double LinearFunctional::eval(std::span<const Element> xs) const {
    if (xs.size() != coeffs.size()) {
        throw ValidationError("functional arity " + std::to_string(coeffs.size()) +
                              " does not match tuple length " + std::to_string(xs.size()));
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const auto& block = coeffs[j];
        const auto x = xs[j].coeffs();
        if (x.size() != block.size()) {
            throw ValidationError("functional block length does not match element dimension");
        }
        for (std::size_t i = 0; i < block.size(); ++i) acc += block[i] * x[i];
    }
    return acc;
}

double LinearFunctional::eval_flat(std::span<const double> x) const {
    const std::size_t n = coeffs.empty() ? 0 : coeffs.front().size();
    if (x.size() != coeffs.size() * n) {
        throw ValidationError("functional input has wrong flattened length");
    }
    double acc = 0.0;
    std::size_t offset = 0;
    for (const auto& block : coeffs) {
        for (std::size_t i = 0; i < block.size(); ++i) acc += block[i] * x[offset + i];
        offset += block.size();
    }
    return acc;
}

Representation represent(const Algebra& a, int component, const LinearFunctional& l) {
    require_consistent(l);
    const int n = a.dim();
    if (component < 0 || component >= n) {
        throw ValidationError("component " + std::to_string(component) +
                              " out of range for dimension " + std::to_string(n));
    }
    if (l.dim() != n) {
        throw ValidationError("functional blocks have length " + std::to_string(l.dim()) +
                              ", algebra dimension is " + std::to_string(n));
    }

    // pi_i(sum_j y_j x_j) = sum_j phi(y_j)^T B_i phi(x_j), so matching L
    // means solving B_i^T phi(y_j) = c_j block by block.
    const Matrix bt = bilinear_matrix(a, component).entries.transposed();
    const LuFactorization f = lu_factorize(bt);

    Representation rep;
    rep.component = component;
    rep.residual = 0.0;
    rep.ys.reserve(l.coeffs.size());
    for (const auto& block : l.coeffs) {
        if (!f.singular) {
            rep.ys.push_back(a.element(solve(f, block)));
        } else {
            LeastSquaresSolution ls = solve_least_squares(bt, block);
            rep.residual += ls.residual;
            rep.ys.push_back(a.element(std::move(ls.x)));
        }
    }
    return rep;
}

double verify_representation(const Algebra& a, const Representation& r,
                             const LinearFunctional& l, int samples, std::uint64_t seed) {
    require_consistent(l);
    if (r.ys.size() != l.coeffs.size()) {
        throw ValidationError("representation and functional have different arities");
    }
    if (samples < 1) throw ValidationError("verification needs at least one sample");
    const int n = a.dim();
    const int arity = l.arity();

    Rng rng(seed);
    std::vector<double> flat(static_cast<std::size_t>(arity) * n, 0.0);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        for (double& v : flat) v = rng.uniform(-1.0, 1.0);
        double represented = 0.0;
        for (int j = 0; j < arity; ++j) {
            represented += bilinear_form(
                a, r.component, r.ys[static_cast<std::size_t>(j)].coeffs(),
                std::span<const double>(flat).subspan(static_cast<std::size_t>(j) * n,
                                                      static_cast<std::size_t>(n)));
        }
        const double deviation = std::abs(l.eval_flat(flat) - represented);
        worst = std::max(worst, deviation);
    }
    return worst;
}

} // namespace vmlp
