#include "vmlp/network.hpp"

#include <cmath>
#include <iostream>
#include <set>
#include <utility>

#include "vmlp/errors.hpp"
#include "vmlp/rng.hpp"

namespace vmlp {

namespace {

[[noreturn]] void bad_name(const char* what, const std::string& name, const char* valid) {
    throw ValidationError(std::string("unknown ") + what + " \"" + name + "\" (valid: " + valid + ")");
}

// Vector output weights recover scalar mode only through alpha_i = alpha 1;
// algebras without an identity still train, so this is advisory, not fatal.
void warn_if_no_identity(const Algebra& a) {
    static std::set<std::string> warned;
    const std::string key = a.name().empty() ? "dim" + std::to_string(a.dim()) : a.name();
    if (warned.count(key)) return;
    if (!find_identity(a)) {
        warned.insert(key);
        std::cerr << "warning: algebra " << key
                  << " has no identity; vector output weights cannot emulate scalar mode\n";
    } else {
        warned.insert(key);
    }
}

} // namespace

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::relu;
    if (name == "logistic") return Activation::logistic;
    if (name == "identity") return Activation::identity;
    if (name == "tanh") return Activation::tanh;
    bad_name("activation", name, "relu, logistic, identity, tanh");
}

const char* activation_name(Activation act) {
    switch (act) {
        case Activation::relu: return "relu";
        case Activation::logistic: return "logistic";
        case Activation::identity: return "identity";
        case Activation::tanh: return "tanh";
    }
    throw ValidationError("invalid activation enum value");
}

double activate(Activation act, double t) {
    switch (act) {
        case Activation::relu: return t > 0.0 ? t : 0.0;
        case Activation::logistic: return 1.0 / (1.0 + std::exp(-t));
        case Activation::identity: return t;
        case Activation::tanh: return std::tanh(t);
    }
    throw ValidationError("invalid activation enum value");
}

double activate_derivative(Activation act, double t) {
    switch (act) {
        case Activation::relu: return t > 0.0 ? 1.0 : 0.0;
        case Activation::logistic: {
            double v = 1.0 / (1.0 + std::exp(-t));
            return v * (1.0 - v);
        }
        case Activation::identity: return 1.0;
        case Activation::tanh: {
            double v = std::tanh(t);
            return 1.0 - v * v;
        }
    }
    throw ValidationError("invalid activation enum value");
}

Element split_apply(Activation act, const Element& x) {
    std::vector<double> out(x.coeffs().begin(), x.coeffs().end());
    for (double& c : out) c = activate(act, c);
    return Element(x.algebra(), std::move(out));
}

OutputMode output_mode_from_name(const std::string& name) {
    if (name == "scalar") return OutputMode::scalar;
    if (name == "vector") return OutputMode::vector;
    bad_name("output mode", name, "scalar, vector");
}

const char* output_mode_name(OutputMode mode) {
    return mode == OutputMode::scalar ? "scalar" : "vector";
}

VMlp::VMlp(Algebra algebra, int n_inputs, int n_hidden, OutputMode mode, Activation act)
    : algebra_(std::move(algebra)), n_inputs_(n_inputs), n_hidden_(n_hidden), mode_(mode), act_(act) {
    if (n_inputs_ < 1) throw ValidationError("VMlp: n_inputs must be >= 1");
    if (n_hidden_ < 1) throw ValidationError("VMlp: n_hidden must be >= 1");
    const std::size_t n = static_cast<std::size_t>(algebra_.dim());
    const std::size_t hidden = static_cast<std::size_t>(n_hidden_);
    bias_base_ = hidden * static_cast<std::size_t>(n_inputs_) * n;
    output_base_ = bias_base_ + hidden * n;
    const std::size_t out_count = mode_ == OutputMode::scalar ? hidden : hidden * n;
    params_.assign(output_base_ + out_count, 0.0);
    if (mode_ == OutputMode::vector) warn_if_no_identity(algebra_);
}

VMlp VMlp::init(const Algebra& algebra, int n_inputs, int n_hidden, OutputMode mode,
                Activation act, std::uint64_t seed) {
    VMlp net(algebra, n_inputs, n_hidden, mode, act);
    Rng rng(seed);
    const int n = algebra.dim();
    // Glorot-style uniform bounds on the real parameter counts per hidden
    // coefficient (fan_in = n * n_inputs, fan_out = n * n_hidden) and per
    // output (fan_in = n_hidden, fan_out = n). Biases start at zero. Draw
    // order: hidden weights by (i, j, component), then output weights.
    const double wb = std::sqrt(6.0 / (static_cast<double>(n) * n_inputs + static_cast<double>(n) * n_hidden));
    for (std::size_t p = 0; p < net.bias_base_; ++p) net.params_[p] = rng.uniform(-wb, wb);
    const double ob = std::sqrt(6.0 / (static_cast<double>(n_hidden) + n));
    for (std::size_t p = net.output_base_; p < net.params_.size(); ++p)
        net.params_[p] = rng.uniform(-ob, ob);
    return net;
}

void VMlp::check_unit(int i) const {
    if (i < 0 || i >= n_hidden_) throw ValidationError("VMlp: hidden unit index out of range");
}

std::size_t VMlp::weight_offset(int i, int j) const {
    check_unit(i);
    if (j < 0 || j >= n_inputs_) throw ValidationError("VMlp: input index out of range");
    const std::size_t n = static_cast<std::size_t>(algebra_.dim());
    return (static_cast<std::size_t>(i) * n_inputs_ + j) * n;
}

std::size_t VMlp::bias_offset(int i) const {
    check_unit(i);
    return bias_base_ + static_cast<std::size_t>(i) * algebra_.dim();
}

Element VMlp::weight(int i, int j) const {
    const std::size_t off = weight_offset(i, j);
    return algebra_.element(
        std::span<const double>(params_.data() + off, static_cast<std::size_t>(algebra_.dim())));
}

Element VMlp::bias(int i) const {
    const std::size_t off = bias_offset(i);
    return algebra_.element(
        std::span<const double>(params_.data() + off, static_cast<std::size_t>(algebra_.dim())));
}

double VMlp::output_weight(int i) const {
    check_unit(i);
    if (mode_ != OutputMode::scalar)
        throw ValidationError("VMlp: real output weight only exists in scalar mode");
    return params_[output_base_ + i];
}

Element VMlp::output_weight_element(int i) const {
    check_unit(i);
    if (mode_ != OutputMode::vector)
        throw ValidationError("VMlp: element output weight only exists in vector mode");
    const std::size_t off = output_base_ + static_cast<std::size_t>(i) * algebra_.dim();
    return algebra_.element(
        std::span<const double>(params_.data() + off, static_cast<std::size_t>(algebra_.dim())));
}

void VMlp::set_weight(int i, int j, const Element& w) {
    if (!w.algebra().same_as(algebra_)) throw ValidationError("VMlp: weight algebra mismatch");
    const std::size_t off = weight_offset(i, j);
    for (int c = 0; c < algebra_.dim(); ++c) params_[off + c] = w.coeffs()[c];
}

void VMlp::set_bias(int i, const Element& b) {
    if (!b.algebra().same_as(algebra_)) throw ValidationError("VMlp: bias algebra mismatch");
    const std::size_t off = bias_offset(i);
    for (int c = 0; c < algebra_.dim(); ++c) params_[off + c] = b.coeffs()[c];
}

void VMlp::set_output_weight(int i, double alpha) {
    check_unit(i);
    if (mode_ != OutputMode::scalar)
        throw ValidationError("VMlp: real output weight only exists in scalar mode");
    if (!std::isfinite(alpha)) throw ValidationError("VMlp: output weight must be finite");
    params_[output_base_ + i] = alpha;
}

void VMlp::set_output_weight(int i, const Element& alpha) {
    check_unit(i);
    if (mode_ != OutputMode::vector)
        throw ValidationError("VMlp: element output weight only exists in vector mode");
    if (!alpha.algebra().same_as(algebra_)) throw ValidationError("VMlp: output weight algebra mismatch");
    const std::size_t off = output_base_ + static_cast<std::size_t>(i) * algebra_.dim();
    for (int c = 0; c < algebra_.dim(); ++c) params_[off + c] = alpha.coeffs()[c];
}

Element VMlp::forward(std::span<const Element> xs) const {
    if (static_cast<int>(xs.size()) != n_inputs_)
        throw ValidationError("VMlp: expected " + std::to_string(n_inputs_) + " inputs, got " +
                              std::to_string(xs.size()));
    const int n = algebra_.dim();
    std::vector<double> flat(static_cast<std::size_t>(n_inputs_) * n);
    for (int j = 0; j < n_inputs_; ++j) {
        if (!xs[j].algebra().same_as(algebra_)) throw ValidationError("VMlp: input algebra mismatch");
        for (int c = 0; c < n; ++c) flat[static_cast<std::size_t>(j) * n + c] = xs[j].coeffs()[c];
    }
    std::vector<double> out(n);
    VMlpScratch scratch;
    forward_flat(flat, out, scratch);
    return algebra_.element(out);
}

void VMlp::forward_flat(std::span<const double> xs, std::span<double> out,
                        VMlpScratch& scratch) const {
    const std::size_t n = static_cast<std::size_t>(algebra_.dim());
    const std::size_t nin = static_cast<std::size_t>(n_inputs_);
    const std::size_t hidden = static_cast<std::size_t>(n_hidden_);
    if (xs.size() != nin * n) throw ValidationError("VMlp: flat input has wrong length");
    if (out.size() != n) throw ValidationError("VMlp: flat output has wrong length");

    scratch.tx.resize(nin * n * n);
    scratch.s.resize(hidden * n);
    scratch.h.resize(hidden * n);

    // tx[(j, k), a] = (B_k phi(x_j))_a, so each hidden coefficient is a plain
    // dot product of a weight block against a tx block.
    for (std::size_t j = 0; j < nin; ++j) {
        const double* xj = xs.data() + j * n;
        for (std::size_t k = 0; k < n; ++k) {
            const std::span<const double> bk = algebra_.bk(static_cast<int>(k));
            double* dst = scratch.tx.data() + (j * n + k) * n;
            for (std::size_t a = 0; a < n; ++a) {
                const double* row = bk.data() + a * n;
                double acc = 0.0;
                for (std::size_t b = 0; b < n; ++b) acc += row[b] * xj[b];
                dst[a] = acc;
            }
        }
    }

    for (std::size_t i = 0; i < hidden; ++i) {
        const double* wrow = params_.data() + i * nin * n;
        const double* brow = params_.data() + bias_base_ + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            double acc = brow[k];
            for (std::size_t j = 0; j < nin; ++j) {
                const double* wij = wrow + j * n;
                const double* txb = scratch.tx.data() + (j * n + k) * n;
                for (std::size_t a = 0; a < n; ++a) acc += wij[a] * txb[a];
            }
            scratch.s[i * n + k] = acc;
            scratch.h[i * n + k] = activate(act_, acc);
        }
    }

    for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
    if (mode_ == OutputMode::scalar) {
        for (std::size_t i = 0; i < hidden; ++i) {
            const double alpha = params_[output_base_ + i];
            const double* hi = scratch.h.data() + i * n;
            for (std::size_t k = 0; k < n; ++k) out[k] += alpha * hi[k];
        }
    } else {
        // out_k += phi(alpha_i)^T B_k phi(h_i) for each unit.
        for (std::size_t i = 0; i < hidden; ++i) {
            const double* ai = params_.data() + output_base_ + i * n;
            const double* hi = scratch.h.data() + i * n;
            for (std::size_t k = 0; k < n; ++k) {
                const std::span<const double> bk = algebra_.bk(static_cast<int>(k));
                double acc = 0.0;
                for (std::size_t a = 0; a < n; ++a) {
                    if (ai[a] == 0.0) continue;
                    const double* row = bk.data() + a * n;
                    double dot = 0.0;
                    for (std::size_t b = 0; b < n; ++b) dot += row[b] * hi[b];
                    acc += ai[a] * dot;
                }
                out[k] += acc;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!std::isfinite(out[k]))
            throw NumericError("VMlp: non-finite output component " + std::to_string(k));
}

double VMlp::backward_flat(std::span<const double> xs, std::span<const double> target,
                           std::span<double> grad, VMlpScratch& scratch) const {
    const std::size_t n = static_cast<std::size_t>(algebra_.dim());
    const std::size_t nin = static_cast<std::size_t>(n_inputs_);
    const std::size_t hidden = static_cast<std::size_t>(n_hidden_);
    if (target.size() != n) throw ValidationError("VMlp: target has wrong length");
    if (grad.size() != params_.size()) throw ValidationError("VMlp: gradient has wrong length");

    scratch.y.resize(n);
    forward_flat(xs, scratch.y, scratch);

    scratch.gy.resize(n);
    double loss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = scratch.y[k] - target[k];
        loss += d * d;
        scratch.gy[k] = 2.0 * d;
    }
    if (!std::isfinite(loss)) throw NumericError("VMlp: non-finite loss");

    if (mode_ == OutputMode::vector) {
        // gb = sum_k gy_k B_k; then dphi(alpha_i) = gb phi(h_i) and
        // dphi(h_i) = gb^T phi(alpha_i).
        scratch.gb.assign(n * n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double g = scratch.gy[k];
            if (g == 0.0) continue;
            const std::span<const double> bk = algebra_.bk(static_cast<int>(k));
            for (std::size_t ab = 0; ab < n * n; ++ab) scratch.gb[ab] += g * bk[ab];
        }
        scratch.gh.resize(n);
    }

    scratch.ds.resize(n);
    std::vector<double>& ds = scratch.ds;

    for (std::size_t i = 0; i < hidden; ++i) {
        const double* hi = scratch.h.data() + i * n;
        const double* si = scratch.s.data() + i * n;

        if (mode_ == OutputMode::scalar) {
            const double alpha = params_[output_base_ + i];
            double galpha = 0.0;
            for (std::size_t k = 0; k < n; ++k) galpha += scratch.gy[k] * hi[k];
            grad[output_base_ + i] += galpha;
            for (std::size_t k = 0; k < n; ++k)
                ds[k] = scratch.gy[k] * alpha * activate_derivative(act_, si[k]);
        } else {
            const double* ai = params_.data() + output_base_ + i * n;
            double* ga = grad.data() + output_base_ + i * n;
            for (std::size_t a = 0; a < n; ++a) {
                const double* row = scratch.gb.data() + a * n;
                double acc = 0.0;
                for (std::size_t b = 0; b < n; ++b) acc += row[b] * hi[b];
                ga[a] += acc;
            }
            for (std::size_t b = 0; b < n; ++b) {
                double acc = 0.0;
                for (std::size_t a = 0; a < n; ++a) acc += scratch.gb[a * n + b] * ai[a];
                scratch.gh[b] = acc;
            }
            for (std::size_t k = 0; k < n; ++k)
                ds[k] = scratch.gh[k] * activate_derivative(act_, si[k]);
        }

        double* gb_bias = grad.data() + bias_base_ + i * n;
        for (std::size_t k = 0; k < n; ++k) gb_bias[k] += ds[k];

        double* gw = grad.data() + i * nin * n;
        for (std::size_t j = 0; j < nin; ++j) {
            double* gwij = gw + j * n;
            for (std::size_t k = 0; k < n; ++k) {
                const double dsk = ds[k];
                if (dsk == 0.0) continue;
                const double* txb = scratch.tx.data() + (j * n + k) * n;
                for (std::size_t a = 0; a < n; ++a) gwij[a] += dsk * txb[a];
            }
        }
    }
    return loss;
}

std::pair<double, Gradients> backward(const VMlp& net, std::span<const Element> xs,
                                      const Element& target) {
    if (!target.algebra().same_as(net.algebra())) throw ValidationError("backward: target algebra mismatch");
    if (static_cast<int>(xs.size()) != net.n_inputs())
        throw ValidationError("backward: wrong number of inputs");
    const int n = net.algebra().dim();
    std::vector<double> flat(static_cast<std::size_t>(net.n_inputs()) * n);
    for (int j = 0; j < net.n_inputs(); ++j) {
        if (!xs[j].algebra().same_as(net.algebra()))
            throw ValidationError("backward: input algebra mismatch");
        for (int c = 0; c < n; ++c) flat[static_cast<std::size_t>(j) * n + c] = xs[j].coeffs()[c];
    }
    Gradients g;
    g.values.assign(net.param_count(), 0.0);
    VMlpScratch scratch;
    const double loss = net.backward_flat(flat, target.coeffs(), g.values, scratch);
    return {loss, std::move(g)};
}

double RealMlp::eval_flat(std::span<const double> x, Activation act) const {
    if (functionals.size() != alphas.size() || functionals.size() != biases.size())
        throw ValidationError("RealMlp: mismatched unit counts");
    double out = 0.0;
    for (std::size_t i = 0; i < functionals.size(); ++i) {
        const LinearFunctional& f = functionals[i];
        const std::size_t dim = static_cast<std::size_t>(f.dim());
        if (x.size() != static_cast<std::size_t>(f.arity()) * dim)
            throw ValidationError("RealMlp: input length does not match functional arity");
        // Fold from the bias in block order, mirroring the V-MLP hidden unit
        // accumulation so the n=1 assembly collapse is bit-identical.
        double pre = biases[i];
        for (std::size_t j = 0; j < f.coeffs.size(); ++j)
            for (std::size_t c = 0; c < dim; ++c) pre += f.coeffs[j][c] * x[j * dim + c];
        out += alphas[i] * activate(act, pre);
    }
    return out;
}

VMlp assemble_from_components(const Algebra& a, std::span<const RealMlp> real_nets,
                              double lambda, Activation act) {
    const int n = a.dim();
    if (static_cast<int>(real_nets.size()) != n)
        throw ValidationError("assemble_from_components: need one real net per component, got " +
                              std::to_string(real_nets.size()) + " for dimension " + std::to_string(n));
    if (!std::isfinite(lambda)) throw ValidationError("assemble_from_components: lambda must be finite");
    const DegeneracyReport report = is_nondegenerate(a);
    if (!report.overall_nondegenerate) {
        std::string comps;
        for (int k : report.singular_components()) {
            if (!comps.empty()) comps += ", ";
            comps += std::to_string(k);
        }
        throw ValidationError("assemble_from_components: algebra is degenerate (singular components: " +
                              comps + ")");
    }

    int arity = -1;
    int total_units = 0;
    for (int k = 0; k < n; ++k) {
        const RealMlp& rn = real_nets[k];
        if (rn.functionals.size() != rn.alphas.size() || rn.functionals.size() != rn.biases.size())
            throw ValidationError("assemble_from_components: mismatched unit counts in component net " +
                                  std::to_string(k));
        for (const LinearFunctional& f : rn.functionals) {
            if (f.dim() != n)
                throw ValidationError("assemble_from_components: functional block length != algebra dimension");
            if (arity == -1) arity = f.arity();
            else if (f.arity() != arity)
                throw ValidationError("assemble_from_components: functionals disagree on arity");
        }
        total_units += static_cast<int>(rn.functionals.size());
    }
    if (arity == -1 || total_units == 0)
        throw ValidationError("assemble_from_components: component nets have no units");

    VMlp net(a, arity, total_units, OutputMode::scalar, act);
    int unit = 0;
    std::vector<double> bias_coeffs(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const RealMlp& rn = real_nets[k];
        for (std::size_t u = 0; u < rn.functionals.size(); ++u) {
            const Representation rep = represent(a, k, rn.functionals[u]);
            for (int j = 0; j < arity; ++j) net.set_weight(unit, j, rep.ys[j]);
            for (int c = 0; c < n; ++c) bias_coeffs[c] = c == k ? rn.biases[u] : lambda;
            net.set_bias(unit, a.element(bias_coeffs));
            net.set_output_weight(unit, rn.alphas[u]);
            ++unit;
        }
    }
    return net;
}

} // namespace vmlp
