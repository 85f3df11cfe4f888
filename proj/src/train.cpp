#include "vmlp/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "vmlp/errors.hpp"
#include "vmlp/rng.hpp"

namespace vmlp {

namespace {

enum class TargetKind { quad2d, quad4d };

TargetKind target_kind(const std::string& name) {
    if (name == "quad2d") return TargetKind::quad2d;
    if (name == "quad4d") return TargetKind::quad4d;
    throw ValidationError("unknown target \"" + name + "\" (valid: quad2d, quad4d)");
}

int target_dim(TargetKind kind) {
    return kind == TargetKind::quad2d ? 2 : 4;
}

void eval_target_flat(TargetKind kind, const double* x, double* out) {
    if (kind == TargetKind::quad2d) {
        out[0] = x[0] * x[0] - x[1] * x[1];
        out[1] = x[0] * x[0] + x[0] * x[1] + x[1] * x[1];
    } else {
        for (int k = 0; k < 4; ++k)
            out[k] = x[k] * x[k] + x[(k + 1) % 4] * x[(k + 2) % 4] + x[(k + 3) % 4] * x[(k + 3) % 4];
    }
}

void check_sample_index(const Dataset& ds, std::int64_t sample) {
    if (sample < 0 || sample >= ds.count) throw ValidationError("Dataset: sample index out of range");
}

} // namespace

std::span<const double> Dataset::input_flat(std::int64_t sample) const {
    check_sample_index(*this, sample);
    const std::size_t width = static_cast<std::size_t>(n_inputs) * algebra.dim();
    return {inputs.data() + static_cast<std::size_t>(sample) * width, width};
}

std::span<const double> Dataset::target_flat(std::int64_t sample) const {
    check_sample_index(*this, sample);
    const std::size_t n = static_cast<std::size_t>(algebra.dim());
    return {targets.data() + static_cast<std::size_t>(sample) * n, n};
}

std::vector<Element> Dataset::input_tuple(std::int64_t sample) const {
    const std::span<const double> flat = input_flat(sample);
    std::vector<Element> out;
    out.reserve(n_inputs);
    const int n = algebra.dim();
    for (int j = 0; j < n_inputs; ++j) out.push_back(algebra.element(flat.subspan(j * n, n)));
    return out;
}

Element Dataset::target(std::int64_t sample) const {
    return algebra.element(target_flat(sample));
}

const std::vector<std::string>& target_names() {
    static const std::vector<std::string> names = {"quad2d", "quad4d"};
    return names;
}

Element eval_target(const std::string& name, const Element& x) {
    const TargetKind kind = target_kind(name);
    const int n = target_dim(kind);
    if (x.algebra().dim() != n)
        throw ValidationError("target \"" + name + "\" needs dimension " + std::to_string(n) +
                              ", algebra has dimension " + std::to_string(x.algebra().dim()));
    std::vector<double> out(n);
    eval_target_flat(kind, x.coeffs().data(), out.data());
    return x.algebra().element(out);
}

Dataset gen_dataset(const Algebra& a, const std::string& target, std::int64_t count,
                    std::uint64_t seed) {
    const TargetKind kind = target_kind(target);
    const int n = a.dim();
    if (n != target_dim(kind))
        throw ValidationError("target \"" + target + "\" needs dimension " +
                              std::to_string(target_dim(kind)) + ", algebra has dimension " +
                              std::to_string(n));
    if (count < 1) throw ValidationError("gen_dataset: count must be >= 1");

    Dataset ds{a, 1, count, {}, {}, seed};
    ds.inputs.resize(static_cast<std::size_t>(count) * n);
    ds.targets.resize(static_cast<std::size_t>(count) * n);
    Rng rng(seed);
    for (std::int64_t s = 0; s < count; ++s) {
        double* x = ds.inputs.data() + static_cast<std::size_t>(s) * n;
        for (int c = 0; c < n; ++c) x[c] = rng.uniform(-1.0, 1.0);
        eval_target_flat(kind, x, ds.targets.data() + static_cast<std::size_t>(s) * n);
    }
    return ds;
}

double mse(const VMlp& net, const Dataset& ds) {
    if (!net.algebra().same_as(ds.algebra)) throw ValidationError("mse: algebra mismatch");
    if (net.n_inputs() != ds.n_inputs) throw ValidationError("mse: input arity mismatch");
    if (ds.count < 1) throw ValidationError("mse: empty dataset");
    const std::size_t n = static_cast<std::size_t>(ds.algebra.dim());
    VMlpScratch scratch;
    std::vector<double> y(n);
    double total = 0.0;
    for (std::int64_t s = 0; s < ds.count; ++s) {
        net.forward_flat(ds.input_flat(s), y, scratch);
        const std::span<const double> t = ds.target_flat(s);
        for (std::size_t k = 0; k < n; ++k) {
            const double d = y[k] - t[k];
            total += d * d;
        }
    }
    return total / (static_cast<double>(ds.count) * static_cast<double>(n));
}

AdamState::AdamState(std::size_t param_count, double lr_) : lr(lr_) {
    if (param_count == 0) throw ValidationError("AdamState: no parameters");
    if (!(lr > 0.0) || !std::isfinite(lr)) throw ValidationError("AdamState: lr must be positive");
    m.assign(param_count, 0.0);
    v.assign(param_count, 0.0);
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
    if (params.size() != state.m.size() || grads.size() != state.m.size())
        throw ValidationError("adam_step: size mismatch");
    state.step += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    for (std::size_t p = 0; p < params.size(); ++p) {
        const double g = grads[p];
        state.m[p] = state.beta1 * state.m[p] + (1.0 - state.beta1) * g;
        state.v[p] = state.beta2 * state.v[p] + (1.0 - state.beta2) * g * g;
        const double mhat = state.m[p] / bc1;
        const double vhat = state.v[p] / bc2;
        params[p] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
        if (!std::isfinite(params[p]))
            throw NumericError("adam_step: non-finite update for parameter " + std::to_string(p));
    }
}

TrainResult train(const Algebra& a, const TrainConfig& config) {
    // Seed derivation: one root stream yields the dataset, init, and shuffle
    // seeds in that order, so runs are reproducible from the single seed.
    Rng root(config.seed);
    const std::uint64_t ds_seed = root.next_u64();
    const std::uint64_t init_seed = root.next_u64();
    const std::uint64_t shuffle_seed = root.next_u64();

    const Dataset ds = gen_dataset(a, config.target, config.samples, ds_seed);
    VMlp net = VMlp::init(a, 1, config.hidden, config.output_mode, config.activation, init_seed);
    return train_on_dataset(std::move(net), ds, config, shuffle_seed);
}

TrainResult train_on_dataset(VMlp net, const Dataset& ds, const TrainConfig& config,
                             std::uint64_t shuffle_seed) {
    if (!net.algebra().same_as(ds.algebra))
        throw ValidationError("train_on_dataset: algebra mismatch");
    if (net.n_inputs() != ds.n_inputs) throw ValidationError("train_on_dataset: input arity mismatch");
    if (ds.count < 1) throw ValidationError("train_on_dataset: empty dataset");
    if (config.epochs < 0) throw ValidationError("train_on_dataset: epochs must be >= 0");
    if (config.batch < 1) throw ValidationError("train_on_dataset: batch must be >= 1");

    AdamState adam(net.param_count(), config.lr);
    Rng shuffle_rng(shuffle_seed);
    std::vector<std::int64_t> order(static_cast<std::size_t>(ds.count));
    std::iota(order.begin(), order.end(), std::int64_t{0});
    std::vector<double> grad(net.param_count());
    VMlpScratch scratch;
    const double n = static_cast<double>(ds.algebra.dim());

    TrainResult result{std::move(net), {}};
    result.curve.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        std::int64_t batch_index = 0;
        for (std::int64_t start = 0; start < ds.count; start += config.batch, ++batch_index) {
            const std::int64_t stop = std::min<std::int64_t>(start + config.batch, ds.count);
            std::fill(grad.begin(), grad.end(), 0.0);
            try {
                for (std::int64_t t = start; t < stop; ++t) {
                    const std::int64_t s = order[static_cast<std::size_t>(t)];
                    result.net.backward_flat(ds.input_flat(s), ds.target_flat(s), grad, scratch);
                }
                const double scale = 1.0 / (static_cast<double>(stop - start) * n);
                for (double& g : grad) g *= scale;
                adam_step(adam, result.net.params(), grad);
            } catch (const NumericError& e) {
                throw NumericError("epoch " + std::to_string(epoch) + ", batch " +
                                   std::to_string(batch_index) + ": " + e.what());
            }
        }
        const double epoch_mse = mse(result.net, ds);
        if (!std::isfinite(epoch_mse))
            throw NumericError("training diverged at epoch " + std::to_string(epoch));
        result.curve.push_back({epoch, epoch_mse});
    }
    return result;
}

} // namespace vmlp
