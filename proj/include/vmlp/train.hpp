#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vmlp/network.hpp"

namespace vmlp {

// Fixed regression dataset with flat sample-major storage. inputs holds
// count * n_inputs * dim values, targets holds count * dim.
struct Dataset {
    Algebra algebra;
    int n_inputs = 1;
    std::int64_t count = 0;
    std::vector<double> inputs;
    std::vector<double> targets;
    std::uint64_t seed = 0;

    std::span<const double> input_flat(std::int64_t sample) const;
    std::span<const double> target_flat(std::int64_t sample) const;
    std::vector<Element> input_tuple(std::int64_t sample) const;
    Element target(std::int64_t sample) const;
};

const std::vector<std::string>& target_names();

// quad2d (dimension 2): (c0^2 - c1^2, c0^2 + c0 c1 + c1^2).
// quad4d (dimension 4): component k is c_k^2 + c_{k+1} c_{k+2} + c_{k+3}^2,
// indices mod 4.
Element eval_target(const std::string& name, const Element& x);

// Samples count inputs with coefficients uniform on [-1, 1] (coefficients
// drawn in component order per sample) and fills in the target values.
Dataset gen_dataset(const Algebra& a, const std::string& target, std::int64_t count,
                    std::uint64_t seed);

// Mean over samples and output components of the squared error (the
// per-element convention the experiment plateaus are quoted in).
double mse(const VMlp& net, const Dataset& ds);

struct AdamState {
    double lr;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::int64_t step = 0;
    std::vector<double> m;
    std::vector<double> v;

    AdamState(std::size_t param_count, double lr);
};

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads);

struct EpochRecord {
    int epoch; // 1-based
    double mse;
};

struct TrainConfig {
    std::string target = "quad2d";
    int hidden = 128;
    OutputMode output_mode = OutputMode::scalar;
    Activation activation = Activation::relu;
    std::int64_t samples = 1024;
    int epochs = 1000;
    int batch = 64;
    double lr = 1e-3;
    std::uint64_t seed = 0;
};

struct TrainResult {
    VMlp net;
    std::vector<EpochRecord> curve;
};

// Full experiment run: derives dataset, init, and shuffle seeds from
// config.seed, generates the dataset, and fits a single-input V-MLP.
TrainResult train(const Algebra& a, const TrainConfig& config);

// Minibatch Adam on an existing network and dataset. Batches use the mean
// per-element gradient; the curve records full-dataset mse after each epoch.
TrainResult train_on_dataset(VMlp net, const Dataset& ds, const TrainConfig& config,
                             std::uint64_t shuffle_seed);

} // namespace vmlp
