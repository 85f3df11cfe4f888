#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vmlp/algebra.hpp"
#include "vmlp/functional.hpp"

namespace vmlp {

// relu and logistic vanish at minus infinity, which is what the constructive
// assembly relies on. identity is for tests only and approximates nothing;
// tanh is an extra choice unused by the stock experiments.
enum class Activation { relu, logistic, identity, tanh };

Activation activation_from_name(const std::string& name);
const char* activation_name(Activation act);
double activate(Activation act, double t);
double activate_derivative(Activation act, double t); // relu subgradient at 0 is 0

// Applies the real activation to each coefficient (the split convention).
Element split_apply(Activation act, const Element& x);

enum class OutputMode { scalar, vector };

OutputMode output_mode_from_name(const std::string& name);
const char* output_mode_name(OutputMode mode);

// Reusable buffers for the flat forward/backward paths so the training loop
// does not allocate per sample.
struct VMlpScratch {
    std::vector<double> tx; // (j, k, a): component a of B_k phi(x_j)
    std::vector<double> s;  // hidden pre-activations, M x n
    std::vector<double> h;  // hidden activations, M x n
    std::vector<double> y;  // output, n
    std::vector<double> gy; // dloss/dy, n
    std::vector<double> ds; // dloss/ds_i, n
    std::vector<double> gh; // dloss/dphi(h_i), n (vector mode)
    std::vector<double> gb; // sum_k gy_k B_k, n x n (vector mode)
};

// Loss gradient container; `values` uses exactly the VMlp parameter layout.
struct Gradients {
    std::vector<double> values;
};

// Single-hidden-layer vector-valued MLP over a fixed algebra:
//   out = sum_i alpha_i . psi(sum_j w_ij x_j + b_i)
// with real alpha_i in scalar mode and algebra-valued alpha_i in vector mode.
//
// Flat parameter layout, which is also the checkpoint order: hidden weights
// indexed (i, j, component), then hidden biases (i, component), then output
// weights, (i) in scalar mode or (i, component) in vector mode.
class VMlp {
public:
    VMlp(Algebra algebra, int n_inputs, int n_hidden, OutputMode mode, Activation act);

    static VMlp init(const Algebra& algebra, int n_inputs, int n_hidden, OutputMode mode,
                     Activation act, std::uint64_t seed);

    const Algebra& algebra() const { return algebra_; }
    int n_inputs() const { return n_inputs_; }
    int n_hidden() const { return n_hidden_; }
    OutputMode output_mode() const { return mode_; }
    Activation activation() const { return act_; }

    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }
    std::size_t param_count() const { return params_.size(); }

    Element weight(int i, int j) const;
    Element bias(int i) const;
    double output_weight(int i) const;          // scalar mode only
    Element output_weight_element(int i) const; // vector mode only
    void set_weight(int i, int j, const Element& w);
    void set_bias(int i, const Element& b);
    void set_output_weight(int i, double alpha);
    void set_output_weight(int i, const Element& alpha);

    Element forward(std::span<const Element> xs) const;

    // Flat fast path. xs is the concatenation of the input coefficient
    // vectors (n_inputs * dim values); out receives dim values.
    void forward_flat(std::span<const double> xs, std::span<double> out,
                      VMlpScratch& scratch) const;

    // Accumulates the gradient of |out - target|^2 into grad (same layout as
    // params) and returns that squared-norm loss.
    double backward_flat(std::span<const double> xs, std::span<const double> target,
                         std::span<double> grad, VMlpScratch& scratch) const;

private:
    void check_unit(int i) const;
    std::size_t weight_offset(int i, int j) const;
    std::size_t bias_offset(int i) const;

    Algebra algebra_;
    int n_inputs_;
    int n_hidden_;
    OutputMode mode_;
    Activation act_;
    std::size_t bias_base_ = 0;
    std::size_t output_base_ = 0;
    std::vector<double> params_;
};

std::pair<double, Gradients> backward(const VMlp& net, std::span<const Element> xs,
                                      const Element& target);

// One-hidden-layer real MLP with explicit linear functionals, the per
// component ingredient of the constructive assembly.
struct RealMlp {
    std::vector<LinearFunctional> functionals; // unit i computes alphas[i] psi(L_i(x) + biases[i])
    std::vector<double> alphas;
    std::vector<double> biases;

    double eval_flat(std::span<const double> x, Activation act) const;
};

// Constructive assembly: converts each component net's functionals into
// algebra weights via represent(), places the real bias in component k and
// lambda in every other component, and concatenates all hidden units into
// one scalar-output V-MLP. For activations vanishing at minus infinity the
// cross-component remainder goes to zero as lambda decreases.
VMlp assemble_from_components(const Algebra& a, std::span<const RealMlp> real_nets,
                              double lambda, Activation act = Activation::relu);

} // namespace vmlp
