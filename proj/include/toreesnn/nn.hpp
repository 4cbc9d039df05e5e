#pragma once

// Dense layers, online gradient descent and the finite-difference gradient oracle
// shared by the forecaster and the error classifier.

#include <cstddef>
#include <iosfwd>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace toreesnn {

enum class ActivationKind { Linear, Hyperbolic, Sin, Cos, Sigmoid };

struct Activation {
    ActivationKind kind = ActivationKind::Sigmoid;
    double gain = 1.0;  // sigmoid slope c; ignored by the other kinds

    static Activation linear() { return {ActivationKind::Linear, 1.0}; }
    static Activation hyperbolic() { return {ActivationKind::Hyperbolic, 1.0}; }
    static Activation sine() { return {ActivationKind::Sin, 1.0}; }
    static Activation cosine() { return {ActivationKind::Cos, 1.0}; }
    static Activation sigmoid(double gain = 1.0) { return {ActivationKind::Sigmoid, gain}; }

    friend bool operator==(const Activation&, const Activation&) = default;
};

std::string_view activation_name(ActivationKind k);
ActivationKind parse_activation(std::string_view name);

double activate(const Activation& a, double x);
double activate_deriv(const Activation& a, double x);

struct DenseLayer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;  // out x in, row-major
    std::vector<double> bias;     // out
    Activation activation;

    DenseLayer() = default;
    DenseLayer(std::size_t in_width, std::size_t out_width, Activation act);

    double& w(std::size_t row, std::size_t col) { return weights[row * in + col]; }
    double w(std::size_t row, std::size_t col) const { return weights[row * in + col]; }

    friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// Throws InvalidArgument on inconsistent shapes, non-finite entries or a bad gain.
void validate(const DenseLayer& l);

inline constexpr double kInitRange = 2.0;

// Uniform on [-kInitRange, kInitRange] for every weight and bias.
DenseLayer random_layer(std::size_t in, std::size_t out, Activation act, std::mt19937_64& rng);

std::vector<double> layer_forward(const DenseLayer& l, std::span<const double> input);

struct Network {
    std::vector<DenseLayer> layers;

    std::size_t input_width() const { return layers.empty() ? 0 : layers.front().in; }
    std::size_t output_width() const { return layers.empty() ? 0 : layers.back().out; }
    std::size_t parameter_count() const;

    friend bool operator==(const Network&, const Network&) = default;
};

void validate(const Network& n);

// Pre-activations and activations of every layer for one input.
struct ForwardTrace {
    std::vector<std::vector<double>> pre;   // per layer
    std::vector<std::vector<double>> post;  // post[0] is the input, post[l+1] layer l output

    std::span<const double> output() const { return post.back(); }
};

ForwardTrace forward_trace(const Network& n, std::span<const double> input);
std::vector<double> network_forward(const Network& n, std::span<const double> input);

// Mean of squared differences (the reported metric).
double mse(std::span<const double> actual, std::span<const double> predicted);
// 0.5 * sum of squared differences (the training loss).
double half_sse(std::span<const double> actual, std::span<const double> predicted);

struct LayerGrad {
    std::vector<double> weights;
    std::vector<double> bias;

    friend bool operator==(const LayerGrad&, const LayerGrad&) = default;
};
using Gradients = std::vector<LayerGrad>;

Gradients zero_gradients(const Network& n);

// dE/dw for E = half_sse(target, output) on a single sample.
Gradients backprop_grads(const Network& n, std::span<const double> input,
                         std::span<const double> target);

// Same gradients from an existing forward trace.
Gradients backprop_from_trace(const Network& n, const ForwardTrace& trace,
                              std::span<const double> target);

struct TrainState {
    double learning_rate = 0.1;
    std::size_t epoch = 0;
    double last_loss = 0.0;
};

// w <- w - learning_rate * g for every parameter.
Network apply_update(const Network& n, const Gradients& g, const TrainState& state);
void apply_update_in_place(Network& n, const Gradients& g, double learning_rate);

// One online step: forward, backprop, update. Returns the sample's half-SSE before the update.
double train_step(Network& n, std::span<const double> input, std::span<const double> target,
                  double learning_rate);

// Gradients magnitudes below this are compared in absolute terms.
constexpr double kGradCheckFloor = 1e-4;

// Central finite differences of half_sse over every parameter, using forward passes only.
Gradients numeric_gradients(const Network& n, std::span<const double> input,
                            std::span<const double> target, double h);

// max over parameters of |analytic - numeric| / max(|analytic|, |numeric|, kGradCheckFloor)
double grad_check(const Network& n, std::span<const double> input,
                  std::span<const double> target, double h = 1e-5);

// Text format, one line per tensor:
//   <layer> activation <kind> <gain>
//   <layer> weights <rows> <cols> v...
//   <layer> bias <rows> 1 v...
// Values are printed with 17 significant digits so reading restores them bit-exactly.
void write_network(std::ostream& os, const Network& n);
Network read_network(std::istream& is, std::size_t layer_count);

}  // namespace toreesnn
