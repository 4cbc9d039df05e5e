#include "toreesnn/nn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "toreesnn/error.hpp"
#include "toreesnn/kernels.hpp"

namespace toreesnn {

std::string_view activation_name(ActivationKind k) {
    switch (k) {
        case ActivationKind::Linear: return "linear";
        case ActivationKind::Hyperbolic: return "hyperbolic";
        case ActivationKind::Sin: return "sin";
        case ActivationKind::Cos: return "cos";
        case ActivationKind::Sigmoid: return "sigmoid";
    }
    return "linear";
}

ActivationKind parse_activation(std::string_view name) {
    if (name == "linear") return ActivationKind::Linear;
    if (name == "hyperbolic" || name == "tanh") return ActivationKind::Hyperbolic;
    if (name == "sin") return ActivationKind::Sin;
    if (name == "cos") return ActivationKind::Cos;
    if (name == "sigmoid") return ActivationKind::Sigmoid;
    throw InvalidArgument("unknown activation '" + std::string(name) + "'");
}

double activate(const Activation& a, double x) {
    switch (a.kind) {
        case ActivationKind::Linear: return x;
        case ActivationKind::Hyperbolic: return std::tanh(x);
        case ActivationKind::Sin: return std::sin(x);
        case ActivationKind::Cos: return std::cos(x);
        case ActivationKind::Sigmoid: return 1.0 / (1.0 + std::exp(-a.gain * x));
    }
    return x;
}

double activate_deriv(const Activation& a, double x) {
    switch (a.kind) {
        case ActivationKind::Linear: return 1.0;
        case ActivationKind::Hyperbolic: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case ActivationKind::Sin: return std::cos(x);
        case ActivationKind::Cos: return -std::sin(x);
        case ActivationKind::Sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-a.gain * x));
            return a.gain * s * (1.0 - s);
        }
    }
    return 1.0;
}

DenseLayer::DenseLayer(std::size_t in_width, std::size_t out_width, Activation act)
    : in(in_width), out(out_width), weights(in_width * out_width, 0.0), bias(out_width, 0.0),
      activation(act) {}

void validate(const DenseLayer& l) {
    if (l.in == 0 || l.out == 0) throw InvalidArgument("dense layer has a zero dimension");
    if (l.weights.size() != l.in * l.out || l.bias.size() != l.out)
        throw InvalidArgument("dense layer storage does not match its declared shape");
    if (l.activation.kind == ActivationKind::Sigmoid && !(l.activation.gain > 0.0))
        throw InvalidArgument("sigmoid gain must be positive");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(l.weights.begin(), l.weights.end(), finite) ||
        !std::all_of(l.bias.begin(), l.bias.end(), finite))
        throw InvalidArgument("dense layer has non-finite parameters");
}

DenseLayer random_layer(std::size_t in, std::size_t out, Activation act, std::mt19937_64& rng) {
    DenseLayer l(in, out, act);
    std::uniform_real_distribution<double> dist(-kInitRange, kInitRange);
    for (double& w : l.weights) w = dist(rng);
    for (double& b : l.bias) b = dist(rng);
    return l;
}

namespace {

void forward_into(const DenseLayer& l, std::span<const double> input, std::vector<double>& pre,
                  std::vector<double>& post) {
    pre.resize(l.out);
    post.resize(l.out);
    kernels::active().gemv(l.weights.data(), input.data(), l.bias.data(), pre.data(), l.out, l.in);
    for (std::size_t i = 0; i < l.out; ++i) post[i] = activate(l.activation, pre[i]);
}

void check_input(const DenseLayer& l, std::size_t width) {
    if (width != l.in)
        throw InvalidArgument("input width " + std::to_string(width) + " does not match layer width " +
                              std::to_string(l.in));
}

}  // namespace

std::vector<double> layer_forward(const DenseLayer& l, std::span<const double> input) {
    check_input(l, input.size());
    std::vector<double> pre, post;
    forward_into(l, input, pre, post);
    return post;
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.size() + l.bias.size();
    return n;
}

void validate(const Network& n) {
    if (n.layers.empty()) throw InvalidArgument("network has no layers");
    for (std::size_t i = 0; i < n.layers.size(); ++i) {
        validate(n.layers[i]);
        if (i > 0 && n.layers[i].in != n.layers[i - 1].out)
            throw InvalidArgument("layer " + std::to_string(i) + " input width does not match the previous layer");
    }
}

ForwardTrace forward_trace(const Network& n, std::span<const double> input) {
    if (n.layers.empty()) throw InvalidArgument("network has no layers");
    check_input(n.layers.front(), input.size());
    ForwardTrace t;
    t.pre.resize(n.layers.size());
    t.post.resize(n.layers.size() + 1);
    t.post[0].assign(input.begin(), input.end());
    for (std::size_t l = 0; l < n.layers.size(); ++l)
        forward_into(n.layers[l], t.post[l], t.pre[l], t.post[l + 1]);
    return t;
}

std::vector<double> network_forward(const Network& n, std::span<const double> input) {
    return std::move(forward_trace(n, input).post.back());
}

namespace {

void check_pair(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidArgument("vectors differ in length");
    if (a.empty()) throw InvalidArgument("vectors are empty");
}

}  // namespace

double mse(std::span<const double> actual, std::span<const double> predicted) {
    check_pair(actual, predicted);
    return kernels::sum_sq_diff(actual, predicted) / static_cast<double>(actual.size());
}

double half_sse(std::span<const double> actual, std::span<const double> predicted) {
    check_pair(actual, predicted);
    return 0.5 * kernels::sum_sq_diff(actual, predicted);
}

Gradients zero_gradients(const Network& n) {
    Gradients g(n.layers.size());
    for (std::size_t l = 0; l < n.layers.size(); ++l) {
        g[l].weights.assign(n.layers[l].weights.size(), 0.0);
        g[l].bias.assign(n.layers[l].bias.size(), 0.0);
    }
    return g;
}

Gradients backprop_from_trace(const Network& n, const ForwardTrace& trace,
                              std::span<const double> target) {
    if (target.size() != n.output_width())
        throw InvalidArgument("target width does not match network output");
    const auto& k = kernels::active();
    Gradients g = zero_gradients(n);

    // delta = dE/d(pre-activation) of the current layer
    const auto out = trace.output();
    std::vector<double> delta(out.size());
    const DenseLayer& last = n.layers.back();
    for (std::size_t i = 0; i < delta.size(); ++i)
        delta[i] = (out[i] - target[i]) * activate_deriv(last.activation, trace.pre.back()[i]);

    std::vector<double> back;
    for (std::size_t l = n.layers.size(); l-- > 0;) {
        const DenseLayer& layer = n.layers[l];
        k.outer(delta.data(), layer.out, trace.post[l].data(), layer.in, g[l].weights.data());
        g[l].bias = delta;
        if (l == 0) break;
        back.resize(layer.in);
        k.gemv_t(layer.weights.data(), delta.data(), back.data(), layer.out, layer.in);
        const DenseLayer& below = n.layers[l - 1];
        delta.resize(layer.in);
        for (std::size_t i = 0; i < layer.in; ++i)
            delta[i] = back[i] * activate_deriv(below.activation, trace.pre[l - 1][i]);
    }
    return g;
}

Gradients backprop_grads(const Network& n, std::span<const double> input,
                         std::span<const double> target) {
    return backprop_from_trace(n, forward_trace(n, input), target);
}

namespace {

void check_shape(const Network& n, const Gradients& g) {
    if (g.size() != n.layers.size()) throw InvalidArgument("gradient layer count does not match network");
    for (std::size_t l = 0; l < g.size(); ++l)
        if (g[l].weights.size() != n.layers[l].weights.size() ||
            g[l].bias.size() != n.layers[l].bias.size())
            throw InvalidArgument("gradient shape does not match layer " + std::to_string(l));
}

}  // namespace

void apply_update_in_place(Network& n, const Gradients& g, double learning_rate) {
    check_shape(n, g);
    for (std::size_t l = 0; l < g.size(); ++l) {
        kernels::axpy(-learning_rate, g[l].weights, n.layers[l].weights);
        kernels::axpy(-learning_rate, g[l].bias, n.layers[l].bias);
    }
}

Network apply_update(const Network& n, const Gradients& g, const TrainState& state) {
    if (!(state.learning_rate >= 0.0)) throw InvalidArgument("learning rate must be non-negative");
    Network out = n;
    apply_update_in_place(out, g, state.learning_rate);
    return out;
}

double train_step(Network& n, std::span<const double> input, std::span<const double> target,
                  double learning_rate) {
    const ForwardTrace trace = forward_trace(n, input);
    const double loss = half_sse(target, trace.output());
    if (learning_rate != 0.0) apply_update_in_place(n, backprop_from_trace(n, trace, target), learning_rate);
    return loss;
}

Gradients numeric_gradients(const Network& n, std::span<const double> input,
                            std::span<const double> target, double h) {
    if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
    Network probe = n;
    Gradients g = zero_gradients(n);
    auto loss = [&] { return half_sse(target, network_forward(probe, input)); };
    auto central = [&](double& param) {
        const double saved = param;
        param = saved + h;
        const double up = loss();
        param = saved - h;
        const double down = loss();
        param = saved;
        return (up - down) / (2.0 * h);
    };
    for (std::size_t l = 0; l < probe.layers.size(); ++l) {
        auto& layer = probe.layers[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) g[l].weights[i] = central(layer.weights[i]);
        for (std::size_t i = 0; i < layer.bias.size(); ++i) g[l].bias[i] = central(layer.bias[i]);
    }
    return g;
}

double grad_check(const Network& n, std::span<const double> input, std::span<const double> target,
                  double h) {
    if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
    const Gradients analytic = backprop_grads(n, input, target);
    const Gradients numeric = numeric_gradients(n, input, target, h);
    double worst = 0.0;
    auto compare = [&](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double scale = std::max({std::abs(a[i]), std::abs(b[i]), kGradCheckFloor});
            worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
        }
    };
    for (std::size_t l = 0; l < analytic.size(); ++l) {
        compare(analytic[l].weights, numeric[l].weights);
        compare(analytic[l].bias, numeric[l].bias);
    }
    return worst;
}

void write_network(std::ostream& os, const Network& n) {
    const auto old = os.precision(17);
    for (std::size_t l = 0; l < n.layers.size(); ++l) {
        const auto& layer = n.layers[l];
        os << l << " activation " << activation_name(layer.activation.kind) << ' '
           << layer.activation.gain << '\n';
        os << l << " weights " << layer.out << ' ' << layer.in;
        for (double v : layer.weights) os << ' ' << v;
        os << '\n' << l << " bias " << layer.out << " 1";
        for (double v : layer.bias) os << ' ' << v;
        os << '\n';
    }
    os.precision(old);
}

Network read_network(std::istream& is, std::size_t layer_count) {
    Network n;
    n.layers.resize(layer_count);
    auto expect_line = [&](std::size_t l, std::string_view kind) {
        std::string line;
        if (!std::getline(is, line)) throw InvalidArgument("model file truncated before layer " + std::to_string(l));
        std::istringstream ls(line);
        std::size_t idx = 0;
        std::string k;
        if (!(ls >> idx >> k) || idx != l || k != kind)
            throw InvalidArgument("model file: expected '" + std::to_string(l) + ' ' + std::string(kind) +
                                  "', got '" + line + "'");
        return ls;
    };
    auto read_values = [](std::istringstream& ls, std::vector<double>& dst, std::size_t count) {
        dst.resize(count);
        for (double& v : dst)
            if (!(ls >> v)) throw InvalidArgument("model file: missing tensor values");
        double extra = 0.0;
        if (ls >> extra) throw InvalidArgument("model file: trailing tensor values");
    };
    for (std::size_t l = 0; l < layer_count; ++l) {
        auto& layer = n.layers[l];
        {
            auto ls = expect_line(l, "activation");
            std::string kind;
            if (!(ls >> kind >> layer.activation.gain)) throw InvalidArgument("model file: bad activation line");
            layer.activation.kind = parse_activation(kind);
        }
        {
            auto ls = expect_line(l, "weights");
            if (!(ls >> layer.out >> layer.in)) throw InvalidArgument("model file: bad weights header");
            read_values(ls, layer.weights, layer.out * layer.in);
        }
        {
            auto ls = expect_line(l, "bias");
            std::size_t rows = 0, cols = 0;
            if (!(ls >> rows >> cols) || rows != layer.out || cols != 1)
                throw InvalidArgument("model file: bias shape does not match weights");
            read_values(ls, layer.bias, rows);
        }
    }
    validate(n);
    return n;
}

}  // namespace toreesnn
