#include "toreesnn/errclass.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "toreesnn/error.hpp"

namespace toreesnn {

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
}

std::size_t unit_for_class(int c) { return static_cast<std::size_t>(c + 1); }

}  // namespace

int classify_error(double e, double delta) {
    check_delta(delta);
    if (e < -delta) return -1;
    if (e > delta) return 1;
    return 0;
}

double select_delta(std::span<const double> errors, double mass) {
    if (errors.empty()) throw InvalidArgument("select_delta: no errors");
    if (!(mass > 0.0 && mass < 1.0)) throw InvalidArgument("select_delta: mass must be in (0, 1)");
    std::vector<double> mag(errors.size());
    std::transform(errors.begin(), errors.end(), mag.begin(), [](double e) { return std::abs(e); });
    std::sort(mag.begin(), mag.end());
    const double need = std::ceil(mass * static_cast<double>(mag.size()) - 1e-9);
    const auto idx = static_cast<std::size_t>(std::max(need, 1.0)) - 1;
    return std::max(mag[std::min(idx, mag.size() - 1)], kDeltaFloor);
}

std::vector<ClassifiedSample> build_classifier_dataset(std::span<const double> errors, std::size_t d,
                                                       double delta) {
    check_delta(delta);
    if (d == 0) throw InvalidArgument("classifier window must be >= 1");
    if (errors.size() <= d)
        throw InvalidArgument("classifier window " + std::to_string(d) + " needs more than " +
                              std::to_string(errors.size()) + " errors");
    std::vector<ClassifiedSample> out;
    out.reserve(errors.size() - d);
    for (std::size_t t = d; t < errors.size(); ++t) {
        ClassifiedSample s;
        s.window.resize(d);
        for (std::size_t j = 0; j < d; ++j) s.window[j] = errors[t - 1 - j];
        s.label = classify_error(errors[t], delta);
        out.push_back(std::move(s));
    }
    return out;
}

void write_dataset_csv(std::ostream& os, std::span<const ClassifiedSample> data) {
    const std::size_t d = data.empty() ? 0 : data.front().window.size();
    for (std::size_t j = 0; j < d; ++j) os << "e_lag" << j + 1 << ',';
    os << "label\n";
    const auto old = os.precision(17);
    for (const auto& s : data) {
        for (double v : s.window) os << v << ',';
        os << s.label << '\n';
    }
    os.precision(old);
}

ErrorClassifierModel build_error_classifier(std::size_t d, double delta, const ClassifierOptions& opt) {
    check_delta(delta);
    if (d == 0) throw InvalidArgument("classifier window must be >= 1");
    if (opt.hidden == 0) throw InvalidArgument("classifier hidden width must be >= 1");
    std::mt19937_64 rng(opt.seed);
    ErrorClassifierModel m;
    m.d = d;
    m.hidden = opt.hidden;
    m.seed = opt.seed;
    m.delta = delta;
    m.net.layers.push_back(random_layer(d + opt.hidden, opt.hidden, opt.hidden_activation, rng));
    m.net.layers.push_back(random_layer(opt.hidden, 3, Activation::sigmoid(), rng));
    validate(m.net);
    return m;
}

std::vector<double> classifier_input(const ErrorClassifierModel& m, std::span<const double> window,
                                     std::span<const double> context) {
    if (window.size() != m.d) throw InvalidArgument("classifier window has the wrong length");
    if (context.size() != m.hidden) throw InvalidArgument("classifier context has the wrong length");
    std::vector<double> in;
    in.reserve(m.d + m.hidden);
    for (double e : window) in.push_back(e / m.delta);
    in.insert(in.end(), context.begin(), context.end());
    return in;
}

ErrorClassifierModel train_error_classifier(std::span<const ClassifiedSample> data, double delta,
                                            const ClassifierOptions& opt) {
    if (data.empty()) throw InvalidArgument("classifier training data is empty");
    if (opt.epochs == 0) throw InvalidArgument("classifier epochs must be >= 1");
    if (!(opt.learning_rate >= 0.0)) throw InvalidArgument("classifier learning rate must be non-negative");
    const std::size_t d = data.front().window.size();
    for (const auto& s : data)
        if (s.window.size() != d || s.label < -1 || s.label > 1)
            throw InvalidArgument("classifier sample has a bad window length or label");

    ErrorClassifierModel m = build_error_classifier(d, delta, opt);
    if (opt.learning_rate == 0.0) return m;

    std::vector<double> context(m.hidden);
    std::array<double, 3> target{};
    for (std::size_t epoch = 0; epoch < opt.epochs; ++epoch) {
        std::fill(context.begin(), context.end(), 0.0);
        for (const auto& s : data) {
            target.fill(0.0);
            target[unit_for_class(s.label)] = 1.0;
            const ForwardTrace trace = forward_trace(m.net, classifier_input(m, s.window, context));
            apply_update_in_place(m.net, backprop_from_trace(m.net, trace, target), opt.learning_rate);
            context = trace.post[1];
        }
    }
    return m;
}

int class_from_outputs(std::span<const double> outputs) {
    if (outputs.size() != 3) throw InvalidArgument("classifier must have three outputs");
    std::size_t best = 1;
    if (outputs[0] > outputs[best]) best = 0;
    if (outputs[2] > outputs[best]) best = 2;
    return static_cast<int>(best) - 1;
}

Prediction predict_class(const ErrorClassifierModel& m, std::span<const double> window,
                         std::span<const double> context) {
    const ForwardTrace trace = forward_trace(m.net, classifier_input(m, window, context));
    Prediction p;
    const auto out = trace.output();
    std::copy(out.begin(), out.end(), p.outputs.begin());
    p.error_class = class_from_outputs(out);
    p.context = trace.post[1];
    return p;
}

std::vector<int> predict_sequence(const ErrorClassifierModel& m, std::span<const ClassifiedSample> data) {
    std::vector<double> context(m.hidden, 0.0);
    std::vector<int> out;
    out.reserve(data.size());
    for (const auto& s : data) {
        Prediction p = predict_class(m, s.window, context);
        out.push_back(p.error_class);
        context = std::move(p.context);
    }
    return out;
}

double classification_accuracy(std::span<const int> predicted, std::span<const ClassifiedSample> data) {
    if (predicted.size() != data.size() || data.empty())
        throw InvalidArgument("accuracy: predictions and samples must be non-empty and aligned");
    std::size_t hit = 0;
    for (std::size_t i = 0; i < data.size(); ++i) hit += predicted[i] == data[i].label ? 1 : 0;
    return static_cast<double>(hit) / static_cast<double>(data.size());
}

double class_to_error(int error_class, double omega) {
    if (!(omega >= 0.0)) throw InvalidArgument("omega must be non-negative");
    switch (error_class) {
        case 1: return omega;
        case 0: return 0.0;
        case -1: return -omega;
        default: throw InvalidArgument("invalid error class " + std::to_string(error_class));
    }
}

double calibrate_omega(std::span<const double> raw_forecasts, std::span<const double> actuals,
                       std::span<const int> classes, std::span<const double> candidates) {
    if (candidates.empty()) throw InvalidArgument("calibrate_omega: no candidates");
    if (raw_forecasts.size() != actuals.size() || raw_forecasts.size() != classes.size())
        throw InvalidArgument("calibrate_omega: inputs differ in length");
    if (raw_forecasts.empty()) throw InvalidArgument("calibrate_omega: no samples");
    std::vector<double> sorted(candidates.begin(), candidates.end());
    std::sort(sorted.begin(), sorted.end());
    double best = sorted.front();
    double best_mse = 0.0;
    bool first = true;
    for (double omega : sorted) {
        double sse = 0.0;
        for (std::size_t i = 0; i < actuals.size(); ++i) {
            const double d = actuals[i] - (raw_forecasts[i] + class_to_error(classes[i], omega));
            sse += d * d;
        }
        const double m = sse / static_cast<double>(actuals.size());
        if (first || m < best_mse) {
            best = omega;
            best_mse = m;
            first = false;
        }
    }
    return best;
}

void save_error_classifier(std::ostream& os, const ErrorClassifierModel& m) {
    const auto old = os.precision(17);
    os << "elman_classifier " << m.d << ' ' << m.hidden << ' ' << m.delta << ' ' << m.omega << ' '
       << m.seed << '\n';
    os.precision(old);
    write_network(os, m.net);
}

ErrorClassifierModel load_error_classifier(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidArgument("classifier model: missing header");
    std::istringstream hs(line);
    std::string tag;
    ErrorClassifierModel m;
    if (!(hs >> tag >> m.d >> m.hidden >> m.delta >> m.omega >> m.seed) || tag != "elman_classifier")
        throw InvalidArgument("classifier model: bad header '" + line + "'");
    m.net = read_network(is, 2);
    if (m.net.layers[0].in != m.d + m.hidden || m.net.layers[0].out != m.hidden ||
        m.net.layers[1].out != 3)
        throw InvalidArgument("classifier model: tensor shapes do not match header");
    return m;
}

}  // namespace toreesnn
