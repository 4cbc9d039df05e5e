#include "toreesnn/reesnn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "toreesnn/error.hpp"

namespace toreesnn {

ReesnnModel build_reesnn(std::size_t k, std::size_t hidden, std::uint64_t seed, double sigmoid_gain) {
    if (k == 0) throw InvalidArgument("reesnn: lag order k must be >= 1");
    if (hidden == 0) throw InvalidArgument("reesnn: hidden width must be >= 1");
    std::mt19937_64 rng(seed);
    ReesnnModel m;
    m.k = k;
    m.hidden = hidden;
    m.seed = seed;
    const auto act = Activation::sigmoid(sigmoid_gain);
    m.net.layers.push_back(random_layer(2 * k, hidden, act, rng));
    m.net.layers.push_back(random_layer(hidden, 1, act, rng));
    validate(m.net);
    return m;
}

std::vector<double> reesnn_input(std::span<const double> y_hist, std::span<const double> e_hist) {
    if (y_hist.size() != e_hist.size() || y_hist.empty())
        throw InvalidArgument("reesnn: forecast and error histories must both have length k");
    std::vector<double> in;
    in.reserve(2 * y_hist.size());
    in.insert(in.end(), y_hist.begin(), y_hist.end());
    in.insert(in.end(), e_hist.begin(), e_hist.end());
    return in;
}

double reesnn_forward(const ReesnnModel& m, std::span<const double> input) {
    if (input.size() != 2 * m.k) throw InvalidArgument("reesnn: input must have 2k entries");
    return network_forward(m.net, input)[0];
}

LagState::LagState(std::size_t k, std::span<const double> warmup_actuals)
    : forecasts_(k), errors_(k, 0.0) {
    if (k == 0) throw InvalidArgument("reesnn: lag order k must be >= 1");
    if (warmup_actuals.size() < k) throw InvalidArgument("reesnn: warm-up shorter than k");
    // newest first
    for (std::size_t i = 0; i < k; ++i) forecasts_[i] = warmup_actuals[warmup_actuals.size() - 1 - i];
}

void LagState::push(double forecast, double actual) {
    std::rotate(forecasts_.rbegin(), forecasts_.rbegin() + 1, forecasts_.rend());
    std::rotate(errors_.rbegin(), errors_.rbegin() + 1, errors_.rend());
    forecasts_[0] = forecast;
    errors_[0] = actual - forecast;
}

namespace {

void check_unit_interval(std::span<const double> values) {
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("reesnn: series must be normalized to [0, 1]");
}

}  // namespace

ReesnnTraining train_reesnn(const ReesnnModel& m, std::span<const double> values,
                            std::size_t epochs, double learning_rate) {
    if (epochs == 0) throw InvalidArgument("reesnn: epochs must be >= 1");
    if (!(learning_rate >= 0.0)) throw InvalidArgument("reesnn: learning rate must be non-negative");
    if (values.size() <= m.k + 1) throw InvalidArgument("reesnn: series too short for lag order");
    check_unit_interval(values);

    ReesnnTraining out;
    out.model = m;
    Network& net = out.model.net;
    double target[1] = {0.0};

    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        LagState lags(m.k, values.first(m.k));
        const bool last = epoch + 1 == epochs;
        if (last) out.records.reserve(values.size() - m.k);
        double sse = 0.0;
        for (std::size_t t = m.k; t < values.size(); ++t) {
            const std::vector<double> input = lags.input();
            target[0] = values[t];
            const ForwardTrace trace = forward_trace(net, input);
            const double forecast = trace.output()[0];
            if (!std::isfinite(forecast)) throw DivergenceError("reesnn training produced a non-finite forecast", t);
            if (learning_rate != 0.0)
                apply_update_in_place(net, backprop_from_trace(net, trace, target), learning_rate);
            const double e = values[t] - forecast;
            sse += e * e;
            if (last) out.records.push_back(make_record(t, values[t], forecast));
            lags.push(forecast, values[t]);
        }
        out.epoch_mse.push_back(sse / static_cast<double>(values.size() - m.k));
    }
    return out;
}

ReesnnTraining train_reesnn(const ReesnnModel& m, const TimeSeries& series, std::size_t epochs,
                            double learning_rate) {
    if (!series.normalized) throw InvalidArgument("reesnn: series must be normalized");
    return train_reesnn(m, series.values, epochs, learning_rate);
}

std::vector<ForecastRecord> reesnn_forecast(const ReesnnModel& m, std::span<const double> values,
                                            std::size_t warmup) {
    if (warmup < m.k) throw InvalidArgument("reesnn: warm-up must be >= k");
    if (values.size() < warmup + 1) throw InvalidArgument("reesnn: series shorter than warm-up + 1");
    check_unit_interval(values);
    LagState lags(m.k, values.first(warmup));
    std::vector<ForecastRecord> records;
    records.reserve(values.size() - warmup);
    for (std::size_t t = warmup; t < values.size(); ++t) {
        const double forecast = reesnn_forward(m, lags.input());
        records.push_back(make_record(t, values[t], forecast));
        lags.push(forecast, values[t]);
    }
    return records;
}

std::vector<ForecastRecord> reesnn_forecast(const ReesnnModel& m, const TimeSeries& series,
                                            std::size_t warmup) {
    if (!series.normalized) throw InvalidArgument("reesnn: series must be normalized");
    return reesnn_forecast(m, series.values, warmup);
}

void save_reesnn(std::ostream& os, const ReesnnModel& m) {
    os << "reesnn " << m.k << ' ' << m.hidden << ' ' << m.seed << '\n';
    write_network(os, m.net);
}

ReesnnModel load_reesnn(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidArgument("reesnn model: missing header");
    std::istringstream hs(line);
    std::string tag;
    ReesnnModel m;
    if (!(hs >> tag >> m.k >> m.hidden >> m.seed) || tag != "reesnn")
        throw InvalidArgument("reesnn model: bad header '" + line + "'");
    m.net = read_network(is, 2);
    if (m.net.layers[0].in != 2 * m.k || m.net.layers[0].out != m.hidden || m.net.layers[1].out != 1)
        throw InvalidArgument("reesnn model: tensor shapes do not match header");
    return m;
}

}  // namespace toreesnn
