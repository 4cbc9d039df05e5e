#pragma once

// Recursive extended exponential smoothing network: a Jordan-style forecaster
// fed with its own last k forecasts and the last k observed forecast errors.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "toreesnn/nn.hpp"
#include "toreesnn/records.hpp"
#include "toreesnn/series.hpp"

namespace toreesnn {

struct ReesnnModel {
    std::size_t k = 0;       // lag order
    std::size_t hidden = 0;  // hidden width H
    std::uint64_t seed = 0;
    Network net;             // [2k -> H sigmoid, H -> 1 sigmoid]

    friend bool operator==(const ReesnnModel&, const ReesnnModel&) = default;
};

ReesnnModel build_reesnn(std::size_t k, std::size_t hidden, std::uint64_t seed,
                         double sigmoid_gain = 1.0);

// [y(t) .. y(t-k+1), e(t) .. e(t-k+1)], both histories newest-first.
std::vector<double> reesnn_input(std::span<const double> y_hist, std::span<const double> e_hist);

double reesnn_forward(const ReesnnModel& m, std::span<const double> input);

// Rolling forecast/error histories. Seeded from actuals: the forecast history
// takes the last k warm-up actuals, the error history starts at zero.
class LagState {
public:
    LagState(std::size_t k, std::span<const double> warmup_actuals);

    std::vector<double> input() const { return reesnn_input(forecasts_, errors_); }
    // Shift in the forecast made for this step and the actual observed afterwards.
    void push(double forecast, double actual);

    std::span<const double> forecasts() const { return forecasts_; }
    std::span<const double> errors() const { return errors_; }

private:
    std::vector<double> forecasts_;
    std::vector<double> errors_;
};

struct ReesnnTraining {
    ReesnnModel model;
    std::vector<ForecastRecord> records;  // last epoch, forecasts taken before each update
    std::vector<double> epoch_mse;
};

// Online training in temporal order, one weight update per step; the histories are
// reset at every epoch start. `values` must lie in [0, 1].
ReesnnTraining train_reesnn(const ReesnnModel& m, std::span<const double> values,
                            std::size_t epochs, double learning_rate);
ReesnnTraining train_reesnn(const ReesnnModel& m, const TimeSeries& series, std::size_t epochs,
                            double learning_rate);

// Frozen-weight one-step-ahead pass. The first `warmup` samples seed the histories;
// one record per remaining sample.
std::vector<ForecastRecord> reesnn_forecast(const ReesnnModel& m, std::span<const double> values,
                                            std::size_t warmup);
std::vector<ForecastRecord> reesnn_forecast(const ReesnnModel& m, const TimeSeries& series,
                                            std::size_t warmup);

// Header line `reesnn k H seed`, then the network tensors.
void save_reesnn(std::ostream& os, const ReesnnModel& m);
ReesnnModel load_reesnn(std::istream& is);

}  // namespace toreesnn
