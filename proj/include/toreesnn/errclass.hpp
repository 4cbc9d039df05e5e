#pragma once

// Elman recurrent classifier that predicts the sign class of the next forecast
// error from the last d errors, plus the threshold and magnitude rules around it.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "toreesnn/nn.hpp"

namespace toreesnn {

// -1 if e < -delta, +1 if e > delta, else 0.
int classify_error(double e, double delta);

constexpr double kDeltaFloor = 1e-6;

// Smallest delta with at least `mass` of |errors| <= delta, floored at kDeltaFloor.
double select_delta(std::span<const double> errors, double mass = 0.5);

struct ClassifiedSample {
    std::vector<double> window;  // e(t-1) .. e(t-d)
    int label = 0;               // class of e(t)

    friend bool operator==(const ClassifiedSample&, const ClassifiedSample&) = default;
};

// One sample per t in [d, errors.size()).
std::vector<ClassifiedSample> build_classifier_dataset(std::span<const double> errors, std::size_t d,
                                                       double delta);

// CSV `e_lag1,...,e_lagd,label`.
void write_dataset_csv(std::ostream& os, std::span<const ClassifiedSample> data);

struct ErrorClassifierModel {
    std::size_t d = 0;       // window length
    std::size_t hidden = 0;  // Hc, also the context width
    std::uint64_t seed = 0;
    double delta = 0.0;
    double omega = 0.0;
    // [d + Hc -> Hc, Hc -> 3 sigmoid]. Output unit 0 is class -1, unit 1 class 0, unit 2 class +1.
    Network net;

    friend bool operator==(const ErrorClassifierModel&, const ErrorClassifierModel&) = default;
};

struct ClassifierOptions {
    std::size_t hidden = 10;
    std::size_t epochs = 200;
    double learning_rate = 0.1;
    std::uint64_t seed = 1;
    Activation hidden_activation = Activation::sigmoid();
};

ErrorClassifierModel build_error_classifier(std::size_t d, double delta, const ClassifierOptions& opt);

// Hidden-layer input for one step: the window divided by delta, then the context.
std::vector<double> classifier_input(const ErrorClassifierModel& m, std::span<const double> window,
                                     std::span<const double> context);

// Online training in temporal order against one-hot targets; the context is
// reset to zeros at every epoch start. Samples must all have window length d.
ErrorClassifierModel train_error_classifier(std::span<const ClassifiedSample> data, double delta,
                                            const ClassifierOptions& opt);

// argmax over the outputs, ties resolved toward 0 and then toward -1.
int class_from_outputs(std::span<const double> outputs);

struct Prediction {
    int error_class = 0;
    std::vector<double> context;
    std::array<double, 3> outputs{};
};

Prediction predict_class(const ErrorClassifierModel& m, std::span<const double> window,
                         std::span<const double> context);

// Runs the classifier over consecutive samples from a zero context.
std::vector<int> predict_sequence(const ErrorClassifierModel& m, std::span<const ClassifiedSample> data);

double classification_accuracy(std::span<const int> predicted, std::span<const ClassifiedSample> data);

// +1 -> +omega, 0 -> 0, -1 -> -omega.
double class_to_error(int error_class, double omega);

// Candidate omega minimizing mean (actual - (raw + class * omega))^2; ties go to the smaller omega.
double calibrate_omega(std::span<const double> raw_forecasts, std::span<const double> actuals,
                       std::span<const int> classes, std::span<const double> candidates);

// Header `elman_classifier d Hc delta omega seed`, then the network tensors.
void save_error_classifier(std::ostream& os, const ErrorClassifierModel& m);
ErrorClassifierModel load_error_classifier(std::istream& is);

}  // namespace toreesnn
