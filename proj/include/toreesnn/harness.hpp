#pragma once

// End-to-end experiment: generate -> normalize -> split -> train forecaster ->
// harvest errors -> pick delta -> train classifier -> calibrate omega -> correct
// the test forecasts -> report.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "toreesnn/errclass.hpp"
#include "toreesnn/nn.hpp"
#include "toreesnn/records.hpp"
#include "toreesnn/reesnn.hpp"
#include "toreesnn/series.hpp"

namespace toreesnn {

struct SplitSizes {
    std::size_t forecaster = 500;  // A: trains the forecaster
    std::size_t classifier = 500;  // B: trains the classifier and calibrates omega
    std::size_t test = 500;        // C: evaluation only

    std::size_t total() const { return forecaster + classifier + test; }
};

struct ExperimentConfig {
    Origin benchmark = Origin::MackeyGlass;
    MgParams mg;
    NarmaParams narma;
    LorenzParams lorenz;
    HenonParams henon;

    std::size_t k = 5;
    std::size_t hidden = 10;
    std::size_t window = 5;             // d
    std::size_t classifier_hidden = 10;  // Hc
    std::size_t epochs_forecaster = 200;
    std::size_t epochs_classifier = 200;
    double lr_forecaster = 0.1;
    double lr_classifier = 0.1;
    double sigmoid_gain = 1.0;
    ActivationKind classifier_activation = ActivationKind::Sigmoid;
    double delta_mass = 0.5;
    // omega candidates, as multiples of the selected delta
    std::vector<double> omega_fractions{0.0, 0.25, 0.5, 0.75, 1.0};
    double holdout_fraction = 0.2;  // trailing share of B kept out of classifier training
    double taylor_dt = 1.0;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    SplitSizes split;
    std::size_t warmup = 100;
    bool parallel = true;

    std::size_t series_length() const { return warmup + split.total(); }
};

void validate(const ExperimentConfig& cfg);

// Flat `key = value` lines, `#` starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_file(const std::filesystem::path& path);
// Key reference with defaults, as printed by `--help`.
std::string config_help();

// Generates the configured benchmark (NARMA draws its inputs from `seed`) and
// normalizes the whole series to [0, 1].
TimeSeries generate_benchmark(const ExperimentConfig& cfg, std::uint64_t seed);

struct Segments {
    std::size_t offset_a = 0, offset_b = 0, offset_c = 0;
    std::span<const double> a, b, c;
};

Segments split_series(std::span<const double> values, std::size_t warmup, const SplitSizes& split);

struct SeedResult {
    std::uint64_t seed = 0;
    double mse_train_reesnn = 0.0;
    double mse_test_reesnn = 0.0;
    double mse_test_toreesnn = 0.0;
    double delta = 0.0;
    double omega = 0.0;
    double classifier_accuracy = 0.0;
    ReesnnModel forecaster;
    ErrorClassifierModel classifier;
    std::vector<double> epoch_mse;
    std::vector<ForecastRecord> trace;  // test split, with corrections
};

// Full pipeline for one seed over already split data. Only `seg.c` is read by
// the evaluation stage; every training and calibration stage sees A and B only.
SeedResult run_seed(const Segments& seg, const ExperimentConfig& cfg, std::uint64_t seed);

struct Aggregate {
    double median = 0.0;
    double min = 0.0;
};

struct ExperimentReport {
    Origin benchmark = Origin::MackeyGlass;
    std::vector<SeedResult> runs;
    Aggregate train_reesnn, test_reesnn, test_toreesnn;
};

Aggregate aggregate(std::span<const double> values);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct PublishedMse {
    double reesnn = 0.0;
    double toreesnn = 0.0;
};

// Published test MSEs for the forecaster and the corrected forecaster.
PublishedMse published_mse(Origin benchmark);

struct ComparisonRow {
    std::string method;
    double achieved_median = 0.0;
    double achieved_min = 0.0;
    double published = 0.0;
    double ratio = 0.0;  // achieved median / published
};

struct Comparison {
    Origin benchmark = Origin::MackeyGlass;
    std::vector<ComparisonRow> rows;
};

Comparison compare_to_published(const ExperimentReport& report, Origin benchmark);

void write_comparison(std::ostream& os, const Comparison& c);
void write_report_text(std::ostream& os, const ExperimentReport& report);
void write_report_csv(std::ostream& os, const ExperimentReport& report);
// report.txt, report.csv and trace_<seed>.csv.
void write_report_files(const std::filesystem::path& dir, const ExperimentReport& report);

}  // namespace toreesnn
