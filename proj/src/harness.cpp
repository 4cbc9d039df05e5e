#include "toreesnn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <string>

#include "toreesnn/error.hpp"
#include "toreesnn/taylor.hpp"

namespace toreesnn {
namespace {

template <typename F>
auto stage(const char* name, std::uint64_t seed, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const DivergenceError& e) {
        throw StageError(name, seed, e.what(), true);
    } catch (const Error& e) {
        throw StageError(name, seed, e.what(), false);
    }
}

}  // namespace

TimeSeries generate_benchmark(const ExperimentConfig& cfg, std::uint64_t seed) {
    const std::size_t n = cfg.series_length();
    TimeSeries raw;
    switch (cfg.benchmark) {
        case Origin::MackeyGlass: raw = gen_mackey_glass(cfg.mg, n); break;
        case Origin::Narma: raw = gen_narma(cfg.narma, n, seed).target; break;
        case Origin::Lorenz: raw = gen_lorenz(cfg.lorenz, n); break;
        case Origin::Henon: raw = gen_henon(cfg.henon, n); break;
        case Origin::External: throw InvalidArgument("external series cannot be generated");
    }
    raw.seed = seed;
    return normalize(raw);
}

Segments split_series(std::span<const double> values, std::size_t warmup, const SplitSizes& split) {
    if (split.forecaster == 0 || split.classifier == 0 || split.test == 0)
        throw InvalidArgument("split counts must be positive");
    const std::size_t need = warmup + split.total();
    if (values.size() < need)
        throw InvalidArgument("series of " + std::to_string(values.size()) + " samples is shorter than warmup + splits = " +
                              std::to_string(need));
    Segments s;
    s.offset_a = warmup;
    s.offset_b = s.offset_a + split.forecaster;
    s.offset_c = s.offset_b + split.classifier;
    s.a = values.subspan(s.offset_a, split.forecaster);
    s.b = values.subspan(s.offset_b, split.classifier);
    s.c = values.subspan(s.offset_c, split.test);
    return s;
}

SeedResult run_seed(const Segments& seg, const ExperimentConfig& cfg, std::uint64_t seed) {
    SeedResult r;
    r.seed = seed;

    // A: forecaster
    const ReesnnTraining trained = stage("train-forecaster", seed, [&] {
        const ReesnnModel init = build_reesnn(cfg.k, cfg.hidden, seed, cfg.sigmoid_gain);
        return train_reesnn(init, seg.a, cfg.epochs_forecaster, cfg.lr_forecaster);
    });
    r.forecaster = trained.model;
    r.epoch_mse = trained.epoch_mse;
    r.mse_train_reesnn = trained.epoch_mse.back();

    // B: errors of the frozen forecaster
    const auto harvested = stage("harvest-errors", seed, [&] { return reesnn_forecast(r.forecaster, seg.b, cfg.k); });
    const std::vector<double> errors = record_errors(harvested);
    r.delta = stage("select-delta", seed, [&] { return select_delta(errors, cfg.delta_mass); });
    const auto dataset = stage("build-dataset", seed, [&] { return build_classifier_dataset(errors, cfg.window, r.delta); });

    const auto holdout = static_cast<std::size_t>(std::llround(cfg.holdout_fraction * static_cast<double>(dataset.size())));
    const std::size_t train_count = dataset.size() - std::min(holdout, dataset.size() - 1);
    ClassifierOptions opt;
    opt.hidden = cfg.classifier_hidden;
    opt.epochs = cfg.epochs_classifier;
    opt.learning_rate = cfg.lr_classifier;
    opt.seed = seed;
    opt.hidden_activation = {cfg.classifier_activation, 1.0};
    r.classifier = stage("train-classifier", seed, [&] {
        return train_error_classifier(std::span(dataset).first(train_count), r.delta, opt);
    });

    const std::vector<int> predicted = predict_sequence(r.classifier, dataset);
    if (train_count < dataset.size()) {
        r.classifier_accuracy = classification_accuracy(std::span(predicted).subspan(train_count),
                                                        std::span(dataset).subspan(train_count));
    } else {
        r.classifier_accuracy = classification_accuracy(predicted, dataset);
    }

    // omega on B; record i of `harvested` lines up with dataset sample i - d
    r.omega = stage("calibrate-omega", seed, [&] {
        std::vector<double> raw, actual;
        for (std::size_t i = cfg.window; i < harvested.size(); ++i) {
            raw.push_back(harvested[i].raw_forecast);
            actual.push_back(harvested[i].actual);
        }
        std::vector<double> candidates;
        for (double f : cfg.omega_fractions) candidates.push_back(f * r.delta);
        return calibrate_omega(raw, actual, predicted, candidates);
    });
    r.classifier.omega = r.omega;

    // C: one continuous frozen pass over B then C so the test split starts with full histories
    r.trace = stage("evaluate", seed, [&] {
        std::vector<double> bc(seg.b.begin(), seg.b.end());
        bc.insert(bc.end(), seg.c.begin(), seg.c.end());
        const auto records = reesnn_forecast(r.forecaster, bc, cfg.k);
        const auto corrected = correct_records(records, r.classifier, CorrectionConfig{cfg.taylor_dt});
        std::vector<ForecastRecord> test(corrected.end() - static_cast<std::ptrdiff_t>(seg.c.size()), corrected.end());
        for (auto& rec : test) rec.t += seg.offset_b;
        return test;
    });
    r.mse_test_reesnn = raw_mse(r.trace);
    r.mse_test_toreesnn = corrected_mse(r.trace);
    return r;
}

Aggregate aggregate(std::span<const double> values) {
    if (values.empty()) throw InvalidArgument("aggregate: no values");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    const double median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    return {median, v.front()};
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    ExperimentReport report;
    report.benchmark = cfg.benchmark;

    auto one = [&cfg](std::uint64_t seed) {
        const TimeSeries series = stage("generate", seed, [&] { return generate_benchmark(cfg, seed); });
        const Segments seg = stage("split", seed, [&] { return split_series(series.values, cfg.warmup, cfg.split); });
        return run_seed(seg, cfg, seed);
    };

    if (cfg.parallel && cfg.seeds.size() > 1) {
        std::vector<std::future<SeedResult>> jobs;
        for (auto seed : cfg.seeds) jobs.push_back(std::async(std::launch::async, one, seed));
        for (auto& j : jobs) report.runs.push_back(j.get());
    } else {
        for (auto seed : cfg.seeds) report.runs.push_back(one(seed));
    }

    std::vector<double> train, test, corrected;
    for (const auto& r : report.runs) {
        train.push_back(r.mse_train_reesnn);
        test.push_back(r.mse_test_reesnn);
        corrected.push_back(r.mse_test_toreesnn);
    }
    report.train_reesnn = aggregate(train);
    report.test_reesnn = aggregate(test);
    report.test_toreesnn = aggregate(corrected);
    return report;
}

PublishedMse published_mse(Origin benchmark) {
    switch (benchmark) {
        case Origin::MackeyGlass: return {2.07e-04, 1.91e-04};
        case Origin::Narma: return {1.20e-02, 2.00e-03};
        case Origin::Lorenz: return {3.93e-06, 3.90e-06};
        case Origin::Henon: return {9.70e-04, 8.23e-04};
        case Origin::External: break;
    }
    throw InvalidArgument("no published reference for benchmark '" + std::string(origin_name(benchmark)) + "'");
}

Comparison compare_to_published(const ExperimentReport& report, Origin benchmark) {
    const PublishedMse ref = published_mse(benchmark);
    if (report.runs.empty()) throw InvalidArgument("compare: report has no runs");
    Comparison c;
    c.benchmark = benchmark;
    c.rows.push_back({"REESNN", report.test_reesnn.median, report.test_reesnn.min, ref.reesnn,
                      report.test_reesnn.median / ref.reesnn});
    c.rows.push_back({"TOREESNN", report.test_toreesnn.median, report.test_toreesnn.min, ref.toreesnn,
                      report.test_toreesnn.median / ref.toreesnn});
    return c;
}

void write_comparison(std::ostream& os, const Comparison& c) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << "Benchmark: " << origin_name(c.benchmark) << "\n";
    os << std::left << std::setw(10) << "method" << std::right << std::setw(14) << "median" << std::setw(14) << "min"
       << std::setw(14) << "published" << std::setw(10) << "ratio" << '\n';
    for (const auto& r : c.rows) {
        os << std::left << std::setw(10) << r.method << std::right << std::scientific << std::setprecision(3)
           << std::setw(14) << r.achieved_median << std::setw(14) << r.achieved_min << std::setw(14) << r.published
           << std::fixed << std::setprecision(3) << std::setw(10) << r.ratio << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

void write_report_text(std::ostream& os, const ExperimentReport& report) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << "Per-seed results (MSE in normalized units)\n";
    os << std::setw(6) << "seed" << std::setw(14) << "train_reesnn" << std::setw(14) << "test_reesnn"
       << std::setw(14) << "test_toreesnn" << std::setw(12) << "delta" << std::setw(12) << "omega"
       << std::setw(10) << "accuracy" << '\n';
    for (const auto& r : report.runs) {
        os << std::setw(6) << r.seed << std::scientific << std::setprecision(3) << std::setw(14) << r.mse_train_reesnn
           << std::setw(14) << r.mse_test_reesnn << std::setw(14) << r.mse_test_toreesnn << std::setw(12) << r.delta
           << std::setw(12) << r.omega << std::fixed << std::setprecision(3) << std::setw(10)
           << r.classifier_accuracy << '\n';
    }
    os << std::scientific << std::setprecision(3);
    os << "median: train " << report.train_reesnn.median << "  test " << report.test_reesnn.median
       << "  corrected " << report.test_toreesnn.median << '\n';
    os << "min:    train " << report.train_reesnn.min << "  test " << report.test_reesnn.min << "  corrected "
       << report.test_toreesnn.min << "\n\n";
    os.flags(flags);
    os.precision(prec);
    write_comparison(os, compare_to_published(report, report.benchmark));
}

void write_report_csv(std::ostream& os, const ExperimentReport& report) {
    const auto prec = os.precision(17);
    os << "row,seed,mse_train_reesnn,mse_test_reesnn,mse_test_toreesnn,delta,omega,classifier_accuracy\n";
    for (const auto& r : report.runs)
        os << "seed," << r.seed << ',' << r.mse_train_reesnn << ',' << r.mse_test_reesnn << ','
           << r.mse_test_toreesnn << ',' << r.delta << ',' << r.omega << ',' << r.classifier_accuracy << '\n';
    os << "median,," << report.train_reesnn.median << ',' << report.test_reesnn.median << ','
       << report.test_toreesnn.median << ",,,\n";
    os << "min,," << report.train_reesnn.min << ',' << report.test_reesnn.min << ',' << report.test_toreesnn.min
       << ",,,\n";
    const PublishedMse ref = published_mse(report.benchmark);
    os << "published,,," << ref.reesnn << ',' << ref.toreesnn << ",,,\n";
    os.precision(prec);
}

void write_report_files(const std::filesystem::path& dir, const ExperimentReport& report) {
    std::filesystem::create_directories(dir);
    auto open = [&](const std::string& name) {
        std::ofstream f(dir / name);
        if (!f) throw Error("cannot write " + (dir / name).string());
        return f;
    };
    {
        auto f = open("report.txt");
        write_report_text(f, report);
    }
    {
        auto f = open("report.csv");
        write_report_csv(f, report);
    }
    for (const auto& r : report.runs) {
        auto f = open("trace_" + std::to_string(r.seed) + ".csv");
        write_records_csv(f, r.trace);
    }
}

}  // namespace toreesnn
