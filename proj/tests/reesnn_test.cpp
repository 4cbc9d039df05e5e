#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "toreesnn/error.hpp"
#include "toreesnn/harness.hpp"
#include "toreesnn/reesnn.hpp"

using namespace toreesnn;

namespace {

std::vector<double> mg_training_split() {
    ExperimentConfig cfg;
    const auto s = generate_benchmark(cfg, 1);
    const auto seg = split_series(s.values, cfg.warmup, cfg.split);
    return {seg.a.begin(), seg.a.end()};
}

}  // namespace

TEST_CASE("build_reesnn") {
    const auto a = build_reesnn(5, 10, 42), b = build_reesnn(5, 10, 42), c = build_reesnn(5, 10, 43);
    CHECK(a == b);
    CHECK(a.net != c.net);
    REQUIRE(a.net.layers.size() == 2);
    CHECK(a.net.layers[0].out == 10);
    CHECK(a.net.layers[0].in == 10);
    CHECK(a.net.layers[1].out == 1);
    CHECK(a.net.layers[1].in == 10);
    for (const auto& l : a.net.layers) {
        CHECK(l.activation.kind == ActivationKind::Sigmoid);
        for (double w : l.weights) CHECK((w >= -kInitRange && w <= kInitRange));
    }
    CHECK_THROWS_AS(build_reesnn(0, 10, 1), InvalidArgument);
    CHECK_THROWS_AS(build_reesnn(5, 0, 1), InvalidArgument);
}

TEST_CASE("reesnn_input ordering") {
    CHECK(reesnn_input(std::vector<double>{0.5, 0.4}, std::vector<double>{0.1, -0.1}) ==
          std::vector<double>{0.5, 0.4, 0.1, -0.1});
    CHECK(reesnn_input(std::vector<double>(3, 0.0), std::vector<double>(3, 0.0)) == std::vector<double>(6, 0.0));
    CHECK(reesnn_input(std::vector<double>{0.7}, std::vector<double>{0.2}).size() == 2);
    CHECK_THROWS_AS(reesnn_input(std::vector<double>{0.7}, std::vector<double>{0.2, 0.1}), InvalidArgument);
}

TEST_CASE("reesnn_forward") {
    SUBCASE("zero parameters give one half") {
        auto m = build_reesnn(3, 4, 1);
        for (auto& l : m.net.layers) {
            std::fill(l.weights.begin(), l.weights.end(), 0.0);
            std::fill(l.bias.begin(), l.bias.end(), 0.0);
        }
        CHECK(reesnn_forward(m, std::vector<double>{1, 2, 3, -1, -2, -3}) == 0.5);
    }
    SUBCASE("tiny model by hand") {
        auto m = build_reesnn(1, 1, 1);
        for (auto& l : m.net.layers) {
            std::fill(l.weights.begin(), l.weights.end(), 1.0);
            std::fill(l.bias.begin(), l.bias.end(), 0.0);
        }
        // sigmoid(sigmoid(0.5 + 0.1))
        CHECK(reesnn_forward(m, std::vector<double>{0.5, 0.1}) == doctest::Approx(0.6560309547189133).epsilon(1e-14));
    }
    SUBCASE("output range and width check") {
        const auto m = build_reesnn(2, 5, 3);
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> d(-5, 5);
        for (int i = 0; i < 200; ++i) {
            const double y = reesnn_forward(m, std::vector<double>{d(rng), d(rng), d(rng), d(rng)});
            CHECK((y > 0.0 && y < 1.0));
        }
        CHECK_THROWS_AS(reesnn_forward(m, std::vector<double>{0.1, 0.2}), InvalidArgument);
    }
}

TEST_CASE("LagState recursion") {
    LagState s(2, std::vector<double>{0.1, 0.2, 0.3});
    CHECK(s.input() == std::vector<double>{0.3, 0.2, 0.0, 0.0});
    s.push(0.25, 0.35);
    CHECK(s.input()[0] == 0.25);
    CHECK(s.input()[1] == 0.3);
    CHECK(s.input()[2] == doctest::Approx(0.1));
    CHECK(s.input()[3] == 0.0);
    CHECK_THROWS_AS(LagState(3, std::vector<double>{0.1}), InvalidArgument);
}

TEST_CASE("perturbing an actual only reaches the next input through the error channel") {
    const auto m = build_reesnn(3, 6, 8);
    std::vector<double> x(40);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 + 0.4 * std::sin(0.3 * static_cast<double>(i));
    const std::size_t t0 = 20;
    auto inputs_for = [&](const std::vector<double>& series) {
        LagState lags(m.k, std::span(series).first(m.k));
        std::vector<std::vector<double>> inputs;
        for (std::size_t t = m.k; t < series.size(); ++t) {
            inputs.push_back(lags.input());
            lags.push(reesnn_forward(m, inputs.back()), series[t]);
        }
        return inputs;
    };
    auto y = x;
    y[t0] += 0.05;
    const auto a = inputs_for(x), b = inputs_for(y);
    const std::size_t step = t0 + 1 - m.k;  // input used to forecast x(t0 + 1)
    for (std::size_t i = 0; i < step; ++i) CHECK(a[i] == b[i]);
    for (std::size_t j = 0; j < m.k; ++j) CHECK(a[step][j] == b[step][j]);
    CHECK(a[step][m.k] != b[step][m.k]);
    CHECK(b[step][m.k] - a[step][m.k] == doctest::Approx(0.05));
}

TEST_CASE("train_reesnn") {
    const auto data = mg_training_split();
    const auto m = build_reesnn(5, 10, 1);
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(train_reesnn(m, data, 0, 0.1), InvalidArgument);
        CHECK_THROWS_AS(train_reesnn(m, std::span(data).first(6), 1, 0.1), InvalidArgument);
        std::vector<double> raw = data;
        raw[3] = 1.5;
        CHECK_THROWS_AS(train_reesnn(m, raw, 1, 0.1), InvalidArgument);
        TimeSeries unnorm;
        unnorm.values = data;
        CHECK_THROWS_AS(train_reesnn(m, unnorm, 1, 0.1), InvalidArgument);
    }
    SUBCASE("zero learning rate leaves the weights alone") {
        const auto r = train_reesnn(m, data, 3, 0.0);
        CHECK(r.model == m);
        CHECK(r.epoch_mse.size() == 3);
        CHECK(r.epoch_mse[0] == r.epoch_mse[2]);
    }
    SUBCASE("loss decreases over a full run") {
        const auto r = train_reesnn(m, data, 200, 0.1);
        REQUIRE(r.epoch_mse.size() == 200);
        CHECK(r.epoch_mse.back() < r.epoch_mse.front());
        CHECK(r.records.size() == data.size() - 5);
        for (const auto& rec : r.records) CHECK(rec.error == rec.actual - rec.raw_forecast);
    }
}

TEST_CASE("training loss never runs away on any benchmark") {
    for (Origin o : {Origin::MackeyGlass, Origin::Narma, Origin::Lorenz, Origin::Henon}) {
        ExperimentConfig cfg;
        cfg.benchmark = o;
        const auto s = generate_benchmark(cfg, 1);
        const auto seg = split_series(s.values, cfg.warmup, cfg.split);
        const auto r = train_reesnn(build_reesnn(cfg.k, cfg.hidden, 1), seg.a, cfg.epochs_forecaster, cfg.lr_forecaster);
        INFO("benchmark " << origin_name(o));
        for (std::size_t e = 20; e < r.epoch_mse.size(); ++e) CHECK(r.epoch_mse[e] <= 1.1 * r.epoch_mse[e - 10]);
    }
}

TEST_CASE("reesnn_forecast") {
    const auto data = mg_training_split();
    const auto m = train_reesnn(build_reesnn(5, 10, 2), data, 20, 0.1).model;
    const auto recs = reesnn_forecast(m, data, 5);
    REQUIRE(recs.size() == data.size() - 5);
    for (const auto& r : recs) {
        CHECK((r.raw_forecast > 0.0 && r.raw_forecast < 1.0));
        CHECK(r.error == r.actual - r.raw_forecast);
        CHECK_FALSE(r.error_class.has_value());
    }
    CHECK(recs.front().t == 5);
    CHECK(reesnn_forecast(m, data, 5) == recs);
    CHECK(reesnn_forecast(m, data, 8).size() == data.size() - 8);
    CHECK_THROWS_AS(reesnn_forecast(m, data, 4), InvalidArgument);
    CHECK_THROWS_AS(reesnn_forecast(m, std::span(data).first(5), 5), InvalidArgument);
}

TEST_CASE("backprop on the forecaster architecture matches finite differences") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0, 1), e(-0.2, 0.2);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto m = build_reesnn(5, 10, seed);
        std::vector<double> in(10);
        for (int i = 0; i < 5; ++i) {
            in[static_cast<std::size_t>(i)] = u(rng);
            in[static_cast<std::size_t>(i) + 5] = e(rng);
        }
        CHECK(grad_check(m.net, in, std::vector<double>{u(rng)}) < 1e-5);
    }
}

TEST_CASE("model file and record csv") {
    const auto m = train_reesnn(build_reesnn(3, 4, 5), mg_training_split(), 2, 0.1).model;
    std::stringstream ss;
    save_reesnn(ss, m);
    CHECK(ss.str().rfind("reesnn 3 4 5\n", 0) == 0);
    CHECK(load_reesnn(ss) == m);

    std::stringstream bad("reesnn 2 4 5\n");
    CHECK_THROWS_AS(load_reesnn(bad), InvalidArgument);

    ForecastRecord r = make_record(7, 0.5, 0.25);
    ForecastRecord c = make_record(8, 0.5, 0.25);
    c.error_class = 1;
    c.estimated_error = 0.125;
    c.corrected_forecast = 0.375;
    std::ostringstream csv;
    const std::vector<ForecastRecord> rows{r, c};
    write_records_csv(csv, rows);
    CHECK(csv.str() ==
          "t,actual,raw_forecast,error,error_class,estimated_error,corrected_forecast\n"
          "7,0.5,0.25,0.25,,,\n"
          "8,0.5,0.25,0.25,1,0.125,0.375\n");
}
