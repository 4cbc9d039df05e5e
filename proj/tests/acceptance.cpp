// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "toreesnn/errclass.hpp"
#include "toreesnn/gradcheck.hpp"
#include "toreesnn/harness.hpp"
#include "toreesnn/kernels.hpp"
#include "toreesnn/records.hpp"
#include "toreesnn/series.hpp"
#include "toreesnn/taylor.hpp"

using namespace toreesnn;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct BenchmarkRun {
    ExperimentReport report;
    double seconds = 0.0;
};

std::map<Origin, BenchmarkRun>& default_runs() {
    static std::map<Origin, BenchmarkRun> runs;
    if (runs.empty()) {
        for (Origin o : {Origin::MackeyGlass, Origin::Narma, Origin::Lorenz, Origin::Henon}) {
            ExperimentConfig cfg;
            cfg.benchmark = o;
            const auto t0 = std::chrono::steady_clock::now();
            BenchmarkRun r;
            r.report = run_experiment(cfg);
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::printf("  %-13s reesnn %.3e  toreesnn %.3e  (%.1f s)\n", std::string(origin_name(o)).c_str(),
                        r.report.test_reesnn.median, r.report.test_toreesnn.median, r.seconds);
            runs.emplace(o, std::move(r));
        }
    }
    return runs;
}

Outcome improvement() {
    Outcome out;
    int improved = 0;
    for (const auto& [o, r] : default_runs()) {
        if (r.report.test_toreesnn.median <= r.report.test_reesnn.median) ++improved;
        out.require(r.seconds < 300.0, std::string(origin_name(o)) + " exceeded the 5 minute budget");
    }
    const auto& mg = default_runs().at(Origin::MackeyGlass).report;
    out.require(improved >= 3, "improved on " + std::to_string(improved) + " of 4 benchmarks");
    out.require(mg.test_toreesnn.median < mg.test_reesnn.median, "no strict improvement on mackey-glass");
    if (out.pass) out.detail = std::to_string(improved) + "/4 improved, strict on mackey-glass";
    return out;
}

Outcome band(Origin o, double limit) {
    Outcome out;
    const double m = default_runs().at(o).report.test_reesnn.median;
    out.require(m <= limit, "median " + fmt("%.3e", m) + " > " + fmt("%.0e", limit));
    if (out.pass) out.detail = "median " + fmt("%.3e", m);
    return out;
}

Outcome gradients() {
    Outcome out;
    const auto s = run_gradcheck_suite(50, 2024, 1e-5, 1e-5);
    out.require(s.cases.size() == 100, "expected 100 networks");
    out.require(s.passed(), "worst deviation " + fmt("%.3e", s.worst));
    if (out.pass) out.detail = "100 networks, worst relative deviation " + fmt("%.2e", s.worst);
    return out;
}

Outcome fixed_points() {
    Outcome out;
    MgParams mg;
    for (double v : gen_mackey_glass(mg, 10, std::vector<double>(18, 0.0)).values)
        out.require(v == 0.0, "mackey-glass zero history drifted");
    for (int tau : {1, 5, 17, 30}) {
        MgParams p;
        p.tau = tau;
        for (double v : gen_mackey_glass(p, 10, std::vector<double>(tau + 1, 1.0)).values)
            out.require(std::abs(v - 1.0) < 1e-15, "mackey-glass unit history drifted");
    }
    double worst = 0.0;
    for (double v : gen_mackey_glass(mg, 2000).values) worst = std::max(worst, std::abs(v));
    out.require(worst < 2.0, "mackey-glass left |x| < 2");

    HenonParams hp;
    const auto first = henon_step(hp, {0.0, 0.0});
    out.require(first.x == 1.0 && first.y == 0.0, "henon first step from the origin");
    const double xs = (-0.7 + std::sqrt(6.09)) / 2.8;
    const auto fp = henon_step(hp, {xs, 0.3 * xs});
    out.require(std::abs(fp.x - xs) < 1e-12 && std::abs(fp.y - 0.3 * xs) < 1e-12, "henon fixed point");
    for (double v : gen_henon(hp, 2000).values) out.require(std::abs(v) < 1.5, "henon left |x| < 1.5");

    LorenzParams lp;
    LorenzParams origin = lp;
    origin.x0 = origin.y0 = origin.z0 = 0.0;
    for (double v : gen_lorenz(origin, 50).values) out.require(v == 0.0, "lorenz origin moved");
    for (double sign : {1.0, -1.0}) {
        const double c = sign * std::sqrt(lp.b * (lp.r - 1.0));
        const LorenzState eq{c, c, lp.r - 1.0};
        const auto d = lorenz_derivative(lp, eq);
        out.require(std::abs(d.x) < 1e-12 && std::abs(d.y) < 1e-12 && std::abs(d.z) < 1e-12,
                    "lorenz equilibrium derivative");
        const auto n = lorenz_rk4_step(lp, eq);
        out.require(std::abs(n.x - eq.x) < 1e-9 && std::abs(n.y - eq.y) < 1e-9 && std::abs(n.z - eq.z) < 1e-9,
                    "lorenz equilibrium step");
    }

    NarmaParams np;
    const auto zero = narma_from_inputs(np, std::vector<double>(20, 0.0));
    out.require(zero.target.values.front() == 0.1, "narma constant term");
    const auto a = gen_narma(np, 1600, 42);
    out.require(a.target.values == gen_narma(np, 1600, 42).target.values, "narma determinism");
    for (double v : a.target.values) out.require(std::abs(v) <= 1.5, "narma left |y| <= 1.5");
    if (out.pass) out.detail = "mackey-glass 0 and 1, henon x*, lorenz origin and +-sqrt(b(r-1)), narma";
    return out;
}

Outcome lorenz_oracle() {
    Outcome out;
    LorenzParams coarse;
    LorenzParams fine = coarse;
    fine.dt = 0.001;
    fine.subsample = 10;
    const auto a = gen_lorenz(coarse, 100);
    const auto b = gen_lorenz(fine, 100);
    double worst = 0.0;
    for (std::size_t i = 0; i < 50; ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    out.require(worst < 1e-3, "max abs difference " + fmt("%.3e", worst));
    if (out.pass) out.detail = "max abs difference " + fmt("%.2e", worst);
    return out;
}

Outcome classifier_laws() {
    Outcome out;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr int kCases = 1000;
    int anti = 0, sizes = 0, mono = 0, calib = 0;
    for (int c = 0; c < kCases; ++c) {
        const double scale = std::pow(10.0, -4.0 + 4.0 * unit(rng));
        const double delta = scale * (0.01 + unit(rng));
        const double e = scale * (2.0 * unit(rng) - 1.0) * 2.0;
        if (classify_error(-e, delta) == -classify_error(e, delta) && classify_error(0.0, delta) == 0) ++anti;

        const std::size_t n = 2 + static_cast<std::size_t>(unit(rng) * 200);
        const std::size_t d = 1 + static_cast<std::size_t>(unit(rng) * static_cast<double>(n - 1));
        std::vector<double> errors(n);
        for (double& x : errors) x = scale * (2.0 * unit(rng) - 1.0);
        const auto data = build_classifier_dataset(errors, d, delta);
        if (data.size() == n - d) ++sizes;

        const double bigger = delta * (1.0 + 3.0 * unit(rng));
        const auto wide = build_classifier_dataset(errors, d, bigger);
        bool ok = wide.size() == data.size();
        for (std::size_t i = 0; ok && i < data.size(); ++i)
            if (data[i].label == 0 && wide[i].label != 0) ok = false;
        if (ok) ++mono;

        std::vector<double> raw(n), actual(n), candidates{0.0};
        std::vector<int> classes(n);
        for (std::size_t i = 0; i < n; ++i) {
            raw[i] = unit(rng);
            actual[i] = raw[i] + errors[i];
            classes[i] = static_cast<int>(unit(rng) * 3.0) - 1;
        }
        for (int j = 0; j < 4; ++j) candidates.push_back(scale * 2.0 * unit(rng));
        std::shuffle(candidates.begin(), candidates.end(), rng);
        const double omega = calibrate_omega(raw, actual, classes, candidates);
        double raw_sse = 0.0, corr_sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            raw_sse += (actual[i] - raw[i]) * (actual[i] - raw[i]);
            const double fixed = taylor_correct(raw[i], class_to_error(classes[i], omega));
            corr_sse += (actual[i] - fixed) * (actual[i] - fixed);
        }
        if (corr_sse <= raw_sse) ++calib;
    }
    out.require(anti == kCases, "antisymmetry " + std::to_string(anti) + "/1000");
    out.require(sizes == kCases, "dataset size " + std::to_string(sizes) + "/1000");
    out.require(mono == kCases, "monotone delta " + std::to_string(mono) + "/1000");
    out.require(calib == kCases, "calibration no-regression " + std::to_string(calib) + "/1000");
    if (out.pass) out.detail = "4 laws x 1000 cases";
    return out;
}

Outcome hygiene() {
    Outcome out;
    ExperimentConfig cfg;
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    std::ostringstream ta, tb, ca, cb;
    write_report_text(ta, a);
    write_report_text(tb, b);
    write_report_csv(ca, a);
    write_report_csv(cb, b);
    out.require(ta.str() == tb.str(), "report.txt differs between runs");
    out.require(ca.str() == cb.str(), "report.csv differs between runs");
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        std::ostringstream x, y;
        write_records_csv(x, a.runs[i].trace);
        write_records_csv(y, b.runs[i].trace);
        out.require(x.str() == y.str(), "trace differs for seed " + std::to_string(a.runs[i].seed));
    }

    for (Origin o : {Origin::MackeyGlass, Origin::Henon}) {
        cfg.benchmark = o;
        const auto s = generate_benchmark(cfg, 1);
        const auto seg = split_series(s.values, cfg.warmup, cfg.split);
        std::vector<double> poisoned(s.values);
        for (std::size_t i = seg.offset_c; i < poisoned.size(); ++i) poisoned[i] = (i % 2) ? 1.0 : 0.0;
        const auto clean = run_seed(seg, cfg, 1);
        const auto dirty = run_seed(split_series(poisoned, cfg.warmup, cfg.split), cfg, 1);
        const std::string name(origin_name(o));
        out.require(clean.forecaster == dirty.forecaster, name + ": forecaster changed");
        out.require(clean.classifier == dirty.classifier, name + ": classifier changed");
        out.require(clean.delta == dirty.delta && clean.omega == dirty.omega, name + ": delta or omega changed");
        out.require(clean.mse_train_reesnn == dirty.mse_train_reesnn, name + ": training mse changed");
        out.require(clean.mse_test_reesnn != dirty.mse_test_reesnn, name + ": poison did not reach evaluation");
    }
    if (out.pass) out.detail = "byte-identical reports and traces; poisoned test split leaves training untouched";
    return out;
}

Outcome oracle_correction() {
    Outcome out;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> level(0.1, 0.9);
    std::uniform_real_distribution<double> jitter(-0.002, 0.002);
    std::bernoulli_distribution coin(0.5);
    constexpr double kMagnitude = 0.02;
    std::vector<ForecastRecord> recs;
    for (std::size_t t = 0; t < 1000; ++t) {
        const double raw = level(rng);
        const double e = (coin(rng) ? kMagnitude : -kMagnitude) + jitter(rng);
        recs.push_back(make_record(t, raw + e, raw));
    }
    const auto fixed = correct_records(recs, 5, kMagnitude, [&](std::size_t i, std::span<const double>) {
        return recs[i].error > 0 ? 1 : -1;
    });
    const double raw = raw_mse(fixed), corrected = corrected_mse(fixed);
    out.require(corrected * 2.0 <= raw, "raw " + fmt("%.3e", raw) + " corrected " + fmt("%.3e", corrected));
    if (out.pass) out.detail = "raw " + fmt("%.3e", raw) + " -> corrected " + fmt("%.3e", corrected);
    return out;
}

}  // namespace

int main() {
    std::printf("kernels: %s\n", std::string(kernels::backend_name(kernels::active_backend())).c_str());
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 improvement on default benchmarks", improvement},
        {"2 mackey-glass magnitude band", [] { return band(Origin::MackeyGlass, 5e-3); }},
        {"3 henon magnitude band", [] { return band(Origin::Henon, 1e-2); }},
        {"4 gradient oracle", gradients},
        {"5 generator fixed points", fixed_points},
        {"6 lorenz integrator oracle", lorenz_oracle},
        {"7 classifier law suite", classifier_laws},
        {"8 pipeline hygiene", hygiene},
        {"9 oracle-perfect correction", oracle_correction},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
