// Command-line front end: series generation, full experiments and the gradient oracle.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "toreesnn/error.hpp"
#include "toreesnn/gradcheck.hpp"
#include "toreesnn/harness.hpp"
#include "toreesnn/kernels.hpp"
#include "toreesnn/series.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kStage = 2, kDivergence = 3 };

using namespace toreesnn;

int cmd_gen(const std::string& benchmark, std::size_t n, std::uint64_t seed, const std::filesystem::path& out,
            bool raw) {
    ExperimentConfig cfg;
    cfg.benchmark = parse_origin(benchmark);
    TimeSeries s;
    switch (cfg.benchmark) {
        case Origin::MackeyGlass: s = gen_mackey_glass(cfg.mg, n); break;
        case Origin::Narma: s = gen_narma(cfg.narma, n, seed).target; break;
        case Origin::Lorenz: s = gen_lorenz(cfg.lorenz, n); break;
        case Origin::Henon: s = gen_henon(cfg.henon, n); break;
        case Origin::External: throw InvalidArgument("cannot generate an external series");
    }
    s.seed = seed;
    if (!raw) s = normalize(s);
    if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
    std::ofstream csv(out);
    if (!csv) throw Error("cannot write " + out.string());
    write_series_csv(csv, s);
    std::filesystem::path meta = out;
    meta += ".meta";
    std::ofstream side(meta);
    if (!side) throw Error("cannot write " + meta.string());
    write_series_metadata(side, s);
    std::cout << "wrote " << s.size() << " samples to " << out.string() << " (metadata " << meta.string() << ")\n";
    return kOk;
}

int cmd_experiment(const std::filesystem::path& config, const std::filesystem::path& out_dir) {
    const ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : parse_config_file(config);
    std::cerr << "running " << origin_name(cfg.benchmark) << " with " << cfg.seeds.size() << " seed(s), kernels "
              << kernels::backend_name(kernels::active_backend()) << '\n';
    const ExperimentReport report = run_experiment(cfg);
    write_report_files(out_dir, report);
    write_report_text(std::cout, report);
    return kOk;
}

int cmd_gradcheck(std::size_t count, std::uint64_t seed) {
    const GradCheckSummary s = run_gradcheck_suite(count, seed);
    std::size_t failed = 0;
    for (const auto& c : s.cases)
        if (c.deviation > s.tolerance) {
            ++failed;
            std::printf("FAIL %s #%zu inputs=%zu hidden=%zu deviation=%.3e\n", c.shape.c_str(), c.index, c.inputs,
                        c.hidden, c.deviation);
        }
    std::printf("gradcheck: %zu networks, worst relative deviation %.3e (tolerance %.0e): %s\n", s.cases.size(),
                s.worst, s.tolerance, s.passed() ? "PASS" : "FAIL");
    return s.passed() ? kOk : kStage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TOREESNN forecasting experiments"};
    app.require_subcommand(1);
    std::string kernel_choice;
    app.add_option("--kernels", kernel_choice, "Force a kernel backend: scalar | avx2 | neon");

    auto* gen = app.add_subcommand("gen", "Generate a benchmark series as CSV plus a metadata sidecar");
    std::string benchmark;
    std::size_t n = 2000;
    std::uint64_t gen_seed = 1;
    std::filesystem::path gen_out;
    bool raw = false;
    gen->add_option("benchmark", benchmark, "mackey-glass | narma | lorenz | henon")->required();
    gen->add_option("--n", n, "Number of samples")->capture_default_str();
    gen->add_option("--seed", gen_seed, "RNG seed (NARMA inputs)")->capture_default_str();
    gen->add_option("--out", gen_out, "Output CSV path")->required();
    gen->add_flag("--raw", raw, "Skip normalization to [0, 1]");

    auto* exp = app.add_subcommand("experiment", "Run the full forecasting and correction pipeline");
    std::filesystem::path config, out_dir;
    exp->add_option("--config", config, "Config file (key = value); defaults when omitted");
    exp->add_option("--out-dir", out_dir, "Directory for report.txt, report.csv, trace_<seed>.csv")->required();
    exp->footer(toreesnn::config_help());

    auto* grad = app.add_subcommand("gradcheck", "Check backprop against central finite differences");
    std::size_t count = 50;
    std::uint64_t grad_seed = 2024;
    grad->add_option("--count", count, "Networks per shape")->capture_default_str();
    grad->add_option("--seed", grad_seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (!kernel_choice.empty()) {
            if (kernel_choice == "scalar") kernels::set_backend(kernels::Backend::Scalar);
            else if (kernel_choice == "avx2") kernels::set_backend(kernels::Backend::Avx2);
            else if (kernel_choice == "neon") kernels::set_backend(kernels::Backend::Neon);
            else throw InvalidArgument("unknown kernel backend '" + kernel_choice + "'");
        }
        if (*gen) return cmd_gen(benchmark, n, gen_seed, gen_out, raw);
        if (*exp) return cmd_experiment(config, out_dir);
        if (*grad) return cmd_gradcheck(count, grad_seed);
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.divergence() ? kDivergence : kStage;
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDivergence;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kStage;
    }
    return kUsage;
}
