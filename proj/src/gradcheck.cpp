#include "toreesnn/gradcheck.hpp"

#include <algorithm>
#include <random>

#include "toreesnn/errclass.hpp"
#include "toreesnn/nn.hpp"
#include "toreesnn/reesnn.hpp"

namespace toreesnn {

GradCheckSummary run_gradcheck_suite(std::size_t count, std::uint64_t seed, double h, double tolerance) {
    GradCheckSummary out;
    out.tolerance = tolerance;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> lag(1, 8);
    std::uniform_int_distribution<std::size_t> width(1, 16);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> err(-0.2, 0.2);

    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = lag(rng), hidden = width(rng);
        const ReesnnModel m = build_reesnn(k, hidden, rng());
        std::vector<double> input(2 * k);
        for (std::size_t j = 0; j < k; ++j) {
            input[j] = unit(rng);
            input[k + j] = err(rng);
        }
        const double target[1] = {unit(rng)};
        const double dev = grad_check(m.net, input, target, h);
        out.cases.push_back({"reesnn", i, 2 * k, hidden, dev});
    }

    std::uniform_int_distribution<int> klass(-1, 1);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t d = lag(rng), hidden = width(rng);
        ClassifierOptions opt;
        opt.hidden = hidden;
        opt.seed = rng();
        opt.hidden_activation = i % 2 ? Activation::hyperbolic() : Activation::sigmoid();
        const ErrorClassifierModel m = build_error_classifier(d, 0.05, opt);
        std::vector<double> window(d), context(hidden);
        for (double& v : window) v = err(rng);
        for (double& v : context) v = unit(rng);
        const auto input = classifier_input(m, window, context);
        std::vector<double> target(3, 0.0);
        target[static_cast<std::size_t>(klass(rng) + 1)] = 1.0;
        const double dev = grad_check(m.net, input, target, h);
        out.cases.push_back({"elman", i, d + hidden, hidden, dev});
    }

    for (const auto& c : out.cases) out.worst = std::max(out.worst, c.deviation);
    return out;
}

}  // namespace toreesnn
