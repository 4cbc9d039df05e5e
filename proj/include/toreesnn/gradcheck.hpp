#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace toreesnn {

struct GradCheckCase {
    std::string shape;  // "reesnn" or "elman"
    std::size_t index = 0;
    std::size_t inputs = 0;
    std::size_t hidden = 0;
    double deviation = 0.0;
};

struct GradCheckSummary {
    std::vector<GradCheckCase> cases;
    double tolerance = 1e-5;
    double worst = 0.0;
    bool passed() const { return worst <= tolerance; }
};

// `count` random forecaster-shaped and `count` random classifier-shaped networks,
// analytic backprop against central differences with step h.
GradCheckSummary run_gradcheck_suite(std::size_t count = 50, std::uint64_t seed = 2024, double h = 1e-5,
                                     double tolerance = 1e-5);

}  // namespace toreesnn
