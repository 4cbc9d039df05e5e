#pragma once

// First-order Taylor fusion of the raw forecast with the estimated error:
// y'(t) is taken to be f(e), so y(t+1) ~= y(t) + f(e) * dt.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "toreesnn/errclass.hpp"
#include "toreesnn/records.hpp"

namespace toreesnn {

struct CorrectionConfig {
    double dt = 1.0;
    static constexpr int order = 1;
};

double taylor_correct(double raw, double estimated_error, const CorrectionConfig& cfg = {});

// Supplies the class of record `index` given its trailing window e(index-1) .. e(index-d).
using ClassSource = std::function<int(std::size_t index, std::span<const double> window)>;

// Fills error_class / estimated_error / corrected_forecast for every record that
// has d earlier records; the first d records keep their optional fields empty.
std::vector<ForecastRecord> correct_records(std::span<const ForecastRecord> records, std::size_t d,
                                            double omega, const ClassSource& classes,
                                            const CorrectionConfig& cfg = {});

// Same, with the classes predicted by the Elman classifier. The context starts at
// zero and is threaded through the records in order.
std::vector<ForecastRecord> correct_records(std::span<const ForecastRecord> records,
                                            const ErrorClassifierModel& classifier,
                                            const CorrectionConfig& cfg = {});

}  // namespace toreesnn
