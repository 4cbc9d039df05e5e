#include "toreesnn/taylor.hpp"

#include <cmath>
#include <string>

#include "toreesnn/error.hpp"

namespace toreesnn {

double taylor_correct(double raw, double estimated_error, const CorrectionConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw InvalidArgument("taylor: dt must be positive");
    if (!std::isfinite(raw) || !std::isfinite(estimated_error))
        throw InvalidArgument("taylor: inputs must be finite");
    return raw + estimated_error * cfg.dt;
}

std::vector<ForecastRecord> correct_records(std::span<const ForecastRecord> records, std::size_t d,
                                            double omega, const ClassSource& classes,
                                            const CorrectionConfig& cfg) {
    if (d == 0) throw InvalidArgument("correction window must be >= 1");
    if (records.size() <= d)
        throw InvalidArgument("correction needs more than " + std::to_string(d) + " records, got " +
                              std::to_string(records.size()));
    std::vector<ForecastRecord> out(records.begin(), records.end());
    std::vector<double> window(d);
    for (std::size_t i = d; i < out.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) window[j] = records[i - 1 - j].error;
        const int c = classes(i, window);
        const double f = class_to_error(c, omega);
        out[i].error_class = c;
        out[i].estimated_error = f;
        out[i].corrected_forecast = taylor_correct(out[i].raw_forecast, f, cfg);
    }
    return out;
}

std::vector<ForecastRecord> correct_records(std::span<const ForecastRecord> records,
                                            const ErrorClassifierModel& classifier,
                                            const CorrectionConfig& cfg) {
    std::vector<double> context(classifier.hidden, 0.0);
    return correct_records(
        records, classifier.d, classifier.omega,
        [&](std::size_t, std::span<const double> window) {
            Prediction p = predict_class(classifier, window, context);
            context = std::move(p.context);
            return p.error_class;
        },
        cfg);
}

}  // namespace toreesnn
