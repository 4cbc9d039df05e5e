#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace toreesnn {

// One forecasted step. `error` is always actual - raw_forecast; the three
// correction fields are filled together by the correction stage.
struct ForecastRecord {
    std::size_t t = 0;
    double actual = 0.0;
    double raw_forecast = 0.0;
    double error = 0.0;
    std::optional<int> error_class;
    std::optional<double> estimated_error;
    std::optional<double> corrected_forecast;

    friend bool operator==(const ForecastRecord&, const ForecastRecord&) = default;
};

ForecastRecord make_record(std::size_t t, double actual, double raw_forecast);

// Header `t,actual,raw_forecast,error,error_class,estimated_error,corrected_forecast`;
// absent optional fields are left empty.
void write_records_csv(std::ostream& os, std::span<const ForecastRecord> records);

std::vector<double> record_errors(std::span<const ForecastRecord> records);
double raw_mse(std::span<const ForecastRecord> records);
// Records without a correction contribute their raw forecast.
double corrected_mse(std::span<const ForecastRecord> records);

}  // namespace toreesnn
