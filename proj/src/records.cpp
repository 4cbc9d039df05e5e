#include "toreesnn/records.hpp"

#include <iomanip>
#include <ostream>

#include "toreesnn/error.hpp"

namespace toreesnn {

ForecastRecord make_record(std::size_t t, double actual, double raw_forecast) {
    ForecastRecord r;
    r.t = t;
    r.actual = actual;
    r.raw_forecast = raw_forecast;
    r.error = actual - raw_forecast;
    return r;
}

void write_records_csv(std::ostream& os, std::span<const ForecastRecord> records) {
    const auto old = os.precision(17);
    os << "t,actual,raw_forecast,error,error_class,estimated_error,corrected_forecast\n";
    for (const auto& r : records) {
        os << r.t << ',' << r.actual << ',' << r.raw_forecast << ',' << r.error << ',';
        if (r.error_class) os << *r.error_class;
        os << ',';
        if (r.estimated_error) os << *r.estimated_error;
        os << ',';
        if (r.corrected_forecast) os << *r.corrected_forecast;
        os << '\n';
    }
    os.precision(old);
}

std::vector<double> record_errors(std::span<const ForecastRecord> records) {
    std::vector<double> e;
    e.reserve(records.size());
    for (const auto& r : records) e.push_back(r.error);
    return e;
}

double raw_mse(std::span<const ForecastRecord> records) {
    if (records.empty()) throw InvalidArgument("no records to score");
    double s = 0.0;
    for (const auto& r : records) s += r.error * r.error;
    return s / static_cast<double>(records.size());
}

double corrected_mse(std::span<const ForecastRecord> records) {
    if (records.empty()) throw InvalidArgument("no records to score");
    double s = 0.0;
    for (const auto& r : records) {
        const double d = r.actual - r.corrected_forecast.value_or(r.raw_forecast);
        s += d * d;
    }
    return s / static_cast<double>(records.size());
}

}  // namespace toreesnn
