#pragma once

// Benchmark series generators and [0,1] normalization.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace toreesnn {

enum class Origin { MackeyGlass, Narma, Lorenz, Henon, External };

std::string_view origin_name(Origin o);
// Accepts the lowercase names used on the command line (mackey-glass, narma, lorenz, henon).
Origin parse_origin(std::string_view name);

struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;
    Origin origin = Origin::External;
    bool normalized = false;
    double norm_min = 0.0;
    double norm_max = 0.0;
    // Free-form description of the generator parameters, written to the sidecar.
    std::string params;
    std::uint64_t seed = 0;

    std::size_t size() const { return values.size(); }
};

// Throws InvalidArgument when the invariants of TimeSeries do not hold.
void validate(const TimeSeries& s);

constexpr double kDivergenceLimit = 1e6;

struct MgParams {
    double a = 0.2;
    double b = 0.1;
    int tau = 17;
    double step = 0.1;  // metadata only; the map is already discrete
};

struct NarmaParams {
    int k = 10;
    double c1 = 0.3;
    double c2 = 0.05;
    double c3 = 1.5;
    double c4 = 0.1;
    double input_low = 0.0;
    double input_high = 0.5;
};

struct LorenzParams {
    double sigma = 10.0;
    double r = 28.0;
    double b = 8.0 / 3.0;
    double dt = 0.01;
    int subsample = 1;
    double x0 = 1.0;
    double y0 = 1.0;
    double z0 = 1.0;
};

struct HenonParams {
    double a = 1.4;
    double b = 0.3;
    double x0 = 0.0;
    double y0 = 0.0;
};

// x(n+1) = (x(n) + a x(n-tau) / (1 + x(n-tau)^10)) / (1 + b)
// `history` holds x(-tau) .. x(0), oldest first. Returns x(1) .. x(n).
TimeSeries gen_mackey_glass(const MgParams& p, std::size_t n, std::span<const double> history);
// Convenience overload with the constant 1.2 history.
TimeSeries gen_mackey_glass(const MgParams& p, std::size_t n);

struct NarmaSeries {
    TimeSeries target;         // y
    std::vector<double> input;  // driving x, same length
};

// NARMA of order k driven by i.i.d. uniform inputs; zero initial history.
NarmaSeries gen_narma(const NarmaParams& p, std::size_t n, std::uint64_t seed);
// Same recurrence over a caller-supplied input sequence (n = input.size()).
NarmaSeries narma_from_inputs(const NarmaParams& p, std::span<const double> input);

// Classical RK4 on the Lorenz system, emitting x every `subsample` steps.
// The initial state is not emitted; sample i is the state after (i+1)*subsample steps.
TimeSeries gen_lorenz(const LorenzParams& p, std::size_t n);

struct LorenzState {
    double x, y, z;
};
LorenzState lorenz_derivative(const LorenzParams& p, const LorenzState& s);
LorenzState lorenz_rk4_step(const LorenzParams& p, const LorenzState& s);

struct HenonState {
    double x, y;
};
HenonState henon_step(const HenonParams& p, const HenonState& s);
// Returns x(1) .. x(n).
TimeSeries gen_henon(const HenonParams& p, std::size_t n);

TimeSeries normalize(const TimeSeries& s);
double denormalize(const TimeSeries& s, double value);

// CSV `index,value` with 17 significant digits.
void write_series_csv(std::ostream& os, const TimeSeries& s);
// Sidecar `key = value` lines: origin, params, seed, normalized, norm_min, norm_max.
void write_series_metadata(std::ostream& os, const TimeSeries& s);

}  // namespace toreesnn
