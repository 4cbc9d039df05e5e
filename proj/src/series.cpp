#include "toreesnn/series.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "toreesnn/error.hpp"

namespace toreesnn {
namespace {

std::string describe(const std::initializer_list<std::pair<const char*, double>>& kv) {
    std::ostringstream os;
    os << std::setprecision(17);
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << ' ';
        os << k << '=' << v;
        first = false;
    }
    return os.str();
}

}  // namespace

std::string_view origin_name(Origin o) {
    switch (o) {
        case Origin::MackeyGlass: return "mackey-glass";
        case Origin::Narma: return "narma";
        case Origin::Lorenz: return "lorenz";
        case Origin::Henon: return "henon";
        case Origin::External: return "external";
    }
    return "external";
}

Origin parse_origin(std::string_view name) {
    if (name == "mackey-glass" || name == "mg" || name == "mackeyglass") return Origin::MackeyGlass;
    if (name == "narma") return Origin::Narma;
    if (name == "lorenz") return Origin::Lorenz;
    if (name == "henon") return Origin::Henon;
    throw InvalidArgument("unknown benchmark '" + std::string(name) + "'");
}

void validate(const TimeSeries& s) {
    if (s.values.empty()) throw InvalidArgument("time series is empty");
    for (std::size_t i = 0; i < s.values.size(); ++i)
        if (!std::isfinite(s.values[i]))
            throw InvalidArgument("time series has a non-finite sample at index " + std::to_string(i));
    if (s.normalized) {
        if (!(s.norm_max > s.norm_min)) throw InvalidArgument("normalized series has an empty range");
        for (double v : s.values)
            if (v < 0.0 || v > 1.0) throw InvalidArgument("normalized series leaves [0, 1]");
    }
}

TimeSeries gen_mackey_glass(const MgParams& p, std::size_t n, std::span<const double> history) {
    if (p.tau < 1) throw InvalidArgument("mackey-glass: tau must be >= 1");
    if (1.0 + p.b == 0.0) throw InvalidArgument("mackey-glass: 1 + b must be nonzero");
    if (n < 1) throw InvalidArgument("mackey-glass: n must be >= 1");
    const auto tau = static_cast<std::size_t>(p.tau);
    if (history.size() != tau + 1)
        throw InvalidArgument("mackey-glass: history needs tau + 1 = " + std::to_string(tau + 1) +
                              " values, got " + std::to_string(history.size()));
    for (double h : history)
        if (!std::isfinite(h)) throw InvalidArgument("mackey-glass: non-finite history value");

    // buf[0..tau] is the history, buf[tau] = x(0).
    std::vector<double> buf(history.begin(), history.end());
    buf.reserve(tau + 1 + n);
    const double scale = 1.0 / (1.0 + p.b);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = buf.back();
        const double lag = buf[buf.size() - 1 - tau];
        const double next = scale * (x + p.a * lag / (1.0 + std::pow(lag, 10)));
        if (!std::isfinite(next) || std::abs(next) > kDivergenceLimit)
            throw DivergenceError("mackey-glass diverged", i + 1);
        buf.push_back(next);
    }

    TimeSeries s;
    s.values.assign(buf.begin() + static_cast<std::ptrdiff_t>(tau + 1), buf.end());
    s.dt = p.step;
    s.origin = Origin::MackeyGlass;
    s.params = describe({{"a", p.a}, {"b", p.b}, {"tau", static_cast<double>(p.tau)}, {"step", p.step}});
    return s;
}

TimeSeries gen_mackey_glass(const MgParams& p, std::size_t n) {
    const std::vector<double> history(static_cast<std::size_t>(std::max(p.tau, 1)) + 1, 1.2);
    return gen_mackey_glass(p, n, history);
}

NarmaSeries narma_from_inputs(const NarmaParams& p, std::span<const double> input) {
    if (p.k < 1) throw InvalidArgument("narma: order k must be >= 1");
    const auto k = static_cast<std::size_t>(p.k);
    const std::size_t n = input.size();
    if (n < k + 2) throw InvalidArgument("narma: n must be >= k + 2");

    // y(t+1) = c1 y(t) + c2 y(t) sum_{i<k} y(t-i) + c3 x(t-k+1) x(t) + c4, zero history.
    std::vector<double> y(n, 0.0);
    auto y_at = [&](std::ptrdiff_t t) { return t < 0 ? 0.0 : y[static_cast<std::size_t>(t)]; };
    auto x_at = [&](std::ptrdiff_t t) { return t < 0 ? 0.0 : input[static_cast<std::size_t>(t)]; };
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = static_cast<std::ptrdiff_t>(i) - 1;  // y[i] = y(t+1)
        double window = 0.0;
        for (std::size_t j = 0; j < k; ++j) window += y_at(t - static_cast<std::ptrdiff_t>(j));
        const double yt = y_at(t);
        const double next = p.c1 * yt + p.c2 * yt * window +
                            p.c3 * x_at(t - static_cast<std::ptrdiff_t>(k) + 1) * x_at(t) + p.c4;
        if (!std::isfinite(next) || std::abs(next) > kDivergenceLimit)
            throw DivergenceError("narma diverged", i);
        y[i] = next;
    }

    NarmaSeries out;
    out.target.values = std::move(y);
    out.target.origin = Origin::Narma;
    out.target.params = describe({{"k", static_cast<double>(p.k)}, {"c1", p.c1}, {"c2", p.c2},
                                  {"c3", p.c3}, {"c4", p.c4}, {"input_low", p.input_low},
                                  {"input_high", p.input_high}});
    out.input.assign(input.begin(), input.end());
    return out;
}

NarmaSeries gen_narma(const NarmaParams& p, std::size_t n, std::uint64_t seed) {
    if (!(p.input_low < p.input_high)) throw InvalidArgument("narma: input_low must be < input_high");
    if (p.k < 1) throw InvalidArgument("narma: order k must be >= 1");
    if (n < static_cast<std::size_t>(p.k) + 2) throw InvalidArgument("narma: n must be >= k + 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(p.input_low, p.input_high);
    std::vector<double> x(n);
    for (double& v : x) v = dist(rng);
    NarmaSeries out = narma_from_inputs(p, x);
    out.target.seed = seed;
    return out;
}

LorenzState lorenz_derivative(const LorenzParams& p, const LorenzState& s) {
    return {p.sigma * (s.y - s.x), p.r * s.x - s.x * s.z - s.y, s.x * s.y - p.b * s.z};
}

LorenzState lorenz_rk4_step(const LorenzParams& p, const LorenzState& s) {
    const double h = p.dt;
    auto shift = [](const LorenzState& a, const LorenzState& d, double c) {
        return LorenzState{a.x + c * d.x, a.y + c * d.y, a.z + c * d.z};
    };
    const LorenzState k1 = lorenz_derivative(p, s);
    const LorenzState k2 = lorenz_derivative(p, shift(s, k1, h / 2));
    const LorenzState k3 = lorenz_derivative(p, shift(s, k2, h / 2));
    const LorenzState k4 = lorenz_derivative(p, shift(s, k3, h));
    return {s.x + h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
            s.y + h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y),
            s.z + h / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z)};
}

TimeSeries gen_lorenz(const LorenzParams& p, std::size_t n) {
    if (!(p.dt > 0.0)) throw InvalidArgument("lorenz: dt must be > 0");
    if (p.subsample < 1) throw InvalidArgument("lorenz: subsample must be >= 1");
    if (n < 1) throw InvalidArgument("lorenz: n must be >= 1");

    TimeSeries s;
    s.values.reserve(n);
    LorenzState st{p.x0, p.y0, p.z0};
    std::size_t step = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < p.subsample; ++j) {
            st = lorenz_rk4_step(p, st);
            ++step;
            if (!std::isfinite(st.x) || !std::isfinite(st.y) || !std::isfinite(st.z))
                throw DivergenceError("lorenz state became non-finite", step);
        }
        s.values.push_back(st.x);
    }
    s.dt = p.dt * p.subsample;
    s.origin = Origin::Lorenz;
    s.params = describe({{"sigma", p.sigma}, {"r", p.r}, {"b", p.b}, {"dt", p.dt},
                         {"subsample", static_cast<double>(p.subsample)},
                         {"x0", p.x0}, {"y0", p.y0}, {"z0", p.z0}});
    return s;
}

HenonState henon_step(const HenonParams& p, const HenonState& s) {
    return {s.y - p.a * s.x * s.x + 1.0, p.b * s.x};
}

TimeSeries gen_henon(const HenonParams& p, std::size_t n) {
    if (n < 1) throw InvalidArgument("henon: n must be >= 1");
    TimeSeries s;
    s.values.reserve(n);
    HenonState st{p.x0, p.y0};
    for (std::size_t i = 0; i < n; ++i) {
        st = henon_step(p, st);
        if (!std::isfinite(st.x) || std::abs(st.x) > kDivergenceLimit)
            throw DivergenceError("henon map diverged", i + 1);
        s.values.push_back(st.x);
    }
    s.origin = Origin::Henon;
    s.params = describe({{"a", p.a}, {"b", p.b}, {"x0", p.x0}, {"y0", p.y0}});
    return s;
}

TimeSeries normalize(const TimeSeries& s) {
    if (s.values.empty()) throw InvalidArgument("normalize: empty series");
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    const double mn = *lo;
    const double mx = *hi;
    if (!(mx - mn > 0.0)) throw InvalidArgument("normalize: series has zero range");
    TimeSeries out = s;
    const double range = mx - mn;
    for (double& v : out.values) v = (v - mn) / range;
    out.normalized = true;
    out.norm_min = mn;
    out.norm_max = mx;
    return out;
}

double denormalize(const TimeSeries& s, double value) {
    if (!s.normalized) throw InvalidArgument("denormalize: series is not normalized");
    return s.norm_min + value * (s.norm_max - s.norm_min);
}

void write_series_csv(std::ostream& os, const TimeSeries& s) {
    os << "index,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < s.values.size(); ++i) os << i << ',' << s.values[i] << '\n';
}

void write_series_metadata(std::ostream& os, const TimeSeries& s) {
    os << std::setprecision(17);
    os << "origin = " << origin_name(s.origin) << '\n';
    os << "params = " << s.params << '\n';
    os << "seed = " << s.seed << '\n';
    os << "normalized = " << (s.normalized ? "true" : "false") << '\n';
    os << "norm_min = " << s.norm_min << '\n';
    os << "norm_max = " << s.norm_max << '\n';
}

}  // namespace toreesnn
