#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "toreesnn/error.hpp"
#include "toreesnn/harness.hpp"

namespace toreesnn {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw InvalidArgument("config: '" + key + "' expects a number, got '" + v + "'");
    return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw InvalidArgument("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
    return out;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> parts;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    return parts;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InvalidArgument("config: '" + key + "' expects true or false, got '" + v + "'");
}

template <typename T>
std::string show(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

template <typename T>
std::string show_list(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

struct Key {
    std::string name;
    std::string help;
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

template <typename T>
Key real_key(std::string name, std::string help, T ExperimentConfig::*group, double T::*field) {
    return {name, std::move(help), [=](const ExperimentConfig& c) { return show(c.*group.*field); },
            [=](ExperimentConfig& c, const std::string& v) { c.*group.*field = to_double(name, v); }};
}

template <typename T>
Key int_key(std::string name, std::string help, T ExperimentConfig::*group, int T::*field) {
    return {name, std::move(help), [=](const ExperimentConfig& c) { return show(c.*group.*field); },
            [=](ExperimentConfig& c, const std::string& v) {
                c.*group.*field = static_cast<int>(to_uint(name, v));
            }};
}

Key size_key(std::string name, std::string help, std::size_t ExperimentConfig::*field) {
    return {name, std::move(help), [=](const ExperimentConfig& c) { return show(c.*field); },
            [=](ExperimentConfig& c, const std::string& v) { c.*field = to_uint(name, v); }};
}

Key top_real(std::string name, std::string help, double ExperimentConfig::*field) {
    return {name, std::move(help), [=](const ExperimentConfig& c) { return show(c.*field); },
            [=](ExperimentConfig& c, const std::string& v) { c.*field = to_double(name, v); }};
}

const std::vector<Key>& keys() {
    using C = ExperimentConfig;
    static const std::vector<Key> table = {
        {"benchmark", "mackey-glass | narma | lorenz | henon",
         [](const C& c) { return std::string(origin_name(c.benchmark)); },
         [](C& c, const std::string& v) { c.benchmark = parse_origin(v); }},
        real_key("mg_a", "Mackey-Glass a", &C::mg, &MgParams::a),
        real_key("mg_b", "Mackey-Glass b", &C::mg, &MgParams::b),
        int_key("mg_tau", "Mackey-Glass delay in samples", &C::mg, &MgParams::tau),
        real_key("mg_step", "Mackey-Glass time step (metadata)", &C::mg, &MgParams::step),
        int_key("narma_order", "NARMA order k", &C::narma, &NarmaParams::k),
        real_key("narma_c1", "NARMA c1", &C::narma, &NarmaParams::c1),
        real_key("narma_c2", "NARMA c2", &C::narma, &NarmaParams::c2),
        real_key("narma_c3", "NARMA c3", &C::narma, &NarmaParams::c3),
        real_key("narma_c4", "NARMA c4", &C::narma, &NarmaParams::c4),
        real_key("narma_input_low", "NARMA input lower bound", &C::narma, &NarmaParams::input_low),
        real_key("narma_input_high", "NARMA input upper bound", &C::narma, &NarmaParams::input_high),
        real_key("lorenz_sigma", "Lorenz sigma", &C::lorenz, &LorenzParams::sigma),
        real_key("lorenz_r", "Lorenz r", &C::lorenz, &LorenzParams::r),
        real_key("lorenz_b", "Lorenz b", &C::lorenz, &LorenzParams::b),
        real_key("lorenz_dt", "Lorenz RK4 step", &C::lorenz, &LorenzParams::dt),
        int_key("lorenz_subsample", "Lorenz steps per emitted sample", &C::lorenz, &LorenzParams::subsample),
        real_key("lorenz_x0", "Lorenz initial x", &C::lorenz, &LorenzParams::x0),
        real_key("lorenz_y0", "Lorenz initial y", &C::lorenz, &LorenzParams::y0),
        real_key("lorenz_z0", "Lorenz initial z", &C::lorenz, &LorenzParams::z0),
        real_key("henon_a", "Henon a", &C::henon, &HenonParams::a),
        real_key("henon_b", "Henon b", &C::henon, &HenonParams::b),
        real_key("henon_x0", "Henon initial x", &C::henon, &HenonParams::x0),
        real_key("henon_y0", "Henon initial y", &C::henon, &HenonParams::y0),
        size_key("k", "forecaster lag order", &C::k),
        size_key("hidden", "forecaster hidden width H", &C::hidden),
        size_key("window", "classifier error window d", &C::window),
        size_key("classifier_hidden", "classifier hidden/context width Hc", &C::classifier_hidden),
        size_key("epochs_forecaster", "forecaster training epochs", &C::epochs_forecaster),
        size_key("epochs_classifier", "classifier training epochs", &C::epochs_classifier),
        top_real("lr_forecaster", "forecaster learning rate", &C::lr_forecaster),
        top_real("lr_classifier", "classifier learning rate", &C::lr_classifier),
        top_real("sigmoid_gain", "sigmoid gain c of the forecaster", &C::sigmoid_gain),
        {"classifier_activation", "classifier hidden activation: sigmoid | hyperbolic",
         [](const C& c) { return std::string(activation_name(c.classifier_activation)); },
         [](C& c, const std::string& v) { c.classifier_activation = parse_activation(v); }},
        top_real("delta_mass", "share of |errors| inside [-delta, delta]", &C::delta_mass),
        {"omega_fractions", "omega candidates as multiples of delta (comma list)",
         [](const C& c) { return show_list(c.omega_fractions); },
         [](C& c, const std::string& v) {
             c.omega_fractions.clear();
             for (const auto& p : split_list(v)) c.omega_fractions.push_back(to_double("omega_fractions", p));
         }},
        top_real("holdout_fraction", "trailing share of split B held out for classifier accuracy",
                 &C::holdout_fraction),
        top_real("taylor_dt", "Taylor step in samples", &C::taylor_dt),
        {"seeds", "RNG seeds (comma list)", [](const C& c) { return show_list(c.seeds); },
         [](C& c, const std::string& v) {
             c.seeds.clear();
             for (const auto& p : split_list(v)) c.seeds.push_back(to_uint("seeds", p));
         }},
        {"split", "forecaster,classifier,test sample counts",
         [](const C& c) {
             return show(c.split.forecaster) + "," + show(c.split.classifier) + "," + show(c.split.test);
         },
         [](C& c, const std::string& v) {
             const auto parts = split_list(v);
             if (parts.size() != 3) throw InvalidArgument("config: 'split' expects three counts");
             c.split = {to_uint("split", parts[0]), to_uint("split", parts[1]), to_uint("split", parts[2])};
         }},
        size_key("warmup", "samples discarded before the first split", &C::warmup),
        {"parallel", "run seeds concurrently", [](const C& c) { return std::string(c.parallel ? "true" : "false"); },
         [](C& c, const std::string& v) { c.parallel = to_bool("parallel", v); }},
    };
    return table;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
    if (cfg.k == 0 || cfg.hidden == 0) throw InvalidArgument("config: k and hidden must be >= 1");
    if (cfg.window == 0 || cfg.classifier_hidden == 0)
        throw InvalidArgument("config: window and classifier_hidden must be >= 1");
    if (cfg.epochs_forecaster == 0 || cfg.epochs_classifier == 0)
        throw InvalidArgument("config: epoch counts must be >= 1");
    if (!(cfg.lr_forecaster >= 0.0) || !(cfg.lr_classifier >= 0.0))
        throw InvalidArgument("config: learning rates must be non-negative");
    if (!(cfg.sigmoid_gain > 0.0)) throw InvalidArgument("config: sigmoid_gain must be positive");
    if (!(cfg.delta_mass > 0.0 && cfg.delta_mass < 1.0))
        throw InvalidArgument("config: delta_mass must be in (0, 1)");
    if (cfg.omega_fractions.empty()) throw InvalidArgument("config: omega_fractions is empty");
    for (double f : cfg.omega_fractions)
        if (!(f >= 0.0)) throw InvalidArgument("config: omega_fractions must be non-negative");
    if (!(cfg.holdout_fraction >= 0.0 && cfg.holdout_fraction < 1.0))
        throw InvalidArgument("config: holdout_fraction must be in [0, 1)");
    if (!(cfg.taylor_dt > 0.0)) throw InvalidArgument("config: taylor_dt must be positive");
    if (cfg.seeds.empty()) throw InvalidArgument("config: seeds is empty");
    if (std::set<std::uint64_t>(cfg.seeds.begin(), cfg.seeds.end()).size() != cfg.seeds.size())
        throw InvalidArgument("config: seeds must be distinct");
    if (cfg.split.forecaster <= cfg.k + 1 || cfg.split.classifier <= cfg.k + cfg.window + 1 ||
        cfg.split.test == 0)
        throw InvalidArgument("config: split counts are too small for k = " + std::to_string(cfg.k) +
                              " and window = " + std::to_string(cfg.window));
    if (cfg.benchmark == Origin::MackeyGlass && cfg.warmup < static_cast<std::size_t>(std::max(cfg.mg.tau, 0)))
        throw InvalidArgument("config: warmup must cover the Mackey-Glass delay");
    if (cfg.benchmark == Origin::External) throw InvalidArgument("config: benchmark must be generated");
}

ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    std::set<std::string> seen;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const auto& table = keys();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == key; });
        if (it == table.end())
            throw InvalidArgument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw InvalidArgument("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        it->set(cfg, value);
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path.string());
    return parse_config(in);
}

std::string config_help() {
    const ExperimentConfig defaults;
    std::ostringstream os;
    os << "Config keys (key = value, '#' comments):\n";
    for (const auto& k : keys()) {
        std::string name = k.name;
        name.resize(std::max<std::size_t>(name.size(), 22), ' ');
        os << "  " << name << " " << k.help << " [default: " << k.get(defaults) << "]\n";
    }
    return os.str();
}

}  // namespace toreesnn
