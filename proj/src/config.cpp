#include "censorsim/config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace censorsim {

using nlohmann::json;

namespace {

double get_probability(const json& value, const std::string& key) {
    if (!value.is_number()) throw ParameterError(key + ": expected a number in [0,1]");
    const double p = value.get<double>();
    if (!(p >= 0.0 && p <= 1.0))
        throw ParameterError(key + ": value " + value.dump() + " outside legal range [0,1]");
    return p;
}

template <class T>
T get_unsigned(const json& value, const std::string& key, T min, T max) {
    const std::string range = "[" + std::to_string(min) + ", " + std::to_string(max) + "]";
    if (!value.is_number_integer()) throw ParameterError(key + ": expected an integer in " + range);
    if (value.is_number_unsigned()) {
        const auto v = value.get<std::uint64_t>();
        if (v >= min && v <= max) return static_cast<T>(v);
    }
    throw ParameterError(key + ": value " + value.dump() + " outside legal range " + range);
}

}  // namespace

Config parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParameterError("config: top level must be a JSON object");

    Config c;
    SimParams& p = c.sim;
    constexpr auto u32max = std::numeric_limits<std::uint32_t>::max();
    for (const auto& [key, value] : doc.items()) {
        if (key == "n_agents") {
            p.n_agents = get_unsigned<std::uint32_t>(value, key, 2, u32max);
        } else if (key == "k_neighbors") {
            p.k_neighbors = get_unsigned<std::uint32_t>(value, key, 2, u32max);
        } else if (key == "rewire_prob") {
            p.rewire_prob = get_probability(value, key);
        } else if (key == "radical_fraction") {
            p.radical_fraction = get_probability(value, key);
        } else if (key == "homophily") {
            p.homophily = get_probability(value, key);
        } else if (key == "tolerance") {
            p.tolerance = get_probability(value, key);
        } else if (key == "mode") {
            if (!value.is_string())
                throw ParameterError("mode: expected one of decentralized, centralized, mixed");
            p.mode = parse_mode(value.get<std::string>());
        } else if (key == "n_steps") {
            p.n_steps = get_unsigned<std::uint32_t>(value, key, 0, u32max);
        } else if (key == "seed") {
            p.seed = get_unsigned<std::uint64_t>(value, key, 0, std::numeric_limits<std::uint64_t>::max());
        } else if (key == "samples") {
            c.samples = get_unsigned<std::size_t>(value, key, 1, 10'000'000);
        } else if (key == "sweep_radical_fraction") {
            if (!value.is_boolean()) throw ParameterError("sweep_radical_fraction: expected true or false");
            c.sweep_radical_fraction = value.get<bool>();
        } else {
            throw ParameterError("config: unknown key \"" + key + "\"");
        }
    }
    // Cross-field constraints (k even and below n_agents).
    p.validate();
    return c;
}

Config parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("config: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

json to_json(const SimParams& p) {
    return {{"n_agents", p.n_agents},       {"k_neighbors", p.k_neighbors},
            {"rewire_prob", p.rewire_prob}, {"radical_fraction", p.radical_fraction},
            {"homophily", p.homophily},     {"tolerance", p.tolerance},
            {"mode", to_string(p.mode)},    {"n_steps", p.n_steps},
            {"seed", p.seed}};
}

json to_json(const Config& c) {
    json j = to_json(c.sim);
    j["samples"] = c.samples;
    j["sweep_radical_fraction"] = c.sweep_radical_fraction;
    return j;
}

}  // namespace censorsim
