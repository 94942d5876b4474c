#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "censorsim/model.hpp"

namespace censorsim {

/// Fully resolved configuration. Keys absent from the document take the
/// defaults below; SimParams carries its own defaults.
struct Config {
    SimParams sim;
    std::size_t samples = 200;           // sweep design size
    bool sweep_radical_fraction = false; // add radical_fraction in [0,1] to the design
};

/// Parses one JSON object. Unknown keys, wrong types and out-of-range values
/// throw ParameterError naming the key (and its legal range).
Config parse_config_text(const std::string& text);
Config parse_config(const std::filesystem::path& path);

nlohmann::json to_json(const SimParams& p);
nlohmann::json to_json(const Config& c);

}  // namespace censorsim
