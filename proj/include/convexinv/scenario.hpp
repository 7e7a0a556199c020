#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "convexinv/forward.hpp"
#include "convexinv/inversion.hpp"

namespace convexinv {

// A synthetic experiment: scatterers, incident direction, noise and the
// reconstruction settings. The grid and wavenumber band of the data come
// from `config`.
struct Scenario {
    std::string name;
    std::vector<Shape> shapes;
    IncidentWave wave;
    double noise_level = 0.05;
    std::uint64_t seed = 1;
    int truth_refinement = 2;  // data simulated on a grid this many times finer
    InversionConfig config;
};

nlohmann::json config_to_json(const InversionConfig& cfg);
// Keys absent from `j` keep their value from `base`; unknown keys are rejected.
InversionConfig config_from_json(const nlohmann::json& j, InversionConfig base = {});

nlohmann::json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const nlohmann::json& j);

std::vector<std::string> builtin_scenario_names();
std::optional<Scenario> builtin_scenario(const std::string& name);

// A built-in name or a path to a scenario file. Shapes are checked against
// the domain, so a bad scenario fails here with a node-level diagnostic.
Scenario load_scenario(const std::string& name_or_path);

// The incident direction stored next to the config keys in an invert config
// file (`direction`: [d1, d2]); defaults to (0, -1).
IncidentWave wave_from_json(const nlohmann::json& j);

}  // namespace convexinv
