#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "convexinv/checks.hpp"

namespace convexinv {

// Exit codes shared by the command line front end.
inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_check_failed = 2;
inline constexpr int exit_iteration_cap = 3;

struct SimulateOptions {
    std::string scenario;  // built-in name or scenario file
    std::filesystem::path out;
    std::optional<std::uint64_t> seed;
};

// Writes data_clean.txt, data.txt (noisy), truth.txt, scenario.json,
// config.json and manifest.json into `out`.
int cmd_simulate(const SimulateOptions& opt, std::ostream& log);

struct InvertOptions {
    std::filesystem::path data;
    std::filesystem::path config;
    std::filesystem::path out;
    bool no_carleman = false;
};

// Writes coefficient.txt, history.txt and manifest.json. Returns exit_ok
// when the tolerance was met and exit_iteration_cap otherwise. With
// no_carleman (or lambda = 0 in the config) runs the fixed-length ablation
// and writes its smallest-J iterate.
int cmd_invert(const InvertOptions& opt, std::ostream& log);

int cmd_validate(const CheckOptions& opt, std::ostream& log);

struct ExportOptions {
    std::filesystem::path result;
    double row = 0.45;
    std::optional<std::filesystem::path> out;  // defaults to the result's directory
};

// Writes <stem>_row.txt with `x1 a` rows at the grid row nearest to x2 = row
// and <stem>_heatmap.txt with `x1 x2 a` rows over all nodes.
int cmd_export(const ExportOptions& opt, std::ostream& log);

}  // namespace convexinv
