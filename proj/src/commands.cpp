#include "convexinv/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "convexinv/io.hpp"
#include "convexinv/scenario.hpp"

namespace convexinv {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

template <class F>
std::string render(F&& write)
{
    std::ostringstream ss;
    write(ss);
    return ss.str();
}

json hashes(const fs::path& dir, const std::vector<std::string>& names)
{
    json out = json::object();
    for (const auto& n : names) out[n] = sha256_file(dir / n);
    return out;
}

struct Peak {
    double value = 0.0;
    double x1 = 0.0, x2 = 0.0;
};

Peak peak_of(const Coefficient& a)
{
    Peak p{-INFINITY, 0.0, 0.0};
    for (int i = 0; i < a.grid.n(); ++i)
        for (int j = 0; j < a.grid.n(); ++j)
            if (a.at(i, j) > p.value) p = {a.at(i, j), a.grid.x1(j), a.grid.x2(i)};
    return p;
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt, std::ostream& log)
{
    const std::string started = utc_now();
    Scenario sc = load_scenario(opt.scenario);
    if (opt.seed) sc.seed = *opt.seed;
    const InversionConfig& cfg = sc.config;

    const Grid2D grid = Grid2D::make(cfg.R, cfg.n_cells);
    const KGrid kg = KGrid::make(cfg.k_min, cfg.k_max, cfg.n_k);
    const CauchyData clean = simulate_cauchy(sc.shapes, sc.wave, grid, kg, sc.truth_refinement);
    const CauchyData noisy = add_noise(clean, sc.noise_level, sc.seed);

    fs::create_directories(opt.out);
    write_file(opt.out / "data_clean.txt", render([&](std::ostream& os) { write_cauchy(os, clean); }));
    write_file(opt.out / "data.txt", render([&](std::ostream& os) { write_cauchy(os, noisy); }));
    write_file(opt.out / "truth.txt",
               render([&](std::ostream& os) { write_coefficient(os, rasterize(sc.shapes, grid)); }));
    write_file(opt.out / "scenario.json", scenario_to_json(sc).dump(2) + "\n");
    json config = config_to_json(cfg);
    config["direction"] = {sc.wave.d1, sc.wave.d2};
    write_file(opt.out / "config.json", config.dump(2) + "\n");

    const std::vector<std::string> outputs = {"data_clean.txt", "data.txt", "truth.txt", "scenario.json",
                                              "config.json"};
    json manifest{{"command", "simulate"},
                  {"scenario", sc.name},
                  {"inputs", json::object()},
                  {"config", scenario_to_json(sc)},
                  {"seed", sc.seed},
                  {"outputs", hashes(opt.out, outputs)},
                  {"started", started},
                  {"finished", utc_now()}};
    if (fs::exists(opt.scenario)) manifest["inputs"][opt.scenario] = sha256_file(opt.scenario);
    write_file(opt.out / "manifest.json", manifest.dump(2) + "\n");

    log << "simulated " << sc.name << ": " << sc.shapes.size() << " shape(s), noise " << sc.noise_level << ", seed "
        << sc.seed << " -> " << opt.out.string() << '\n';
    return exit_ok;
}

int cmd_invert(const InvertOptions& opt, std::ostream& log)
{
    const std::string started = utc_now();
    const CauchyData cd = load_cauchy(opt.data);
    const json cfg_json = json::parse(read_file(opt.config));
    InversionConfig cfg = config_from_json(cfg_json);
    const IncidentWave wave = wave_from_json(cfg_json);
    if (cd.n_cells != cfg.n_cells || cd.n_k != cfg.n_k || cd.R != cfg.R || cd.k_min != cfg.k_min ||
        cd.k_max != cfg.k_max)
        throw FormatError("data header (R, Nx, kmin, kmax, Nk) does not match the config");

    const bool ablation = opt.no_carleman || cfg.lambda == 0.0;
    InversionResult res;
    Coefficient a;
    json extra = json::object();
    std::vector<IterationRecord> partial;
    fs::create_directories(opt.out);
    try {
        if (ablation) {
            AblationResult ab =
                ablation_no_weight(cd, wave, cfg, 20, [&](const IterationRecord& r) { partial.push_back(r); });
            res = std::move(ab.run);
            a = std::move(ab.best);
            extra["best_iterate"] = ab.best_iterate;
            cfg.lambda = 0.0;
        } else {
            LoopOptions loop;
            loop.on_record = [&](const IterationRecord& r) { partial.push_back(r); };
            res = run_inversion(cd, wave, cfg, loop);
            a = res.a;
        }
    } catch (...) {
        // keep what was computed before the failure
        write_file(opt.out / "history.txt", render([&](std::ostream& os) { write_history(os, partial); }));
        for (const auto& r : partial)
            log << "n=" << r.n << " J=" << r.J << " |grad|=" << r.gradient_norm << " max a=" << r.a_max << '\n';
        throw;
    }

    write_file(opt.out / "coefficient.txt", render([&](std::ostream& os) { write_coefficient(os, a); }));
    write_file(opt.out / "history.txt", render([&](std::ostream& os) { write_history(os, res.records); }));

    const Peak peak = peak_of(a);
    json summary{{"converged", res.converged},
                 {"iterations", res.records.size()},
                 {"tolerance_met_at", res.tolerance_met_at ? json(*res.tolerance_met_at) : json(nullptr)},
                 {"non_decrease", res.non_decrease},
                 {"gradient_evaluations", res.gradient_evaluations},
                 {"forward_sweeps", res.forward_sweeps},
                 {"phase_jumps", res.phase_jumps},
                 {"a_max", peak.value},
                 {"a_max_at", {peak.x1, peak.x2}},
                 {"ablation", ablation}};
    summary.update(extra);
    json config = config_to_json(cfg);
    config["direction"] = {wave.d1, wave.d2};
    json manifest{{"command", "invert"},
                  {"inputs", {{opt.data.string(), sha256_file(opt.data)}, {opt.config.string(), sha256_file(opt.config)}}},
                  {"config", config},
                  {"seed", cd.seed},
                  {"outputs", hashes(opt.out, {"coefficient.txt", "history.txt"})},
                  {"result", summary},
                  {"started", started},
                  {"finished", utc_now()}};
    write_file(opt.out / "manifest.json", manifest.dump(2) + "\n");

    for (const auto& r : res.records)
        log << "n=" << r.n << " J=" << r.J << " |grad|=" << r.gradient_norm << " max a=" << r.a_max << '\n';
    if (res.non_decrease) log << "warning: J did not decrease on three consecutive iterations\n";
    log << "max a = " << peak.value << " at (" << peak.x1 << ", " << peak.x2 << ")";
    if (ablation) log << ", smallest-J iterate " << extra["best_iterate"].get<int>();
    log << '\n';
    if (res.converged) {
        log << "tolerance met at n=" << *res.tolerance_met_at << '\n';
        return exit_ok;
    }
    log << "stopped at the iteration cap without meeting the tolerance\n";
    return exit_iteration_cap;
}

int cmd_validate(const CheckOptions& opt, std::ostream& log)
{
    bool all = true;
    for (const auto& r : run_validation_suite(opt)) {
        all = all && r.passed;
        log << (r.passed ? "PASS " : "FAIL ") << r.name << ": measured " << r.measured << " (bound " << r.threshold
            << ")";
        if (!r.detail.empty()) log << " " << r.detail;
        log << '\n';
    }
    return all ? exit_ok : exit_check_failed;
}

int cmd_export(const ExportOptions& opt, std::ostream& log)
{
    const Coefficient a = load_coefficient(opt.result);
    const Grid2D& g = a.grid;
    int row = 0;
    for (int i = 1; i < g.n(); ++i)
        if (std::abs(g.x2(i) - opt.row) < std::abs(g.x2(row) - opt.row)) row = i;
    if (std::abs(g.x2(row) - opt.row) > 1e-9 * g.h)
        log << "warning: x2 = " << opt.row << " is not a grid row; using nearest row x2 = " << g.x2(row) << '\n';

    const fs::path dir = opt.out ? *opt.out : opt.result.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    const std::string stem = opt.result.stem().string();
    write_file(dir / (stem + "_row.txt"), render([&](std::ostream& os) {
                   os << "# x1 a (x2 = " << format_double(g.x2(row)) << ")\n";
                   for (int j = 0; j < g.n(); ++j) os << format_double(g.x1(j)) << ' ' << format_double(a.at(row, j)) << '\n';
               }));
    write_file(dir / (stem + "_heatmap.txt"), render([&](std::ostream& os) {
                   os << "# x1 x2 a\n";
                   for (int i = 0; i < g.n(); ++i)
                       for (int j = 0; j < g.n(); ++j)
                           os << format_double(g.x1(j)) << ' ' << format_double(g.x2(i)) << ' '
                              << format_double(a.at(i, j)) << '\n';
               }));
    log << "wrote " << (dir / (stem + "_row.txt")).string() << " and " << (dir / (stem + "_heatmap.txt")).string()
        << '\n';
    return exit_ok;
}

}  // namespace convexinv
