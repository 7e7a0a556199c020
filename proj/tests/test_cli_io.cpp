#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "convexinv/commands.hpp"
#include "convexinv/io.hpp"
#include "convexinv/scenario.hpp"

using namespace convexinv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("convexinv_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

CauchyData random_cauchy()
{
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd(0.0, 1e3);
    CauchyData cd;
    cd.R = 0.8;
    cd.n_cells = 4;
    cd.k_min = 0.5;
    cd.k_max = 2.0;
    cd.n_k = 3;
    cd.noise_level = 0.05;
    cd.seed = 18446744073709551615ull;
    for (int m = 0; m < cd.n() * cd.n_k; ++m) {
        cd.g0.push_back({nd(rng), nd(rng) * 1e-300});
        cd.g1.push_back({nd(rng) / 7.0, -0.1});
    }
    return cd;
}

std::string cauchy_text(const CauchyData& cd)
{
    std::ostringstream os;
    write_cauchy(os, cd);
    return os.str();
}

}  // namespace

TEST_CASE("Cauchy data round trip is bit exact")
{
    const CauchyData cd = random_cauchy();
    std::istringstream is(cauchy_text(cd));
    const CauchyData back = read_cauchy(is);
    CHECK(back.R == cd.R);
    CHECK(back.n_cells == cd.n_cells);
    CHECK(back.k_min == cd.k_min);
    CHECK(back.k_max == cd.k_max);
    CHECK(back.n_k == cd.n_k);
    CHECK(back.noise_level == cd.noise_level);
    CHECK(back.seed == cd.seed);
    CHECK(back.g0 == cd.g0);
    CHECK(back.g1 == cd.g1);
    CHECK(cauchy_text(cd).rfind("# 0.8 4 0.5 2 3 0.05 18446744073709551615\n", 0) == 0);
}

TEST_CASE("missing g1 columns are a hard error naming the column")
{
    const CauchyData cd = random_cauchy();
    std::string text = cauchy_text(cd);
    std::istringstream lines(text);
    std::string header, out, line;
    std::getline(lines, header);
    out = header + "\n";
    while (std::getline(lines, line)) {
        std::istringstream ss(line);
        std::string a, b, c, d;
        ss >> a >> b >> c >> d;
        out += a + " " + b + " " + c + " " + d + "\n";
    }
    std::istringstream is(out);
    try {
        read_cauchy(is);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("Re(g1)") != std::string::npos);
    }
}

TEST_CASE("malformed files are rejected")
{
    std::istringstream no_header("0 0 1 2 3 4\n");
    CHECK_THROWS_AS(read_cauchy(no_header), FormatError);
    std::istringstream short_header("# 0.8 4 0.5 2 3\n");
    CHECK_THROWS_AS(read_cauchy(short_header), FormatError);
    std::istringstream missing_rows("# 0.8 2 0.5 2 1 0 1\n0 0 1 0 0 1\n");
    CHECK_THROWS_AS(read_cauchy(missing_rows), FormatError);
    std::istringstream bad_number("# 0.8 2 0.5 2 1 0 1\n0 0 1,5 0 0 1\n1 0 1 0 0 1\n2 0 1 0 0 1\n");
    CHECK_THROWS_AS(read_cauchy(bad_number), FormatError);
}

TEST_CASE("coefficient and history files")
{
    const Coefficient a = rasterize({Disk{0.1, 0.2, 0.3, 1.0 / 3.0}}, Grid2D::make(0.8, 6));
    std::ostringstream os;
    write_coefficient(os, a);
    std::istringstream is(os.str());
    const Coefficient back = read_coefficient(is);
    CHECK(back.grid == a.grid);
    CHECK(back.values == a.values);

    std::ostringstream hs;
    write_history(hs, {{0, 1.5, 2.0, 3.0, 0.1}, {1, 0.1, 0.2, 2.9, 0.1}});
    CHECK(hs.str() == "# n J grad_norm a_max\n0 1.5 2 3\n1 0.1 0.2 2.9\n");
}

TEST_CASE("numbers are written independently of the locale")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5e-300) == "-2.5e-300");
    CHECK(parse_double(format_double(M_PI), "pi") == M_PI);
}

TEST_CASE("built-in scenarios")
{
    CHECK(builtin_scenario_names().size() == 5);
    for (const auto& name : builtin_scenario_names()) {
        const Scenario sc = load_scenario(name);
        CHECK(sc.name == name);
        CHECK(sc.noise_level == 0.05);
        CHECK(sc.config.n_cells == 28);
        CHECK(sc.config.n_k == 50);
        CHECK(sc.config.R == 0.8);
        CHECK(sc.config.k_min == 0.5);
        CHECK(sc.config.k_max == 2.0);
        for (const auto& s : sc.shapes) CHECK(shape_value(s) >= 0.0);
    }
    const Scenario e1 = *builtin_scenario("example1");
    REQUIRE(e1.shapes.size() == 1);
    CHECK(std::get<Disk>(e1.shapes[0]).value == 3.0);
    CHECK_FALSE(builtin_scenario("example9").has_value());
}

TEST_CASE("scenario and config JSON")
{
    Scenario sc = *builtin_scenario("example3a");
    sc.seed = 42;
    sc.config.lambda = 2.5;
    const Scenario back = scenario_from_json(nlohmann::json::parse(scenario_to_json(sc).dump()));
    CHECK(scenario_to_json(back) == scenario_to_json(sc));

    const InversionConfig c = config_from_json(nlohmann::json{{"step", 2e-3}, {"max_iterations", 7}});
    CHECK(c.step == 2e-3);
    CHECK(c.max_iterations == 7);
    CHECK(c.rho == 1e-5);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"stepsize", 1.0}}), FormatError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"step", -1.0}}), std::invalid_argument);
}

TEST_CASE("an invalid scenario is rejected with a node diagnostic")
{
    const fs::path dir = scratch("badscenario");
    nlohmann::json j = scenario_to_json(*builtin_scenario("example1"));
    j["shapes"][0]["center"] = {0.0, 0.7};
    write_file(dir / "bad.json", j.dump());
    try {
        load_scenario((dir / "bad.json").string());
        FAIL("expected InvalidGeometryError");
    } catch (const InvalidGeometryError& e) {
        CHECK(std::string(e.what()).find("node (i=") != std::string::npos);
    }
    CHECK_THROWS(load_scenario("no_such_scenario"));
}

TEST_CASE("simulate writes reproducible files")
{
    const fs::path dir = scratch("simulate");
    nlohmann::json j = scenario_to_json(*builtin_scenario("example1"));
    j["config"]["n_cells"] = 10;
    j["config"]["n_k"] = 4;
    j["truth_refinement"] = 1;
    write_file(dir / "small.json", j.dump());
    std::ostringstream log;
    SimulateOptions opt{(dir / "small.json").string(), dir / "a", std::nullopt};
    CHECK(cmd_simulate(opt, log) == exit_ok);
    opt.out = dir / "b";
    CHECK(cmd_simulate(opt, log) == exit_ok);
    for (const char* f : {"data.txt", "data_clean.txt", "truth.txt", "config.json", "scenario.json"})
        CHECK(read_file(dir / "a" / f) == read_file(dir / "b" / f));
    opt.out = dir / "c";
    opt.seed = 99;
    CHECK(cmd_simulate(opt, log) == exit_ok);
    CHECK(read_file(dir / "a" / "data.txt") != read_file(dir / "c" / "data.txt"));
    CHECK(read_file(dir / "a" / "data_clean.txt") == read_file(dir / "c" / "data_clean.txt"));

    const auto manifest = nlohmann::json::parse(read_file(dir / "a" / "manifest.json"));
    CHECK(manifest["outputs"]["data.txt"] == sha256_file(dir / "a" / "data.txt"));
    CHECK(manifest["seed"] == 1);

    const CauchyData noisy = load_cauchy(dir / "a" / "data.txt");
    CHECK(noisy.noise_level == 0.05);
    CHECK(noisy.n_cells == 10);

    // rerunning from the recorded scenario reproduces the outputs
    SimulateOptions again{(dir / "a" / "scenario.json").string(), dir / "d", std::nullopt};
    CHECK(cmd_simulate(again, log) == exit_ok);
    CHECK(sha256_file(dir / "d" / "data.txt") == sha256_file(dir / "a" / "data.txt"));
}

TEST_CASE("empty scene gives incident-wave traces")
{
    const fs::path dir = scratch("empty");
    nlohmann::json j = scenario_to_json(*builtin_scenario("example1"));
    j["shapes"] = nlohmann::json::array();
    j["noise_level"] = 0.0;
    j["config"]["n_cells"] = 6;
    j["config"]["n_k"] = 3;
    write_file(dir / "empty.json", j.dump());
    std::ostringstream log;
    CHECK(cmd_simulate({(dir / "empty.json").string(), dir / "out", std::nullopt}, log) == exit_ok);
    const CauchyData cd = load_cauchy(dir / "out" / "data.txt");
    const KGrid kg = KGrid::make(0.5, 2.0, 3);
    const IncidentWave w;
    for (int r = 0; r < 3; ++r)
        for (int j1 = 0; j1 < cd.n(); ++j1) {
            const double x1 = -0.8 + j1 * 1.6 / 6;
            CHECK(std::abs(cd.g0[cd.index(j1, r)] - w.value(x1, 0.8, kg.midpoints[r])) < 1e-15);
        }
}

TEST_CASE("invert writes history, coefficient and manifest")
{
    const fs::path dir = scratch("invert");
    nlohmann::json j = scenario_to_json(*builtin_scenario("example1"));
    j["shapes"] = nlohmann::json::array();
    j["noise_level"] = 0.0;
    j["config"]["n_cells"] = 8;
    j["config"]["n_k"] = 4;
    write_file(dir / "s.json", j.dump());
    std::ostringstream log;
    CHECK(cmd_simulate({(dir / "s.json").string(), dir / "data", std::nullopt}, log) == exit_ok);
    CHECK(cmd_invert({dir / "data" / "data.txt", dir / "data" / "config.json", dir / "inv", false}, log) == exit_ok);
    const auto manifest = nlohmann::json::parse(read_file(dir / "inv" / "manifest.json"));
    CHECK(manifest["result"]["converged"] == true);
    CHECK(manifest["result"]["tolerance_met_at"] == 1);
    const std::string history = read_file(dir / "inv" / "history.txt");
    CHECK(history.rfind("# n J grad_norm a_max\n0 ", 0) == 0);
    CHECK(std::count(history.begin(), history.end(), '\n') == 3);

    // a config that disagrees with the data header
    nlohmann::json cfg = nlohmann::json::parse(read_file(dir / "data" / "config.json"));
    cfg["n_cells"] = 10;
    write_file(dir / "other.json", cfg.dump());
    CHECK_THROWS_AS(cmd_invert({dir / "data" / "data.txt", dir / "other.json", dir / "inv2", false}, log), FormatError);
}

TEST_CASE("export of the truth coefficient")
{
    const fs::path dir = scratch("export");
    const Grid2D g = Grid2D::make(0.8, 28);
    const Coefficient truth = rasterize(builtin_scenario("example1")->shapes, g);
    write_file(dir / "truth.txt", [&] {
        std::ostringstream os;
        write_coefficient(os, truth);
        return os.str();
    }());
    std::ostringstream log;
    CHECK(cmd_export({dir / "truth.txt", 0.45, std::nullopt}, log) == exit_ok);
    CHECK(log.str().find("nearest row") != std::string::npos);

    std::istringstream row(read_file(dir / "truth_row.txt"));
    std::string line;
    std::getline(row, line);
    int rows = 0, plateau = 0;
    double x1, a;
    while (row >> x1 >> a) {
        ++rows;
        if (std::abs(x1) < 0.15) {
            CHECK(a == 3.0);
            ++plateau;
        }
        if (std::abs(x1) > 0.25) CHECK(a == 0.0);
    }
    CHECK(rows == 29);
    CHECK(plateau >= 5);

    std::istringstream heat(read_file(dir / "truth_heatmap.txt"));
    std::getline(heat, line);
    int count = 0;
    while (std::getline(heat, line)) ++count;
    CHECK(count == 29 * 29);

    write_file(dir / "zero.txt", [&] {
        std::ostringstream os;
        write_coefficient(os, zero_coefficient(g));
        return os.str();
    }());
    CHECK(cmd_export({dir / "zero.txt", 0.45, dir / "z"}, log) == exit_ok);
    std::istringstream zr(read_file(dir / "z" / "zero_row.txt"));
    std::getline(zr, line);
    while (zr >> x1 >> a) CHECK(a == 0.0);
}

TEST_CASE("validate reports an injected fault")
{
    CheckOptions opt;
    opt.d_tolerance = 1e-20;
    const CheckResult r = check_d_structure(opt);
    CHECK_FALSE(r.passed);
    CHECK(check_d_structure().passed);
    CHECK(check_orthonormality().passed);
}
