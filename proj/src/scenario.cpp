#include "convexinv/scenario.hpp"

#include <set>
#include <stdexcept>

#include "convexinv/io.hpp"

namespace convexinv {

using nlohmann::json;

json config_to_json(const InversionConfig& c)
{
    return json{{"step", c.step},         {"rho", c.rho},
                {"alpha1", c.alpha1},     {"alpha2", c.alpha2},
                {"lambda", c.lambda},     {"s", c.s},
                {"tolerance", c.tolerance}, {"max_iterations", c.max_iterations},
                {"n_modes", c.n_modes},   {"n_cells", c.n_cells},
                {"n_k", c.n_k},           {"k_min", c.k_min},
                {"k_max", c.k_max},       {"R", c.R},
                {"xi", c.xi},             {"clamp_negative", c.clamp_negative}};
}

InversionConfig config_from_json(const json& j, InversionConfig c)
{
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    static const std::set<std::string> known = {
        "step",  "rho",     "alpha1", "alpha2", "lambda", "s",   "tolerance", "max_iterations",
        "n_modes", "n_cells", "n_k",  "k_min",  "k_max",  "R",   "xi",        "clamp_negative",
        "direction"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw FormatError("config: unknown key '" + key + "'");

    auto take = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    take("step", c.step);
    take("rho", c.rho);
    take("alpha1", c.alpha1);
    take("alpha2", c.alpha2);
    take("lambda", c.lambda);
    take("s", c.s);
    take("tolerance", c.tolerance);
    take("max_iterations", c.max_iterations);
    take("n_modes", c.n_modes);
    take("n_cells", c.n_cells);
    take("n_k", c.n_k);
    take("k_min", c.k_min);
    take("k_max", c.k_max);
    take("R", c.R);
    take("xi", c.xi);
    take("clamp_negative", c.clamp_negative);
    c.validate();
    return c;
}

IncidentWave wave_from_json(const json& j)
{
    if (!j.contains("direction")) return IncidentWave{};
    const auto d = j.at("direction").get<std::vector<double>>();
    if (d.size() != 2) throw FormatError("direction must have two components");
    return IncidentWave(d[0], d[1]);
}

namespace {

json shape_to_json(const Shape& s)
{
    if (const auto* d = std::get_if<Disk>(&s))
        return json{{"type", "disk"}, {"center", {d->c1, d->c2}}, {"radius", d->radius}, {"value", d->value}};
    const auto& r = std::get<Rectangle>(s);
    return json{{"type", "rectangle"},
                {"min", {r.x1_min, r.x2_min}},
                {"max", {r.x1_max, r.x2_max}},
                {"value", r.value}};
}

Shape shape_from_json(const json& j)
{
    const std::string type = j.at("type").get<std::string>();
    if (type == "disk") {
        const auto c = j.at("center").get<std::vector<double>>();
        if (c.size() != 2) throw FormatError("disk center must have two components");
        return Disk{c[0], c[1], j.at("radius").get<double>(), j.at("value").get<double>()};
    }
    if (type == "rectangle") {
        const auto lo = j.at("min").get<std::vector<double>>();
        const auto hi = j.at("max").get<std::vector<double>>();
        if (lo.size() != 2 || hi.size() != 2) throw FormatError("rectangle corners must have two components");
        if (!(lo[0] < hi[0] && lo[1] < hi[1])) throw FormatError("rectangle min must lie below max");
        return Rectangle{lo[0], lo[1], hi[0], hi[1], j.at("value").get<double>()};
    }
    throw FormatError("unknown shape type '" + type + "'");
}

Scenario make_builtin(const std::string& name, std::vector<Shape> shapes)
{
    Scenario sc;
    sc.name = name;
    sc.shapes = std::move(shapes);
    return sc;
}

}  // namespace

json scenario_to_json(const Scenario& sc)
{
    json shapes = json::array();
    for (const auto& s : sc.shapes) shapes.push_back(shape_to_json(s));
    return json{{"name", sc.name},
                {"shapes", shapes},
                {"direction", {sc.wave.d1, sc.wave.d2}},
                {"noise_level", sc.noise_level},
                {"seed", sc.seed},
                {"truth_refinement", sc.truth_refinement},
                {"config", config_to_json(sc.config)}};
}

Scenario scenario_from_json(const json& j)
{
    Scenario sc;
    sc.name = j.value("name", std::string("scenario"));
    if (j.contains("shapes"))
        for (const auto& s : j.at("shapes")) sc.shapes.push_back(shape_from_json(s));
    sc.wave = wave_from_json(j);
    sc.noise_level = j.value("noise_level", sc.noise_level);
    sc.seed = j.value("seed", sc.seed);
    sc.truth_refinement = j.value("truth_refinement", sc.truth_refinement);
    if (sc.noise_level < 0.0) throw FormatError("noise_level must be non-negative");
    if (sc.truth_refinement < 1) throw FormatError("truth_refinement must be at least 1");
    sc.config = config_from_json(j.value("config", json::object()));
    return sc;
}

std::vector<std::string> builtin_scenario_names()
{
    return {"example1", "example2a", "example2b", "example3a", "example3b"};
}

std::optional<Scenario> builtin_scenario(const std::string& name)
{
    if (name == "example1") return make_builtin(name, {Disk{0.0, 0.45, 0.2, 3.0}});
    if (name == "example2a") return make_builtin(name, {Disk{-0.4, 0.45, 0.2, 2.0}, Disk{0.4, 0.45, 0.2, 2.0}});
    if (name == "example2b") return make_builtin(name, {Disk{-0.4, 0.45, 0.2, 2.0}, Disk{0.4, 0.45, 0.2, 1.5}});
    if (name == "example3a")
        return make_builtin(name, {Disk{-0.4, 0.45, 0.2, 2.0}, Rectangle{0.2, 0.3, 0.6, 0.6, 1.5}});
    if (name == "example3b")
        return make_builtin(name, {Disk{-0.45, 0.45, 0.18, 2.0}, Disk{0.45, 0.45, 0.18, 2.0},
                                   Rectangle{-0.15, 0.3, 0.15, 0.6, 1.5}});
    return std::nullopt;
}

Scenario load_scenario(const std::string& name_or_path)
{
    std::optional<Scenario> sc = builtin_scenario(name_or_path);
    if (!sc) {
        if (!std::filesystem::exists(name_or_path))
            throw std::invalid_argument("no built-in scenario or file named '" + name_or_path + "'");
        sc = scenario_from_json(json::parse(read_file(name_or_path)));
    }
    // geometry check with node-level diagnostics
    rasterize(sc->shapes, Grid2D::make(sc->config.R, sc->config.n_cells), 1);
    return *sc;
}

}  // namespace convexinv
