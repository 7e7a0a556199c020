#include <iostream>

#include <CLI11.hpp>

#include "convexinv/commands.hpp"

using namespace convexinv;

int main(int argc, char** argv)
{
    CLI::App app{"Convexification solver for the 2D inverse scattering problem with backscatter data"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "generate clean and noisy Cauchy data for a scenario");
    simulate->add_option("--scenario", sim.scenario, "built-in name (example1, example2a, ...) or JSON file")->required();
    simulate->add_option("--out", sim.out, "output directory")->required();
    simulate->add_option("--seed", sim.seed, "noise seed (overrides the scenario)");

    InvertOptions inv;
    auto* invert = app.add_subcommand("invert", "reconstruct the coefficient from Cauchy data");
    invert->add_option("--data", inv.data, "Cauchy data file")->required()->check(CLI::ExistingFile);
    invert->add_option("--config", inv.config, "JSON config file")->required()->check(CLI::ExistingFile);
    invert->add_option("--out", inv.out, "output directory")->required();
    invert->add_flag("--no-carleman", inv.no_carleman, "drop the weight function and run the 20-iterate ablation");

    CheckOptions checks;
    auto* validate = app.add_subcommand("validate", "run the oracle checks");
    validate->add_option("--inject-d-tolerance", checks.d_tolerance, "override the D-structure bound (fault injection)")
        ->group("");

    ExportOptions exp;
    auto* exporter = app.add_subcommand("export", "write a cross-section and heatmap table of a coefficient file");
    exporter->add_option("--result", exp.result, "coefficient file")->required()->check(CLI::ExistingFile);
    exporter->add_option("--row", exp.row, "x2 of the cross-section")->capture_default_str();
    exporter->add_option("--out", exp.out, "output directory (default: next to the result)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return cmd_simulate(sim, std::cout);
        if (*invert) return cmd_invert(inv, std::cout);
        if (*validate) return cmd_validate(checks, std::cout);
        if (*exporter) return cmd_export(exp, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
