#include "convexinv/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "convexinv/disk_oracle.hpp"
#include "convexinv/inversion.hpp"
#include "convexinv/objective.hpp"

namespace convexinv {

namespace {

const InversionConfig defaults{};

KGrid default_kgrid() { return KGrid::make(defaults.k_min, defaults.k_max, defaults.n_k); }

}  // namespace

CheckResult check_orthonormality(const CheckOptions& opt)
{
    const KGrid kg = default_kgrid();
    const BasisSet bs = build_basis(kg, defaults.n_modes);
    double worst = 0.0;
    for (int m = 0; m < bs.n_modes; ++m)
        for (int n = 0; n < bs.n_modes; ++n) {
            double g = 0.0;
            for (size_t q = 0; q < kg.quad_nodes.size(); ++q) g += kg.quad_weights[q] * bs.phi(m, q) * bs.phi(n, q);
            worst = std::max(worst, std::abs(g - (m == n ? 1.0 : 0.0)));
        }
    return {"basis orthonormality", worst < opt.orthonormality_tolerance, worst, opt.orthonormality_tolerance, ""};
}

CheckResult check_d_structure(const CheckOptions& opt)
{
    const BasisSet bs = build_basis(default_kgrid(), defaults.n_modes);
    double worst = 0.0;
    for (int m = 0; m < bs.n_modes; ++m)
        for (int n = 0; n <= m; ++n) worst = std::max(worst, std::abs(bs.mat_D(m, n) - (m == n ? 1.0 : 0.0)));
    return {"D diagonal and lower triangle", worst < opt.d_tolerance, worst, opt.d_tolerance, ""};
}

std::vector<CheckResult> check_disk_oracle(const CheckOptions& opt)
{
    const Disk disk{0.0, 0.45, 0.2, 3.0};
    const IncidentWave wave;
    std::vector<CheckResult> out;
    for (double k : {1.0, 2.0}) {
        const double coarse = oracle_relative_error(disk, wave, k, Grid2D::make(defaults.R, defaults.n_cells));
        const double fine = oracle_relative_error(disk, wave, k, Grid2D::make(defaults.R, 2 * defaults.n_cells));
        const std::string tag = "k=" + std::to_string(static_cast<int>(k));
        out.push_back({"disk oracle " + tag, coarse < opt.oracle_tolerance, coarse, opt.oracle_tolerance,
                       "Nx=" + std::to_string(defaults.n_cells)});
        out.push_back({"disk oracle refinement " + tag, fine < coarse, fine, coarse,
                       "Nx=" + std::to_string(2 * defaults.n_cells) + " error vs Nx=" +
                           std::to_string(defaults.n_cells)});
    }
    return out;
}

CheckResult check_gradient(const CheckOptions& opt)
{
    const Grid2D grid = Grid2D::make(defaults.R, 6);
    const KGrid kg = default_kgrid();
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto random_field = [&] {
        CoeffVectorField f(grid, 2);
        for (auto& z : f.data()) z = {uni(rng), uni(rng)};
        return f;
    };

    ObjectiveParams p;
    p.rho = defaults.rho;
    p.alpha1 = defaults.alpha1;
    p.alpha2 = defaults.alpha2;
    p.weight = CarlemanWeight::make(defaults.lambda, defaults.s, grid);
    p.basis = build_basis(kg, 2);
    p.carrier = random_field();
    const CoeffVectorField W = random_field();
    const CoeffVectorField G = gradient_J(W, p);

    const double step = 1e-6;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const CoeffVectorField d = random_field();
        for (cplx rot : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
            const CoeffVectorField dir = rot * d;
            const double fd = (evaluate_J(W + step * dir, p) - evaluate_J(W - step * dir, p)) / (2.0 * step);
            const double an = inner(G, dir).real();
            worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1e-300));
        }
    }
    return {"gradient vs central differences", worst < opt.gradient_tolerance, worst, opt.gradient_tolerance,
            "7x7 grid, N=2, 40 directions"};
}

CheckResult check_null_scatterer(const CheckOptions& opt)
{
    const Grid2D grid = Grid2D::make(defaults.R, defaults.n_cells);
    const KGrid kg = default_kgrid();
    const IncidentWave wave;
    const CauchyData cd = simulate_cauchy({}, wave, grid, kg, 1);
    InversionConfig cfg = defaults;
    cfg.clamp_negative = false;
    const InversionResult res = run_inversion(cd, wave, cfg);
    double worst = 0.0;
    for (double v : res.a.values) worst = std::max(worst, std::abs(v));
    const bool immediate = res.tolerance_met_at == 1;
    return {"null scatterer", worst < opt.null_tolerance && immediate, worst, opt.null_tolerance,
            immediate ? "stopped at n=1" : "did not stop at n=1"};
}

std::vector<CheckResult> run_validation_suite(const CheckOptions& opt)
{
    std::vector<CheckResult> out{check_orthonormality(opt), check_d_structure(opt)};
    for (auto& r : check_disk_oracle(opt)) out.push_back(std::move(r));
    out.push_back(check_gradient(opt));
    out.push_back(check_null_scatterer(opt));
    return out;
}

}  // namespace convexinv
