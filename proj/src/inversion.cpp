#include "convexinv/inversion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace convexinv {

void InversionConfig::validate() const
{
    if (!(step > 0.0)) throw std::invalid_argument("config: step must be positive");
    if (!(tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
    if (rho < 0.0 || alpha1 < 0.0 || alpha2 < 0.0) throw std::invalid_argument("config: weights must be non-negative");
    if (lambda < 0.0) throw std::invalid_argument("config: lambda must be non-negative");
    if (max_iterations < 1) throw std::invalid_argument("config: max_iterations must be at least 1");
    if (n_modes < 1 || n_cells < 3 || n_k < 1) throw std::invalid_argument("config: bad discretization sizes");
    if (!(0.0 < k_min && k_min < k_max)) throw std::invalid_argument("config: need 0 < k_min < k_max");
    if (!(0.0 < xi && xi < R)) throw std::invalid_argument("config: need 0 < xi < R");
}

Coefficient clamp_negative(Coefficient a)
{
    for (auto& v : a.values) v = std::max(v, 0.0);
    return a;
}

InversionSetup prepare_inversion(const CauchyData& cd, const IncidentWave& wave, const InversionConfig& cfg)
{
    cfg.validate();
    if (cd.n_cells != cfg.n_cells || cd.n_k != cfg.n_k || cd.R != cfg.R || cd.k_min != cfg.k_min ||
        cd.k_max != cfg.k_max)
        throw std::invalid_argument("inversion: data grid does not match the configuration");
    // the elliptic system and the recovery formula are written for u_in = exp(-i k x2)
    if (wave.d1 != 0.0 || wave.d2 != -1.0)
        throw std::invalid_argument("inversion: only the incident direction (0, -1) is supported");

    InversionSetup setup;
    setup.grid = Grid2D::make(cfg.R, cfg.n_cells);
    setup.kg = KGrid::make(cfg.k_min, cfg.k_max, cfg.n_k);
    setup.basis = build_basis(setup.kg, cfg.n_modes);
    setup.boundary = cauchy_to_v_data(cd, wave, setup.kg, setup.basis);
    setup.cutoff = build_cutoff(cfg.R, cfg.xi, setup.grid);

    ObjectiveParams& p = setup.objective;
    p.rho = cfg.rho;
    p.alpha1 = cfg.alpha1;
    p.alpha2 = cfg.alpha2;
    p.weight = CarlemanWeight::make(cfg.lambda, cfg.s, setup.grid);
    p.basis = setup.basis;
    p.carrier = build_carrier(setup.boundary, setup.cutoff, setup.grid);
    return setup;
}

InversionResult run_inversion(const CauchyData& cd, const IncidentWave& wave, const InversionConfig& cfg,
                              const LoopOptions& options)
{
    using clock = std::chrono::steady_clock;
    const InversionSetup setup = prepare_inversion(cd, wave, cfg);
    const ObjectiveParams& objective = setup.objective;
    const CoeffVectorField& F = objective.carrier;
    const int cap = options.iterations > 0 ? options.iterations : cfg.max_iterations;

    InversionResult result;
    CoeffVectorField V = F;
    double J_previous = 0.0;
    int rises = 0;

    for (int n = 0;; ++n) {
        const auto start = clock::now();
        const CoeffVectorField W = V - F;
        const double J = evaluate_J(W, objective);
        const CoeffVectorField grad = gradient_J(W, objective);
        ++result.gradient_evaluations;
        if (options.observer) options.observer(n, W, objective);

        const Coefficient current = recover_coefficient(V, setup.basis, setup.kg).a;
        if (options.keep_iterates) result.iterates.push_back(cfg.clamp_negative ? clamp_negative(current) : current);

        IterationRecord rec{n, J, grad.norm(), current.max(), 0.0};
        if (n >= 1) {
            rises = J > J_previous ? rises + 1 : 0;
            if (rises >= 3) result.non_decrease = true;
            if (std::abs(J - J_previous) < cfg.tolerance && !result.tolerance_met_at) result.tolerance_met_at = n;
        }
        J_previous = J;
        if (options.on_record) options.on_record(rec);

        const bool stop = (options.stop_on_tolerance && result.tolerance_met_at) || n + 1 >= cap;
        if (stop) {
            result.converged = options.stop_on_tolerance && result.tolerance_met_at.has_value();
            rec.seconds = std::chrono::duration<double>(clock::now() - start).count();
            result.records.push_back(rec);
            break;
        }

        CoeffVectorField W_step = W;
        W_step -= cfg.step * grad;
        const Coefficient a_n = recover_coefficient(W_step + F, setup.basis, setup.kg).a;
        const auto u = solve_forward_all(a_n, wave, setup.kg);
        ++result.forward_sweeps;
        const LogField lf = total_to_log(u, wave, setup.grid, setup.kg);
        result.phase_jumps += lf.phase_jumps;
        V = log_to_coeffs(lf, setup.basis, setup.kg);

        rec.seconds = std::chrono::duration<double>(clock::now() - start).count();
        result.records.push_back(rec);
    }

    const Coefficient final_a = recover_coefficient(V, setup.basis, setup.kg).a;
    result.a = cfg.clamp_negative ? clamp_negative(final_a) : final_a;
    return result;
}

AblationResult ablation_no_weight(const CauchyData& cd, const IncidentWave& wave, InversionConfig cfg, int iterations,
                                  std::function<void(const IterationRecord&)> on_record)
{
    cfg.lambda = 0.0;
    LoopOptions options;
    options.stop_on_tolerance = false;
    options.iterations = iterations;
    options.keep_iterates = true;
    options.on_record = std::move(on_record);

    AblationResult out;
    out.run = run_inversion(cd, wave, cfg, options);
    const auto& recs = out.run.records;
    const auto best = std::min_element(recs.begin(), recs.end(),
                                       [](const IterationRecord& a, const IterationRecord& b) { return a.J < b.J; });
    out.best_iterate = best->n;
    out.best = out.run.iterates[best->n];
    return out;
}

}  // namespace convexinv
