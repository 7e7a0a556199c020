#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "convexinv/carrier.hpp"
#include "convexinv/fieldtransform.hpp"
#include "convexinv/forward.hpp"
#include "convexinv/objective.hpp"

namespace convexinv {

struct InversionConfig {
    double step = 1e-3;  // gradient descent step epsilon
    double rho = 1e-5;
    double alpha1 = 1e-3;
    double alpha2 = 1e-5;
    double lambda = 5.0;
    double s = 1.0;
    double tolerance = 1e-3;
    int max_iterations = 25;
    int n_modes = 4;
    int n_cells = 28;
    int n_k = 50;
    double k_min = 0.5;
    double k_max = 2.0;
    double R = 0.8;
    double xi = 0.08;
    bool clamp_negative = true;

    void validate() const;
};

struct IterationRecord {
    int n = 0;
    double J = 0.0;
    double gradient_norm = 0.0;
    double a_max = 0.0;
    double seconds = 0.0;
};

struct InversionResult {
    Coefficient a;
    std::vector<IterationRecord> records;
    bool converged = false;             // tolerance met before the iteration cap
    std::optional<int> tolerance_met_at;
    bool non_decrease = false;          // J rose on three consecutive iterations
    int gradient_evaluations = 0;
    int forward_sweeps = 0;             // one sweep = solves for every midpoint wavenumber
    int phase_jumps = 0;
    std::vector<Coefficient> iterates;  // coefficient of each V_n (clamped per config), when requested
};

struct LoopOptions {
    bool stop_on_tolerance = true;
    int iterations = 0;  // when > 0, evaluate exactly this many iterates
    bool keep_iterates = false;
    // called with (n, W_n, objective) before the descent step
    std::function<void(int, const CoeffVectorField&, const ObjectiveParams&)> observer;
    // called with each record as soon as J and the gradient are known, so a
    // caller keeps the history even if a later forward sweep throws
    std::function<void(const IterationRecord&)> on_record;
};

// Everything the loop needs that depends only on the data and the config.
struct InversionSetup {
    Grid2D grid;
    KGrid kg;
    BasisSet basis;
    BoundaryData boundary;
    CutoffProfile cutoff;
    ObjectiveParams objective;
};

InversionSetup prepare_inversion(const CauchyData& cd, const IncidentWave& wave, const InversionConfig& cfg);

InversionResult run_inversion(const CauchyData& cd, const IncidentWave& wave, const InversionConfig& cfg,
                              const LoopOptions& options = {});

struct AblationResult {
    InversionResult run;
    int best_iterate = 0;
    Coefficient best;
};

// Same loop with the Carleman weight switched off (lambda = 0) for a fixed
// number of iterates; reports the iterate with the smallest J.
AblationResult ablation_no_weight(const CauchyData& cd, const IncidentWave& wave, InversionConfig cfg,
                                  int iterations = 20,
                                  std::function<void(const IterationRecord&)> on_record = {});

Coefficient clamp_negative(Coefficient a);

}  // namespace convexinv
