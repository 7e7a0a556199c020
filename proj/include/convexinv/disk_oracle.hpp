#pragma once

#include <utility>
#include <vector>

#include "convexinv/forward.hpp"

namespace convexinv {

// Series solution for plane-wave scattering by a homogeneous penetrable
// circular cylinder. Modes are indexed by n >= 0 and combine +n and -n.
struct DiskSeries {
    double k = 0.0;
    double k_inside = 0.0;
    std::vector<cplx> scattered;  // beta_n: outside field J_n + beta_n H_n
    std::vector<cplx> interior;   // gamma_n: inside field gamma_n J_n(k_inside r)
    bool converged = false;

    int terms() const { return static_cast<int>(scattered.size()); }
};

// Stops once both coefficient families fall below 1e-12 relative to the
// leading mode; flags non-convergence past 40 terms.
DiskSeries disk_series(const Disk& disk, double k, int max_terms = 40);

// Interface mismatch of mode n: (value jump, flux jump) at r = radius.
std::pair<cplx, cplx> interface_residual(const DiskSeries& series, const Disk& disk, int n);

// Total field at the requested points; throws if the series did not converge.
std::vector<cplx> analytic_disk_oracle(const Disk& disk, const IncidentWave& wave, double k,
                                       const std::vector<std::pair<double, double>>& points);

// Relative discrete L2 error of the Lippmann-Schwinger field against the
// series on grid nodes at least one cell width away from the interface.
double oracle_relative_error(const Disk& disk, const IncidentWave& wave, double k, const Grid2D& grid);

}  // namespace convexinv
