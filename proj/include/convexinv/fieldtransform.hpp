#pragma once

#include <stdexcept>
#include <vector>

#include "convexinv/basis.hpp"
#include "convexinv/forward.hpp"
#include "convexinv/grid.hpp"

namespace convexinv {

// |u / u_in| at or below this value invalidates the logarithmic change of variables.
inline constexpr double p_floor = 1e-8;

class NearZeroTotalFieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// v(x, k) = Log(u / u_in) / k^2 on grid nodes x wavenumber midpoints,
// indexed node + node_count * r.
struct LogField {
    Grid2D grid;
    int n_k = 0;
    std::vector<cplx> v;
    int floor_count = 0;   // nodes with |p| < p_floor (always 0 for a returned field)
    int phase_jumps = 0;   // k-adjacent pairs whose arg p differs by more than pi

    cplx at(size_t node, int r) const { return v[node + grid.node_count() * r]; }
};

LogField total_to_log(const std::vector<std::vector<cplx>>& u, const IncidentWave& wave, const Grid2D& grid,
                      const KGrid& kg);

CoeffVectorField log_to_coeffs(const LogField& lf, const BasisSet& bs, const KGrid& kg);

// Transformed boundary data on the top row. Scalar traces are indexed
// j + n * r; the projected coefficients are indexed j + n * mode.
struct BoundaryData {
    int n = 0;
    int n_modes = 0;
    std::vector<cplx> g0_tilde, g1_tilde;
    std::vector<cplx> G0, G1;

    cplx G0_at(int j, int mode) const { return G0[static_cast<size_t>(j) + static_cast<size_t>(mode) * n]; }
    cplx G1_at(int j, int mode) const { return G1[static_cast<size_t>(j) + static_cast<size_t>(mode) * n]; }
};

BoundaryData cauchy_to_v_data(const CauchyData& cd, const IncidentWave& wave, const KGrid& kg, const BasisSet& bs);

struct RecoveredCoefficient {
    Coefficient a;
    double imag_residual_max = 0.0;  // largest discarded imaginary part
};

// a = -Re[lap v + k^2 grad v . grad v - 2 i k d_x2 v] at k = k_min with
// v = sum_n V_n Phi_n(k_min). Centered differences inside, second-order
// one-sided differences on the boundary.
RecoveredCoefficient recover_coefficient(const CoeffVectorField& V, const BasisSet& bs, const KGrid& kg);

}  // namespace convexinv
