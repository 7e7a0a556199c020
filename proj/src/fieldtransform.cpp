#include "convexinv/fieldtransform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace convexinv {

namespace {

constexpr cplx I{0.0, 1.0};

// Derivatives along one grid line, index t of 0..n-1.
cplx first_diff(const auto& f, int t, int n, double h)
{
    if (t == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
    if (t == n - 1) return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
    return (f(t + 1) - f(t - 1)) / (2.0 * h);
}

cplx second_diff(const auto& f, int t, int n, double h)
{
    if (t == 0) return (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / (h * h);
    if (t == n - 1) return (2.0 * f(n - 1) - 5.0 * f(n - 2) + 4.0 * f(n - 3) - f(n - 4)) / (h * h);
    return (f(t + 1) - 2.0 * f(t) + f(t - 1)) / (h * h);
}

}  // namespace

LogField total_to_log(const std::vector<std::vector<cplx>>& u, const IncidentWave& wave, const Grid2D& grid,
                      const KGrid& kg)
{
    if (u.size() != kg.midpoints.size()) throw std::invalid_argument("total_to_log: need one field per wavenumber");
    LogField lf;
    lf.grid = grid;
    lf.n_k = kg.n_sub;
    lf.v.resize(grid.node_count() * kg.n_sub);
    std::vector<double> previous_arg(grid.node_count(), 0.0);

    for (int r = 0; r < kg.n_sub; ++r) {
        const double k = kg.midpoints[r];
        for (int i = 0; i < grid.n(); ++i)
            for (int j = 0; j < grid.n(); ++j) {
                const size_t node = grid.node(i, j);
                const cplx p = u[r][node] / wave.value(grid.x1(j), grid.x2(i), k);
                if (!(std::abs(p) > p_floor)) {
                    ++lf.floor_count;
                    std::ostringstream os;
                    os << "total field vanishes relative to the incident wave at node (i=" << i << ", j=" << j
                       << "), k=" << k << " (|p|=" << std::abs(p) << ")";
                    throw NearZeroTotalFieldError(os.str());
                }
                const double arg = std::arg(p);
                if (r > 0 && std::abs(arg - previous_arg[node]) > std::numbers::pi) ++lf.phase_jumps;
                previous_arg[node] = arg;
                lf.v[node + grid.node_count() * r] = std::log(p) / (k * k);
            }
    }
    return lf;
}

CoeffVectorField log_to_coeffs(const LogField& lf, const BasisSet& bs, const KGrid& kg)
{
    if (lf.n_k != kg.n_sub) throw std::invalid_argument("log_to_coeffs: wavenumber grid mismatch");
    CoeffVectorField V(lf.grid, bs.n_modes);
    std::vector<cplx> samples(kg.n_sub);
    for (size_t node = 0; node < lf.grid.node_count(); ++node) {
        for (int r = 0; r < kg.n_sub; ++r) samples[r] = lf.at(node, r);
        const auto coeffs = project(samples, bs, kg);
        for (int m = 0; m < bs.n_modes; ++m) V[node + lf.grid.node_count() * m] = coeffs[m];
    }
    return V;
}

BoundaryData cauchy_to_v_data(const CauchyData& cd, const IncidentWave& wave, const KGrid& kg, const BasisSet& bs)
{
    if (cd.n_k != kg.n_sub) throw std::invalid_argument("cauchy_to_v_data: wavenumber grid mismatch");
    const int n = cd.n();
    const double h = 2.0 * cd.R / cd.n_cells;
    const double top = cd.R;

    BoundaryData bd;
    bd.n = n;
    bd.n_modes = bs.n_modes;
    bd.g0_tilde.resize(cd.g0.size());
    bd.g1_tilde.resize(cd.g1.size());
    for (int r = 0; r < cd.n_k; ++r) {
        const double k = kg.midpoints[r];
        for (int j = 0; j < n; ++j) {
            const double x1 = -cd.R + j * h;
            const cplx uin = wave.value(x1, top, k);
            const cplx g0 = cd.g0[cd.index(j, r)];
            if (!(std::abs(g0) > p_floor * std::abs(uin))) {
                std::ostringstream os;
                os << "boundary field vanishes at j=" << j << ", k=" << k;
                throw NearZeroTotalFieldError(os.str());
            }
            bd.g0_tilde[cd.index(j, r)] = std::log(g0 / uin) / (k * k);
            bd.g1_tilde[cd.index(j, r)] = (cd.g1[cd.index(j, r)] / g0 - I * k * wave.d2) / (k * k);
        }
    }

    bd.G0.resize(static_cast<size_t>(n) * bs.n_modes);
    bd.G1.resize(bd.G0.size());
    std::vector<cplx> s0(cd.n_k), s1(cd.n_k);
    for (int j = 0; j < n; ++j) {
        for (int r = 0; r < cd.n_k; ++r) {
            s0[r] = bd.g0_tilde[cd.index(j, r)];
            s1[r] = bd.g1_tilde[cd.index(j, r)];
        }
        const auto c0 = project(s0, bs, kg);
        const auto c1 = project(s1, bs, kg);
        for (int m = 0; m < bs.n_modes; ++m) {
            bd.G0[static_cast<size_t>(j) + static_cast<size_t>(m) * n] = c0[m];
            bd.G1[static_cast<size_t>(j) + static_cast<size_t>(m) * n] = c1[m];
        }
    }
    return bd;
}

RecoveredCoefficient recover_coefficient(const CoeffVectorField& V, const BasisSet& bs, const KGrid& kg)
{
    const Grid2D& grid = V.grid();
    const int n = grid.n();
    const double h = grid.h;
    const double k = kg.k_min;

    std::vector<cplx> v(grid.node_count(), cplx{});
    for (int m = 0; m < V.n_modes(); ++m) {
        const double phi = bs.value(m, k);
        for (size_t node = 0; node < grid.node_count(); ++node) v[node] += V[node + grid.node_count() * m] * phi;
    }

    RecoveredCoefficient out{zero_coefficient(grid), 0.0};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto along_x1 = [&](int t) { return v[grid.node(i, t)]; };
            auto along_x2 = [&](int t) { return v[grid.node(t, j)]; };
            const cplx d1 = first_diff(along_x1, j, n, h);
            const cplx d2 = first_diff(along_x2, i, n, h);
            const cplx lap = second_diff(along_x1, j, n, h) + second_diff(along_x2, i, n, h);
            const cplx residual = lap + k * k * (d1 * d1 + d2 * d2) - 2.0 * I * k * d2;
            out.a.values[grid.node(i, j)] = -residual.real();
            out.imag_residual_max = std::max(out.imag_residual_max, std::abs(residual.imag()));
        }
    return out;
}

}  // namespace convexinv
