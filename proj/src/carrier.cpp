#include "convexinv/carrier.hpp"

#include <cmath>
#include <stdexcept>

namespace convexinv {

double CutoffProfile::chi0(double t, double R, double xi) { return t > -xi ? std::exp(-R / (t + xi)) : 0.0; }

double CutoffProfile::chi(double t, double R, double xi)
{
    const double num = chi0(t, R, xi);
    // the two terms never vanish together for t in (-R, R]
    return num / (num + chi0(R - t - 2.0 * xi, R, xi));
}

CutoffProfile build_cutoff(double R, double xi, const Grid2D& grid)
{
    if (!(xi > 0.0 && xi < R)) throw std::invalid_argument("build_cutoff: need 0 < xi < R");
    CutoffProfile c{R, xi, std::vector<double>(grid.n())};
    for (int i = 0; i < grid.n(); ++i) c.values[i] = CutoffProfile::chi(grid.x2(i), R, xi);
    return c;
}

CoeffVectorField build_carrier(const BoundaryData& bd, const CutoffProfile& cutoff, const Grid2D& grid)
{
    if (bd.n != grid.n()) throw std::invalid_argument("build_carrier: boundary data does not match the grid");
    CoeffVectorField F(grid, bd.n_modes);
    for (int m = 0; m < bd.n_modes; ++m)
        for (int j = 0; j < grid.n(); ++j) {
            const cplx g0 = bd.G0_at(j, m);
            const cplx g1 = bd.G1_at(j, m);
            for (int i = 0; i < grid.n(); ++i) {
                const double chi = cutoff.values[i];
                if (chi == 0.0) continue;
                F(i, j, m) = (g0 + (grid.x2(i) - grid.R) * g1) * chi;
            }
        }
    return F;
}

}  // namespace convexinv
