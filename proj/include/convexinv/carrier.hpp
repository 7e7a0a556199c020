#pragma once

#include <vector>

#include "convexinv/fieldtransform.hpp"
#include "convexinv/grid.hpp"

namespace convexinv {

// Smooth step in x2: zero up to -xi, one from R - xi to R.
struct CutoffProfile {
    double R = 0.0;
    double xi = 0.0;
    std::vector<double> values;  // chi at each grid row x2(i)

    static double chi0(double t, double R, double xi);
    static double chi(double t, double R, double xi);
};

CutoffProfile build_cutoff(double R, double xi, const Grid2D& grid);

// F_n(x) = [G0_n(x1) + (x2 - R) G1_n(x1)] chi(x2): the boundary traces are
// extended constantly in x2 before the cutoff is applied.
CoeffVectorField build_carrier(const BoundaryData& bd, const CutoffProfile& cutoff, const Grid2D& grid);

}  // namespace convexinv
