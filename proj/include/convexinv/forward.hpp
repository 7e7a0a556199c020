#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "convexinv/basis.hpp"
#include "convexinv/grid.hpp"

namespace convexinv {

class InvalidGeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate(condition_estimate) {}
    double condition_estimate;
};

struct Disk {
    double c1 = 0.0, c2 = 0.0;
    double radius = 0.0;
    double value = 0.0;
};

// Axis-aligned, [x1_min, x1_max] x [x2_min, x2_max].
struct Rectangle {
    double x1_min = 0.0, x2_min = 0.0;
    double x1_max = 0.0, x2_max = 0.0;
    double value = 0.0;
};

using Shape = std::variant<Disk, Rectangle>;

bool contains(const Shape& s, double x1, double x2);
double shape_value(const Shape& s);

// Real contrast a(x) on grid nodes; relative permittivity is 1 + a.
// `values` holds node-center membership. When the coefficient comes from
// shapes, `cell_values` holds the fraction of each node's cell covered by
// the shapes and is what the volume quadrature integrates.
struct Coefficient {
    Grid2D grid;
    std::vector<double> values;
    std::vector<double> cell_values;
    std::vector<Shape> shapes;

    double at(int i, int j) const { return values[grid.node(i, j)]; }
    double quadrature_value(int i, int j) const
    {
        return cell_values.empty() ? values[grid.node(i, j)] : cell_values[grid.node(i, j)];
    }
    double max() const;
};

Coefficient zero_coefficient(const Grid2D& grid);

// Node-center membership; later shapes overwrite earlier ones. Cell
// coverage is estimated on a subsamples x subsamples lattice per cell. Throws
// InvalidGeometryError naming the offending node when a shape reaches the
// boundary of the domain or carries a negative value.
Coefficient rasterize(const std::vector<Shape>& shapes, const Grid2D& grid, int subsamples = 16);

struct IncidentWave {
    double d1 = 0.0;
    double d2 = -1.0;

    IncidentWave() = default;
    IncidentWave(double d1, double d2);  // validates unit length and d2 < 0

    cplx value(double x1, double x2, double k) const;
    cplx dx2(double x1, double x2, double k) const { return cplx(0.0, k * d2) * value(x1, x2, k); }
};

// Dirichlet and Neumann traces on the top row, index j + n * r
// (j along x1, r over wavenumber midpoints).
struct CauchyData {
    double R = 0.0;
    int n_cells = 0;
    double k_min = 0.0, k_max = 0.0;
    int n_k = 0;
    double noise_level = 0.0;
    std::uint64_t seed = 0;
    std::vector<cplx> g0, g1;

    int n() const { return n_cells + 1; }
    size_t index(int j, int r) const { return static_cast<size_t>(j) + static_cast<size_t>(r) * n(); }
};

// Nystrom discretization of the Lippmann-Schwinger equation on a fixed grid
// and wavenumber. Kernel values depend only on node offsets and are tabulated
// once; the self cell uses the exact integral of the kernel over the disk of
// equal area.
class LippmannSchwinger {
public:
    LippmannSchwinger(const Grid2D& grid, double k);

    const Grid2D& grid() const { return grid_; }
    double k() const { return k_; }

    // Weighted kernel h^2 (i/4) H0(k|x-y|) by node offset (self cell corrected).
    cplx weight(int di, int dj) const;
    // h^2 d/dx2 (i/4) H0(k|x-y|) for offset x - y = (di, dj) rows/cols; zero at the origin.
    cplx weight_dx2(int di, int dj) const;

    // Total field at every node. Only nodes with a != 0 enter the dense
    // solve; the rest follow from the integral representation.
    std::vector<cplx> solve(const Coefficient& a, const IncidentWave& wave) const;

    // d u / d x2 along the top row from the differentiated representation.
    std::vector<cplx> top_dx2(const Coefficient& a, const std::vector<cplx>& u, const IncidentWave& wave) const;

    static constexpr double residual_target = 1e-10;

private:
    Grid2D grid_;
    double k_;
    std::vector<cplx> table_;
    std::vector<cplx> table_dx2_;
};

std::vector<cplx> solve_forward(const Coefficient& a, const IncidentWave& wave, double k, const Grid2D& grid);

// Total fields for every midpoint wavenumber (index [r][node]).
std::vector<std::vector<cplx>> solve_forward_all(const Coefficient& a, const IncidentWave& wave, const KGrid& kg);

CauchyData trace_cauchy(const Coefficient& a, const std::vector<std::vector<cplx>>& u, const IncidentWave& wave,
                        const KGrid& kg);

// Simulate traces on a grid refined by `refinement` and sample them on the
// nodes of `grid`. refinement = 1 uses the inversion grid itself.
CauchyData simulate_cauchy(const std::vector<Shape>& shapes, const IncidentWave& wave, const Grid2D& grid,
                           const KGrid& kg, int refinement);

// Discrete L2 norm over the top row times the wavenumber interval
// (trapezoid in x1, midpoint in k).
double boundary_norm(const std::vector<cplx>& g, const CauchyData& cd);

CauchyData add_noise(const CauchyData& cd, double delta, std::uint64_t seed);

}  // namespace convexinv
