#include "convexinv/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

namespace convexinv {

namespace {

constexpr cplx I{0.0, 1.0};

cplx hankel1(int order, double x) { return cplx(std::cyl_bessel_j(order, x), std::cyl_neumann(order, x)); }

}  // namespace

bool contains(const Shape& s, double x1, double x2)
{
    return std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Disk>) {
                const double d1 = x1 - shape.c1, d2 = x2 - shape.c2;
                return d1 * d1 + d2 * d2 < shape.radius * shape.radius;
            } else {
                return x1 >= shape.x1_min && x1 <= shape.x1_max && x2 >= shape.x2_min && x2 <= shape.x2_max;
            }
        },
        s);
}

double shape_value(const Shape& s)
{
    return std::visit([](const auto& shape) { return shape.value; }, s);
}

double Coefficient::max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }

Coefficient zero_coefficient(const Grid2D& grid)
{
    return Coefficient{grid, std::vector<double>(grid.node_count(), 0.0), {}, {}};
}

Coefficient rasterize(const std::vector<Shape>& shapes, const Grid2D& grid, int subsamples)
{
    const double R = grid.R;
    for (size_t s = 0; s < shapes.size(); ++s) {
        std::ostringstream why;
        const Shape& shape = shapes[s];
        if (shape_value(shape) < 0.0) why << "negative value " << shape_value(shape);
        if (const auto* d = std::get_if<Disk>(&shape)) {
            if (!(d->radius > 0.0)) why << "non-positive radius";
            else if (std::abs(d->c1) + d->radius >= R || std::abs(d->c2) + d->radius >= R)
                why << "disk reaches the domain boundary";
        } else {
            const auto& r = std::get<Rectangle>(shape);
            if (!(r.x1_min < r.x1_max && r.x2_min < r.x2_max)) why << "degenerate rectangle";
            else if (r.x1_min <= -R || r.x1_max >= R || r.x2_min <= -R || r.x2_max >= R)
                why << "rectangle reaches the domain boundary";
        }
        if (why.str().empty()) continue;
        // locate a boundary node inside the shape for the diagnostic
        for (int i = 0; i < grid.n(); ++i)
            for (int j = 0; j < grid.n(); ++j) {
                const bool edge = i == 0 || j == 0 || i == grid.top() || j == grid.top();
                if (edge && contains(shape, grid.x1(j), grid.x2(i))) {
                    why << "; boundary node (i=" << i << ", j=" << j << ") at (" << grid.x1(j) << ", "
                        << grid.x2(i) << ") lies inside";
                    i = grid.n();
                    break;
                }
            }
        throw InvalidGeometryError("shape " + std::to_string(s) + ": " + why.str());
    }

    Coefficient a = zero_coefficient(grid);
    a.shapes = shapes;
    for (int i = 0; i < grid.n(); ++i)
        for (int j = 0; j < grid.n(); ++j)
            for (const auto& shape : shapes)
                if (contains(shape, grid.x1(j), grid.x2(i))) a.values[grid.node(i, j)] = shape_value(shape);

    a.cell_values.assign(grid.node_count(), 0.0);
    if (shapes.empty()) return a;
    const double step = grid.h / subsamples;
    for (int i = 0; i < grid.n(); ++i)
        for (int j = 0; j < grid.n(); ++j) {
            double acc = 0.0;
            for (int p = 0; p < subsamples; ++p)
                for (int q = 0; q < subsamples; ++q) {
                    const double x1 = grid.x1(j) - 0.5 * grid.h + (q + 0.5) * step;
                    const double x2 = grid.x2(i) - 0.5 * grid.h + (p + 0.5) * step;
                    double v = 0.0;
                    for (const auto& shape : shapes)
                        if (contains(shape, x1, x2)) v = shape_value(shape);
                    acc += v;
                }
            a.cell_values[grid.node(i, j)] = acc / (subsamples * subsamples);
        }
    return a;
}

IncidentWave::IncidentWave(double d1_, double d2_) : d1(d1_), d2(d2_)
{
    if (std::abs(d1 * d1 + d2 * d2 - 1.0) > 1e-12) throw std::invalid_argument("IncidentWave: direction must be a unit vector");
    if (!(d2 < 0.0)) throw std::invalid_argument("IncidentWave: direction must point downward (d2 < 0)");
}

cplx IncidentWave::value(double x1, double x2, double k) const { return std::exp(I * (k * (d1 * x1 + d2 * x2))); }

LippmannSchwinger::LippmannSchwinger(const Grid2D& grid, double k) : grid_(grid), k_(k)
{
    if (!(k > 0.0)) throw std::invalid_argument("LippmannSchwinger: k must be positive");
    const int n = grid.n();
    const double h = grid.h;
    table_.assign(static_cast<size_t>(n) * n, cplx{});
    table_dx2_.assign(static_cast<size_t>(n) * n, cplx{});
    for (int di = 0; di < n; ++di)
        for (int dj = 0; dj < n; ++dj) {
            if (di == 0 && dj == 0) continue;
            const double r = h * std::sqrt(double(di * di + dj * dj));
            table_[di * n + dj] = h * h * (I / 4.0) * hankel1(0, k * r);
            // divided by r; the signed x2 offset is applied in weight_dx2
            table_dx2_[di * n + dj] = -h * h * (I / 4.0) * k * hankel1(1, k * r) / r;
        }
    // integral of (i/4) H0(k r) over the disk of radius h / sqrt(pi)
    const double rho = h / std::sqrt(std::numbers::pi);
    table_[0] = (I / 4.0) * 2.0 * std::numbers::pi *
                (rho / k * hankel1(1, k * rho) + 2.0 * I / (std::numbers::pi * k * k));
}

cplx LippmannSchwinger::weight(int di, int dj) const { return table_[std::abs(di) * grid_.n() + std::abs(dj)]; }

cplx LippmannSchwinger::weight_dx2(int di, int dj) const
{
    return table_dx2_[std::abs(di) * grid_.n() + std::abs(dj)] * (di * grid_.h);
}

std::vector<cplx> LippmannSchwinger::solve(const Coefficient& a, const IncidentWave& wave) const
{
    if (!(a.grid == grid_)) throw std::invalid_argument("LippmannSchwinger: coefficient grid mismatch");
    const int n = grid_.n();
    std::vector<cplx> u(grid_.node_count());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u[grid_.node(i, j)] = wave.value(grid_.x1(j), grid_.x2(i), k_);

    std::vector<std::pair<int, int>> support;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (a.quadrature_value(i, j) != 0.0) support.emplace_back(i, j);
    if (support.empty()) return u;

    const auto m = static_cast<Eigen::Index>(support.size());
    const double k2 = k_ * k_;
    Eigen::MatrixXcd A(m, m);
    Eigen::VectorXcd rhs(m);
    for (Eigen::Index q = 0; q < m; ++q) {
        const auto [iq, jq] = support[q];
        const double aq = a.quadrature_value(iq, jq);
        for (Eigen::Index p = 0; p < m; ++p) {
            const auto [ip, jp] = support[p];
            A(p, q) = (p == q ? 1.0 : 0.0) - k2 * weight(ip - iq, jp - jq) * aq;
        }
        rhs[q] = u[grid_.node(iq, jq)];
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd x = lu.solve(rhs);
    double rel = (A * x - rhs).norm() / rhs.norm();
    for (int refine = 0; refine < 3 && rel >= residual_target; ++refine) {
        x += lu.solve(rhs - A * x);
        rel = (A * x - rhs).norm() / rhs.norm();
    }
    if (!std::isfinite(rel) || rel >= residual_target) {
        const double cond = 1.0 / lu.rcond();
        throw SingularSystemError("Lippmann-Schwinger system unresolved at k=" + std::to_string(k_) +
                                      " (relative residual " + std::to_string(rel) + ", condition ~" +
                                      std::to_string(cond) + ")",
                                  cond);
    }

    std::vector<cplx> source(m);
    for (Eigen::Index q = 0; q < m; ++q) source[q] = k2 * a.quadrature_value(support[q].first, support[q].second) * x[q];
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            cplx acc{};
            for (Eigen::Index q = 0; q < m; ++q)
                acc += weight(i - support[q].first, j - support[q].second) * source[q];
            u[grid_.node(i, j)] += acc;
        }
    for (Eigen::Index q = 0; q < m; ++q) u[grid_.node(support[q].first, support[q].second)] = x[q];
    return u;
}

std::vector<cplx> LippmannSchwinger::top_dx2(const Coefficient& a, const std::vector<cplx>& u,
                                             const IncidentWave& wave) const
{
    const int n = grid_.n();
    const int top = grid_.top();
    const double k2 = k_ * k_;
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) {
        cplx acc = wave.dx2(grid_.x1(j), grid_.x2(top), k_);
        for (int jq = 0; jq < n; ++jq)
            for (int iq = 0; iq < n; ++iq) {
                const double aq = a.quadrature_value(iq, jq);
                if (aq == 0.0) continue;
                acc += k2 * weight_dx2(top - iq, j - jq) * aq * u[grid_.node(iq, jq)];
            }
        out[j] = acc;
    }
    return out;
}

std::vector<cplx> solve_forward(const Coefficient& a, const IncidentWave& wave, double k, const Grid2D& grid)
{
    return LippmannSchwinger(grid, k).solve(a, wave);
}

std::vector<std::vector<cplx>> solve_forward_all(const Coefficient& a, const IncidentWave& wave, const KGrid& kg)
{
    std::vector<std::vector<cplx>> out;
    out.reserve(kg.midpoints.size());
    for (double k : kg.midpoints) out.push_back(solve_forward(a, wave, k, a.grid));
    return out;
}

CauchyData trace_cauchy(const Coefficient& a, const std::vector<std::vector<cplx>>& u, const IncidentWave& wave,
                        const KGrid& kg)
{
    const Grid2D& grid = a.grid;
    if (u.size() != kg.midpoints.size()) throw std::invalid_argument("trace_cauchy: need one field per wavenumber");
    CauchyData cd;
    cd.R = grid.R;
    cd.n_cells = grid.n_cells;
    cd.k_min = kg.k_min;
    cd.k_max = kg.k_max;
    cd.n_k = kg.n_sub;
    cd.g0.resize(static_cast<size_t>(grid.n()) * kg.n_sub);
    cd.g1.resize(cd.g0.size());
    for (int r = 0; r < kg.n_sub; ++r) {
        const LippmannSchwinger ls(grid, kg.midpoints[r]);
        const auto du = ls.top_dx2(a, u[r], wave);
        for (int j = 0; j < grid.n(); ++j) {
            cd.g0[cd.index(j, r)] = u[r][grid.node(grid.top(), j)];
            cd.g1[cd.index(j, r)] = du[j];
        }
    }
    return cd;
}

CauchyData simulate_cauchy(const std::vector<Shape>& shapes, const IncidentWave& wave, const Grid2D& grid,
                           const KGrid& kg, int refinement)
{
    if (refinement < 1) throw std::invalid_argument("simulate_cauchy: refinement must be at least 1");
    const Grid2D fine = Grid2D::make(grid.R, grid.n_cells * refinement);
    const Coefficient a = rasterize(shapes, fine);

    CauchyData cd;
    cd.R = grid.R;
    cd.n_cells = grid.n_cells;
    cd.k_min = kg.k_min;
    cd.k_max = kg.k_max;
    cd.n_k = kg.n_sub;
    cd.g0.resize(static_cast<size_t>(grid.n()) * kg.n_sub);
    cd.g1.resize(cd.g0.size());
    for (int r = 0; r < kg.n_sub; ++r) {
        const LippmannSchwinger ls(fine, kg.midpoints[r]);
        const auto u = ls.solve(a, wave);
        const auto du = ls.top_dx2(a, u, wave);
        for (int j = 0; j < grid.n(); ++j) {
            cd.g0[cd.index(j, r)] = u[fine.node(fine.top(), j * refinement)];
            cd.g1[cd.index(j, r)] = du[j * refinement];
        }
    }
    return cd;
}

double boundary_norm(const std::vector<cplx>& g, const CauchyData& cd)
{
    const double h = 2.0 * cd.R / cd.n_cells;
    const double hk = (cd.k_max - cd.k_min) / cd.n_k;
    double acc = 0.0;
    for (int r = 0; r < cd.n_k; ++r)
        for (int j = 0; j < cd.n(); ++j) {
            const double w = (j == 0 || j == cd.n_cells) ? 0.5 * h : h;
            acc += w * hk * std::norm(g[cd.index(j, r)]);
        }
    return std::sqrt(acc);
}

CauchyData add_noise(const CauchyData& cd, double delta, std::uint64_t seed)
{
    if (delta < 0.0) throw std::invalid_argument("add_noise: noise level must be non-negative");
    CauchyData out = cd;
    out.noise_level = delta;
    out.seed = seed;
    if (delta == 0.0) return out;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (auto* g : {&out.g0, &out.g1}) {
        std::vector<cplx> noise(g->size());
        for (auto& z : noise) {
            const double re = unit(rng);
            z = cplx(re, unit(rng));
        }
        const double scale = delta * boundary_norm(*g, cd) / boundary_norm(noise, cd);
        for (size_t m = 0; m < g->size(); ++m) (*g)[m] += scale * noise[m];
    }
    return out;
}

}  // namespace convexinv
