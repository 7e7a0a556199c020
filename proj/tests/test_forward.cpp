#include <doctest.h>

#include <cmath>
#include <string>

#include "convexinv/disk_oracle.hpp"
#include "convexinv/forward.hpp"

using namespace convexinv;

namespace {

const Disk example_disk{0.0, 0.45, 0.2, 3.0};

Grid2D default_grid() { return Grid2D::make(0.8, 28); }

}  // namespace

TEST_CASE("zero contrast leaves the incident wave untouched")
{
    const Grid2D g = default_grid();
    const IncidentWave w;
    const auto u = solve_forward(zero_coefficient(g), w, 1.5, g);
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) CHECK(u[g.node(i, j)] == w.value(g.x1(j), g.x2(i), 1.5));
}

TEST_CASE("forward solver agrees with the cylinder series")
{
    const IncidentWave w;
    for (double k : {1.0, 2.0}) {
        const double coarse = oracle_relative_error(example_disk, w, k, default_grid());
        const double fine = oracle_relative_error(example_disk, w, k, Grid2D::make(0.8, 56));
        CHECK(coarse < 0.01);
        CHECK(fine < coarse);
    }
}

TEST_CASE("an oblique incident direction is handled too")
{
    const IncidentWave w(0.6, -0.8);
    CHECK(oracle_relative_error(example_disk, w, 1.5, default_grid()) < 0.01);
}

TEST_CASE("the Lippmann-Schwinger residual meets its target")
{
    const Grid2D g = default_grid();
    const Coefficient a = rasterize({example_disk}, g);
    const IncidentWave w;
    const double k = 2.0;
    const LippmannSchwinger ls(g, k);
    const auto u = ls.solve(a, w);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            cplx rhs = w.value(g.x1(j), g.x2(i), k);
            for (int p = 0; p < g.n(); ++p)
                for (int q = 0; q < g.n(); ++q) {
                    const double c = a.quadrature_value(p, q);
                    if (c != 0.0) rhs += k * k * ls.weight(i - p, j - q) * c * u[g.node(p, q)];
                }
            num += std::norm(u[g.node(i, j)] - rhs);
            den += std::norm(u[g.node(i, j)]);
        }
    CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("traces of the incident wave")
{
    const Grid2D g = default_grid();
    const KGrid kg = KGrid::make(0.5, 2.0, 5);
    const IncidentWave w;
    const Coefficient a = zero_coefficient(g);
    const CauchyData cd = trace_cauchy(a, solve_forward_all(a, w, kg), w, kg);
    CHECK(cd.n_cells == 28);
    CHECK(cd.n_k == 5);
    for (int r = 0; r < kg.n_sub; ++r)
        for (int j = 0; j < g.n(); ++j) {
            const double k = kg.midpoints[r];
            const cplx uin = w.value(g.x1(j), g.R, k);
            CHECK(std::abs(cd.g0[cd.index(j, r)] - uin) < 1e-15);
            CHECK(std::abs(cd.g1[cd.index(j, r)] - cplx(0.0, -k) * uin) < 1e-14);
            CHECK(std::abs(uin - std::exp(cplx(0.0, -k * g.R))) < 1e-15);
        }
}

TEST_CASE("Neumann trace matches a fourth-order one-sided difference")
{
    const IncidentWave w;
    const KGrid kg = KGrid::make(0.5, 2.0, 4);
    double previous = INFINITY;
    for (int nc : {28, 56}) {
        const Grid2D g = Grid2D::make(0.8, nc);
        const Coefficient a = rasterize({example_disk}, g);
        const auto u = solve_forward_all(a, w, kg);
        const CauchyData cd = trace_cauchy(a, u, w, kg);
        double err = 0.0, scale = 0.0;
        for (int r = 0; r < kg.n_sub; ++r)
            for (int j = 0; j < g.n(); ++j) {
                auto f = [&](int t) { return u[r][g.node(g.top() - t, j)]; };
                const cplx fd = (25.0 * f(0) - 48.0 * f(1) + 36.0 * f(2) - 16.0 * f(3) + 3.0 * f(4)) / (12.0 * g.h);
                err = std::max(err, std::abs(fd - cd.g1[cd.index(j, r)]));
                scale = std::max(scale, std::abs(cd.g1[cd.index(j, r)]));
            }
        CHECK(err / scale < previous / 16.0);
        previous = err / scale;
    }
    CHECK(previous < 1e-3);
}

TEST_CASE("fine-grid simulation samples the coarse nodes")
{
    const Grid2D g = Grid2D::make(0.8, 14);
    const KGrid kg = KGrid::make(0.5, 2.0, 3);
    const IncidentWave w;
    const CauchyData coarse = simulate_cauchy({example_disk}, w, g, kg, 1);
    const CauchyData fine = simulate_cauchy({example_disk}, w, g, kg, 2);
    CHECK(fine.n_cells == 14);
    CHECK(fine.g0.size() == coarse.g0.size());
    double diff = 0.0;
    for (size_t m = 0; m < fine.g0.size(); ++m) diff = std::max(diff, std::abs(fine.g0[m] - coarse.g0[m]));
    CHECK(diff > 0.0);
    CHECK(diff < 0.05);
    const CauchyData empty = simulate_cauchy({}, w, g, kg, 2);
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < g.n(); ++j)
            CHECK(std::abs(empty.g0[empty.index(j, r)] - w.value(g.x1(j), g.R, kg.midpoints[r])) < 1e-15);
}

TEST_CASE("noise model")
{
    const Grid2D g = Grid2D::make(0.8, 10);
    const KGrid kg = KGrid::make(0.5, 2.0, 6);
    const IncidentWave w;
    const CauchyData clean = simulate_cauchy({Disk{0.0, 0.3, 0.2, 1.0}}, w, g, kg, 1);

    const CauchyData same = add_noise(clean, 0.0, 7);
    CHECK(same.g0 == clean.g0);
    CHECK(same.g1 == clean.g1);

    const CauchyData noisy = add_noise(clean, 0.05, 7);
    CHECK(noisy.noise_level == 0.05);
    CHECK(noisy.seed == 7);
    for (int which = 0; which < 2; ++which) {
        const auto& a = which ? noisy.g1 : noisy.g0;
        const auto& b = which ? clean.g1 : clean.g0;
        std::vector<cplx> d(a.size());
        for (size_t m = 0; m < a.size(); ++m) d[m] = a[m] - b[m];
        CHECK(std::abs(boundary_norm(d, clean) / boundary_norm(b, clean) - 0.05) < 1e-12);
    }

    const CauchyData again = add_noise(clean, 0.05, 7);
    CHECK(again.g0 == noisy.g0);
    CHECK(again.g1 == noisy.g1);
    CHECK(add_noise(clean, 0.05, 8).g0 != noisy.g0);
}

TEST_CASE("series oracle")
{
    const IncidentWave w;
    SUBCASE("zero contrast gives the incident wave")
    {
        const Disk d{0.1, 0.2, 0.3, 0.0};
        const std::vector<std::pair<double, double>> pts{{0.1, 0.2}, {0.3, 0.25}, {-0.5, 0.6}, {0.0, -0.7}};
        const auto u = analytic_disk_oracle(d, w, 1.7, pts);
        for (size_t p = 0; p < pts.size(); ++p)
            CHECK(std::abs(u[p] - w.value(pts[p].first, pts[p].second, 1.7)) < 1e-10);
    }
    SUBCASE("interface conditions hold per mode")
    {
        for (double k : {0.5, 1.0, 2.0}) {
            const DiskSeries s = disk_series(example_disk, k);
            CHECK(s.converged);
            for (int n = 0; n < s.terms(); ++n) {
                const auto [value_jump, flux_jump] = interface_residual(s, example_disk, n);
                CHECK(std::abs(value_jump) < 1e-12);
                CHECK(std::abs(flux_jump) < 1e-12);
            }
        }
    }
    SUBCASE("frozen probe value")
    {
        // cross-checked against a 113^2 Lippmann-Schwinger solve (agreement 5e-5)
        const auto u = analytic_disk_oracle(example_disk, w, 1.0, {{0.1, 0.5}});
        CHECK(u[0].real() == doctest::Approx(1.0421916411713814).epsilon(1e-12));
        CHECK(u[0].imag() == doctest::Approx(-0.42860942628361864).epsilon(1e-12));
        const Grid2D g = Grid2D::make(0.8, 112);
        const auto ls = solve_forward(rasterize({example_disk}, g), w, 1.0, g);
        CHECK(std::abs(ls[g.node(91, 63)] - u[0]) < 1e-3);
    }
}

TEST_CASE("geometry validation")
{
    const Grid2D g = default_grid();
    try {
        rasterize({Disk{0.0, 0.7, 0.2, 1.0}}, g);
        FAIL("expected InvalidGeometryError");
    } catch (const InvalidGeometryError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("boundary node (i=28") != std::string::npos);
    }
    CHECK_THROWS_AS(rasterize({Rectangle{-0.9, 0.0, 0.0, 0.2, 1.0}}, g), InvalidGeometryError);
    CHECK_THROWS_AS(rasterize({Disk{0.0, 0.0, 0.2, -1.0}}, g), InvalidGeometryError);
    CHECK_THROWS_AS(IncidentWave(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(IncidentWave(0.5, -0.5), std::invalid_argument);
}

TEST_CASE("rasterization")
{
    const Grid2D g = default_grid();
    const Coefficient a = rasterize({example_disk}, g);
    CHECK(a.max() == 3.0);
    double covered = 0.0;
    for (double c : a.cell_values) covered += c * g.h * g.h;
    CHECK(covered == doctest::Approx(3.0 * M_PI * 0.04).epsilon(5e-3));
    // later shapes win where they overlap
    const Coefficient b = rasterize({Rectangle{-0.5, -0.5, 0.5, 0.5, 1.0}, Disk{0.0, 0.0, 0.2, 2.0}}, g);
    CHECK(b.at(14, 14) == 2.0);
    CHECK(b.at(14, 20) == 1.0);
    CHECK(b.at(0, 0) == 0.0);
}
