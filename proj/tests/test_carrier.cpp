#include <doctest.h>

#include <cmath>
#include <random>

#include "convexinv/carrier.hpp"

using namespace convexinv;

namespace {

constexpr double R = 0.8;
constexpr double xi = 0.08;

BoundaryData random_boundary(int n, int modes, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    BoundaryData bd;
    bd.n = n;
    bd.n_modes = modes;
    bd.G0.resize(static_cast<size_t>(n) * modes);
    bd.G1.resize(bd.G0.size());
    for (auto& z : bd.G0) z = {uni(rng), uni(rng)};
    for (auto& z : bd.G1) z = {uni(rng), uni(rng)};
    return bd;
}

}  // namespace

TEST_CASE("cutoff branch values")
{
    CHECK(CutoffProfile::chi(-R, R, xi) == 0.0);
    CHECK(CutoffProfile::chi(-xi, R, xi) == 0.0);
    CHECK(CutoffProfile::chi(R - xi, R, xi) == 1.0);
    CHECK(CutoffProfile::chi(R - 1e-9, R, xi) == 1.0);
    const double t_half = (R - 2.0 * xi) / 2.0;
    CHECK(CutoffProfile::chi(t_half, R, xi) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("cutoff is a monotone smooth step")
{
    const Grid2D g = Grid2D::make(R, 28);
    const CutoffProfile c = build_cutoff(R, xi, g);
    CHECK(static_cast<int>(c.values.size()) == g.n());
    double worst_second = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        CHECK(c.values[i] >= 0.0);
        CHECK(c.values[i] <= 1.0);
        if (g.x2(i) <= -xi) CHECK(c.values[i] == 0.0);
        if (g.x2(i) >= R - xi) CHECK(c.values[i] == 1.0);
        if (i > 0) CHECK(c.values[i] >= c.values[i - 1]);
        if (i > 0 && i < g.top())
            worst_second = std::max(worst_second, std::abs(c.values[i + 1] - 2 * c.values[i] + c.values[i - 1]));
    }
    // a jump would show up as an O(1) second difference
    CHECK(worst_second < 10.0 * g.h);
    CHECK_THROWS_AS(build_cutoff(R, 0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(build_cutoff(R, R, g), std::invalid_argument);
}

TEST_CASE("carrier construction")
{
    const Grid2D g = Grid2D::make(R, 12);
    const CutoffProfile c = build_cutoff(R, xi, g);

    SUBCASE("zero data gives a zero carrier")
    {
        BoundaryData bd;
        bd.n = g.n();
        bd.n_modes = 3;
        bd.G0.assign(static_cast<size_t>(g.n()) * 3, cplx{});
        bd.G1 = bd.G0;
        CHECK(build_carrier(bd, c, g).norm() == 0.0);
    }
    SUBCASE("Dirichlet trace on the top row and zero below the cutoff")
    {
        const BoundaryData bd = random_boundary(g.n(), 3, 1);
        const CoeffVectorField F = build_carrier(bd, c, g);
        for (int m = 0; m < 3; ++m)
            for (int j = 0; j < g.n(); ++j) {
                CHECK(F(g.top(), j, m) == bd.G0_at(j, m));
                for (int i = 0; i < g.n(); ++i)
                    if (g.x2(i) <= -xi) CHECK(F(i, j, m) == cplx{});
            }
    }
    SUBCASE("linear in the data")
    {
        const BoundaryData a = random_boundary(g.n(), 2, 2);
        const BoundaryData b = random_boundary(g.n(), 2, 3);
        BoundaryData sum = a;
        const cplx s(0.3, -1.2);
        for (size_t q = 0; q < sum.G0.size(); ++q) {
            sum.G0[q] = a.G0[q] + s * b.G0[q];
            sum.G1[q] = a.G1[q] + s * b.G1[q];
        }
        const CoeffVectorField lhs = build_carrier(sum, c, g);
        const CoeffVectorField rhs = build_carrier(a, c, g) + s * build_carrier(b, c, g);
        CHECK((lhs - rhs).norm() < 1e-13);
    }
    SUBCASE("shape mismatch is rejected")
    {
        CHECK_THROWS_AS(build_carrier(random_boundary(g.n() + 1, 2, 4), c, g), std::invalid_argument);
    }
}

TEST_CASE("discrete Neumann check on Example 1 data")
{
    const Grid2D g = Grid2D::make(R, 28);
    const KGrid kg = KGrid::make(0.5, 2.0, 50);
    const BasisSet bs = build_basis(kg, 4);
    const IncidentWave wave;
    const CauchyData cd = simulate_cauchy({Disk{0.0, 0.45, 0.2, 3.0}}, wave, g, kg, 1);
    const BoundaryData bd = cauchy_to_v_data(cd, wave, kg, bs);
    const CoeffVectorField F = build_carrier(bd, build_cutoff(R, xi, g), g);
    double g1_max = 0.0;
    for (cplx z : bd.G1) g1_max = std::max(g1_max, std::abs(z));
    const double tol = std::max(1e-2, 5.0 * g.h * g1_max);
    for (int m = 0; m < 4; ++m)
        for (int j = 0; j < g.n(); ++j) {
            const cplx fd = (F(g.top(), j, m) - F(g.top() - 1, j, m)) / g.h;
            CHECK(std::abs(fd - bd.G1_at(j, m)) < tol);
        }
}
