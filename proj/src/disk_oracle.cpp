#include "convexinv/disk_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace convexinv {

namespace {

constexpr cplx I{0.0, 1.0};

double bessel_j(int n, double x) { return std::cyl_bessel_j(static_cast<double>(n), x); }
cplx hankel(int n, double x) { return cplx(std::cyl_bessel_j(double(n), x), std::cyl_neumann(double(n), x)); }

double bessel_j_prime(int n, double x)
{
    return n == 0 ? -bessel_j(1, x) : 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

cplx hankel_prime(int n, double x) { return n == 0 ? -hankel(1, x) : 0.5 * (hankel(n - 1, x) - hankel(n + 1, x)); }

cplx i_pow(int n)
{
    static const cplx cycle[4] = {1.0, I, -1.0, -I};
    return cycle[n % 4];
}

}  // namespace

DiskSeries disk_series(const Disk& disk, double k, int max_terms)
{
    if (!(k > 0.0)) throw std::invalid_argument("disk_series: k must be positive");
    if (!(disk.radius > 0.0)) throw std::invalid_argument("disk_series: radius must be positive");
    DiskSeries s;
    s.k = k;
    s.k_inside = k * std::sqrt(1.0 + disk.value);
    const double x = k * disk.radius;
    const double xi = s.k_inside * disk.radius;

    double leading = 1.0;
    for (int n = 0; n < max_terms; ++n) {
        // [H  -J1; k H'  -k1 J1'] [beta; gamma] = [-J; -k J']
        const cplx a11 = hankel(n, x), a21 = k * hankel_prime(n, x);
        const cplx a12 = -bessel_j(n, xi), a22 = -s.k_inside * bessel_j_prime(n, xi);
        const cplx b1 = -bessel_j(n, x), b2 = -k * bessel_j_prime(n, x);
        const cplx det = a11 * a22 - a12 * a21;
        const cplx beta = (b1 * a22 - a12 * b2) / det;
        const cplx gamma = (a11 * b2 - a21 * b1) / det;
        s.scattered.push_back(beta);
        s.interior.push_back(gamma);

        const double term = std::abs(beta * hankel(n, x)) + std::abs(gamma * bessel_j(n, xi));
        if (n == 0) leading = std::max(1.0, term);
        if (n > 0 && term < 1e-12 * leading) {
            s.converged = true;
            break;
        }
    }
    return s;
}

std::pair<cplx, cplx> interface_residual(const DiskSeries& s, const Disk& disk, int n)
{
    const double x = s.k * disk.radius;
    const double xi = s.k_inside * disk.radius;
    const cplx value = bessel_j(n, x) + s.scattered[n] * hankel(n, x) - s.interior[n] * bessel_j(n, xi);
    const cplx flux = s.k * bessel_j_prime(n, x) + s.scattered[n] * s.k * hankel_prime(n, x) -
                      s.interior[n] * s.k_inside * bessel_j_prime(n, xi);
    return {value, flux};
}

std::vector<cplx> analytic_disk_oracle(const Disk& disk, const IncidentWave& wave, double k,
                                       const std::vector<std::pair<double, double>>& points)
{
    const DiskSeries s = disk_series(disk, k);
    if (!s.converged) throw std::runtime_error("analytic_disk_oracle: series did not converge within 40 terms");

    const double theta_d = std::atan2(wave.d2, wave.d1);
    const cplx phase = wave.value(disk.c1, disk.c2, k);
    std::vector<cplx> out;
    out.reserve(points.size());
    for (const auto& [x1, x2] : points) {
        const double d1 = x1 - disk.c1, d2 = x2 - disk.c2;
        const double r = std::hypot(d1, d2);
        const double theta = std::atan2(d2, d1) - theta_d;
        if (r < disk.radius) {
            cplx acc{};
            for (int n = 0; n < s.terms(); ++n)
                acc += (n == 0 ? 1.0 : 2.0) * i_pow(n) * s.interior[n] * bessel_j(n, s.k_inside * r) * std::cos(n * theta);
            out.push_back(phase * acc);
        } else {
            cplx acc{};
            for (int n = 0; n < s.terms(); ++n)
                acc += (n == 0 ? 1.0 : 2.0) * i_pow(n) * s.scattered[n] * hankel(n, k * r) * std::cos(n * theta);
            out.push_back(wave.value(x1, x2, k) + phase * acc);
        }
    }
    return out;
}

double oracle_relative_error(const Disk& disk, const IncidentWave& wave, double k, const Grid2D& grid)
{
    const std::vector<cplx> u = solve_forward(rasterize({disk}, grid), wave, k, grid);
    std::vector<std::pair<double, double>> points;
    std::vector<size_t> nodes;
    for (int i = 0; i < grid.n(); ++i)
        for (int j = 0; j < grid.n(); ++j) {
            const double r = std::hypot(grid.x1(j) - disk.c1, grid.x2(i) - disk.c2);
            if (std::abs(r - disk.radius) < grid.h) continue;
            points.emplace_back(grid.x1(j), grid.x2(i));
            nodes.push_back(grid.node(i, j));
        }
    const std::vector<cplx> exact = analytic_disk_oracle(disk, wave, k, points);
    double num = 0.0, den = 0.0;
    for (size_t p = 0; p < points.size(); ++p) {
        num += std::norm(u[nodes[p]] - exact[p]);
        den += std::norm(exact[p]);
    }
    return std::sqrt(num / den);
}

}  // namespace convexinv
