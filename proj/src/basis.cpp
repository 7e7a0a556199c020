#include "convexinv/basis.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include <boost/math/quadrature/gauss.hpp>

namespace convexinv {

KGrid KGrid::make(double k_min, double k_max, int n_sub, int panels)
{
    if (!(k_min < k_max)) throw std::invalid_argument("KGrid: k_min must be below k_max");
    if (n_sub < 1) throw std::invalid_argument("KGrid: need at least one subinterval");
    if (panels < 1) throw std::invalid_argument("KGrid: need at least one quadrature panel");

    KGrid kg;
    kg.k_min = k_min;
    kg.k_max = k_max;
    kg.n_sub = n_sub;
    kg.h_k = (k_max - k_min) / n_sub;
    kg.midpoints.resize(n_sub);
    for (int r = 0; r < n_sub; ++r) kg.midpoints[r] = k_min + (r + 0.5) * kg.h_k;

    using rule = boost::math::quadrature::gauss<double, 16>;
    const auto& abscissa = rule::abscissa();
    const auto& weights = rule::weights();
    const double panel = (k_max - k_min) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = k_min + (p + 0.5) * panel;
        const double half = 0.5 * panel;
        for (size_t q = 0; q < abscissa.size(); ++q) {
            if (abscissa[q] == 0.0) {
                kg.quad_nodes.push_back(mid);
                kg.quad_weights.push_back(half * weights[q]);
                continue;
            }
            kg.quad_nodes.push_back(mid - half * abscissa[q]);
            kg.quad_weights.push_back(half * weights[q]);
            kg.quad_nodes.push_back(mid + half * abscissa[q]);
            kg.quad_weights.push_back(half * weights[q]);
        }
    }
    return kg;
}

namespace {

// Exponential monomial t^j e^t and its derivative, t = k - k0.
double monomial(int j, double t) { return std::pow(t, j) * std::exp(t); }

double monomial_derivative(int j, double t)
{
    const double lead = j == 0 ? 0.0 : j * std::pow(t, j - 1);
    return (lead + std::pow(t, j)) * std::exp(t);
}

Eigen::MatrixXd sample(const Eigen::MatrixXd& gs, const std::vector<double>& ks, double k0, bool derivative)
{
    const int n = static_cast<int>(gs.rows());
    Eigen::MatrixXd mono(n, ks.size());
    for (size_t q = 0; q < ks.size(); ++q)
        for (int j = 0; j < n; ++j)
            mono(j, q) = derivative ? monomial_derivative(j, ks[q] - k0) : monomial(j, ks[q] - k0);
    return gs * mono;
}

}  // namespace

double BasisSet::value(int n, double k) const
{
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += gs(n, j) * monomial(j, k - k0);
    return acc;
}

double BasisSet::derivative(int n, double k) const
{
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += gs(n, j) * monomial_derivative(j, k - k0);
    return acc;
}

BasisSet build_basis(const KGrid& kg, int n_modes)
{
    if (n_modes < 1) throw std::invalid_argument("build_basis: n_modes must be at least 1");
    const size_t nq = kg.quad_nodes.size();
    const Eigen::Map<const Eigen::VectorXd> w(kg.quad_weights.data(), static_cast<Eigen::Index>(nq));

    BasisSet bs;
    bs.n_modes = n_modes;
    bs.k0 = kg.k0();
    bs.gs = Eigen::MatrixXd::Zero(n_modes, n_modes);

    Eigen::MatrixXd samples(n_modes, nq);
    for (int n = 0; n < n_modes; ++n) {
        Eigen::VectorXd coeff = Eigen::VectorXd::Unit(n_modes, n);
        Eigen::VectorXd s(nq);
        for (size_t q = 0; q < nq; ++q) s[q] = monomial(n, kg.quad_nodes[q] - bs.k0);
        const double input_norm = std::sqrt(s.cwiseProduct(s).dot(w));

        // modified Gram-Schmidt, second pass reorthogonalizes
        for (int pass = 0; pass < 2; ++pass) {
            for (int m = 0; m < n; ++m) {
                const double c = s.cwiseProduct(samples.row(m).transpose()).dot(w);
                s -= c * samples.row(m).transpose();
                coeff -= c * bs.gs.row(m).transpose();
            }
        }
        const double norm = std::sqrt(s.cwiseProduct(s).dot(w));
        if (norm < 1e-12 * input_norm)
            throw DependentBasisError("build_basis: mode " + std::to_string(n + 1) +
                                      " is numerically dependent; reduce n_modes");
        samples.row(n) = s.transpose() / norm;
        bs.gs.row(n) = coeff.transpose() / norm;
    }

    bs.phi = sample(bs.gs, kg.quad_nodes, bs.k0, false);
    bs.dphi = sample(bs.gs, kg.quad_nodes, bs.k0, true);
    bs.phi_mid = sample(bs.gs, kg.midpoints, bs.k0, false);
    bs.dphi_mid = sample(bs.gs, kg.midpoints, bs.k0, true);

    auto mats = matrices_DSB(bs, kg);
    bs.mat_D = std::move(mats.D);
    bs.mat_S = std::move(mats.S);
    bs.tensor_B = std::move(mats.B);
    return bs;
}

CouplingMatrices matrices_DSB(const BasisSet& bs, const KGrid& kg)
{
    const int n = bs.n_modes;
    const size_t nq = kg.quad_nodes.size();
    CouplingMatrices out;
    out.D = Eigen::MatrixXd::Zero(n, n);
    out.S = Eigen::MatrixXcd::Zero(n, n);
    out.B = Tensor3(n);

    // (Phi + k Phi') per mode on the quadrature nodes
    Eigen::MatrixXd lifted(n, nq);
    for (int l = 0; l < n; ++l)
        for (size_t q = 0; q < nq; ++q)
            lifted(l, q) = bs.phi(l, q) + kg.quad_nodes[q] * bs.dphi(l, q);

    for (int m = 0; m < n; ++m) {
        for (int r = 0; r < n; ++r) {
            double d = 0.0, s = 0.0;
            for (size_t q = 0; q < nq; ++q) {
                d += kg.quad_weights[q] * bs.phi(m, q) * bs.dphi(r, q);
                s += kg.quad_weights[q] * bs.phi(m, q) * lifted(r, q);
            }
            out.D(m, r) = d;
            out.S(m, r) = cplx(0.0, -2.0 * s);
            for (int l = 0; l < n; ++l) {
                double b = 0.0;
                for (size_t q = 0; q < nq; ++q)
                    b += kg.quad_weights[q] * 2.0 * kg.quad_nodes[q] * bs.phi(m, q) * bs.phi(r, q) * lifted(l, q);
                out.B(m, r, l) = b;
            }
        }
    }
    return out;
}

std::vector<cplx> project(std::span<const cplx> samples, const BasisSet& bs, const KGrid& kg)
{
    if (samples.size() != kg.midpoints.size())
        throw std::invalid_argument("project: sample count does not match the wavenumber grid");
    std::vector<cplx> coeffs(bs.n_modes, cplx{});
    for (int n = 0; n < bs.n_modes; ++n) {
        cplx acc{};
        for (size_t r = 0; r < samples.size(); ++r) acc += samples[r] * bs.phi_mid(n, r);
        coeffs[n] = acc * kg.h_k;
    }
    return coeffs;
}

std::vector<cplx> synthesize(std::span<const cplx> coeffs, const BasisSet& bs, const KGrid& kg, bool use_derivative)
{
    if (static_cast<int>(coeffs.size()) != bs.n_modes)
        throw std::invalid_argument("synthesize: coefficient count does not match the basis");
    const Eigen::MatrixXd& table = use_derivative ? bs.dphi_mid : bs.phi_mid;
    std::vector<cplx> out(kg.midpoints.size(), cplx{});
    for (size_t r = 0; r < out.size(); ++r)
        for (int n = 0; n < bs.n_modes; ++n) out[r] += coeffs[n] * table(n, r);
    return out;
}

void write_basis_tables(std::ostream& os, const BasisSet& bs, const KGrid& kg)
{
    os << std::setprecision(17);
    os << "# mode k phi dphi\n";
    for (int n = 0; n < bs.n_modes; ++n)
        for (size_t q = 0; q < kg.quad_nodes.size(); ++q)
            os << n + 1 << ' ' << kg.quad_nodes[q] << ' ' << bs.phi(n, q) << ' ' << bs.dphi(n, q) << '\n';
    os << "# D: m n d_mn\n";
    for (int m = 0; m < bs.n_modes; ++m)
        for (int n = 0; n < bs.n_modes; ++n) os << m + 1 << ' ' << n + 1 << ' ' << bs.mat_D(m, n) << '\n';
    os << "# S: m n Re Im\n";
    for (int m = 0; m < bs.n_modes; ++m)
        for (int n = 0; n < bs.n_modes; ++n)
            os << m + 1 << ' ' << n + 1 << ' ' << bs.mat_S(m, n).real() << ' ' << bs.mat_S(m, n).imag() << '\n';
    os << "# B: m n l b\n";
    for (int m = 0; m < bs.n_modes; ++m)
        for (int n = 0; n < bs.n_modes; ++n)
            for (int l = 0; l < bs.n_modes; ++l)
                os << m + 1 << ' ' << n + 1 << ' ' << l + 1 << ' ' << bs.tensor_B(m, n, l) << '\n';
}

}  // namespace convexinv
