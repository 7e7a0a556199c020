#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace convexinv {

using cplx = std::complex<double>;

class DependentBasisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wavenumber interval [k_min, k_max] split into n_sub uniform cells.
// Midpoints serve the measurement side; the Gauss-Legendre rule serves
// every integral that defines the basis and its coupling matrices.
struct KGrid {
    double k_min = 0.0;
    double k_max = 0.0;
    int n_sub = 0;
    double h_k = 0.0;
    std::vector<double> midpoints;
    std::vector<double> quad_nodes;
    std::vector<double> quad_weights;

    double k0() const { return 0.5 * (k_min + k_max); }

    // 16-point Gauss-Legendre on `panels` equal panels.
    static KGrid make(double k_min, double k_max, int n_sub, int panels = 8);
};

// Dense N x N x N tensor indexed as b(m, n, l).
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), data_(static_cast<size_t>(n) * n * n, 0.0) {}

    int size() const { return n_; }
    double& operator()(int m, int n, int l) { return data_[(static_cast<size_t>(m) * n_ + n) * n_ + l]; }
    double operator()(int m, int n, int l) const { return data_[(static_cast<size_t>(m) * n_ + n) * n_ + l]; }

private:
    int n_ = 0;
    std::vector<double> data_;
};

struct CouplingMatrices {
    Eigen::MatrixXd D;
    Eigen::MatrixXcd S;
    Tensor3 B;
};

// Orthonormal basis of L2(k_min, k_max) obtained from the exponential
// monomials (k - k0)^(n-1) exp(k - k0). Each mode is stored as a linear
// combination of those monomials so that it and its derivative can be
// evaluated anywhere on the interval.
struct BasisSet {
    int n_modes = 0;
    double k0 = 0.0;
    Eigen::MatrixXd gs;        // row n: monomial coefficients of mode n (lower triangular)
    Eigen::MatrixXd phi;       // n_modes x quad nodes
    Eigen::MatrixXd dphi;
    Eigen::MatrixXd phi_mid;   // n_modes x midpoints
    Eigen::MatrixXd dphi_mid;
    Eigen::MatrixXd mat_D;
    Eigen::MatrixXcd mat_S;
    Tensor3 tensor_B;

    double value(int n, double k) const;
    double derivative(int n, double k) const;
};

// Throws DependentBasisError when n_modes is too large for the interval.
BasisSet build_basis(const KGrid& kg, int n_modes);

CouplingMatrices matrices_DSB(const BasisSet& bs, const KGrid& kg);

// Midpoint-rule coefficients of samples given on kg.midpoints.
std::vector<cplx> project(std::span<const cplx> samples, const BasisSet& bs, const KGrid& kg);

// Sum of coeffs[n] * Phi_n (or Phi_n') on kg.midpoints.
std::vector<cplx> synthesize(std::span<const cplx> coeffs, const BasisSet& bs, const KGrid& kg,
                             bool use_derivative = false);

// Plain-text tables of the sampled modes and of D, S, B.
void write_basis_tables(std::ostream& os, const BasisSet& bs, const KGrid& kg);

}  // namespace convexinv
