#pragma once

#include <cmath>
#include <vector>

#include "convexinv/basis.hpp"
#include "convexinv/grid.hpp"

namespace convexinv {

// phi(x) = exp(-lambda (x2 - s)^2), tabulated per grid row.
struct CarlemanWeight {
    double lambda = 0.0;
    double s = 0.0;
    std::vector<double> values;

    static CarlemanWeight make(double lambda, double s, const Grid2D& grid);
    static double eval(double x2, double lambda, double s) { return std::exp(-lambda * (x2 - s) * (x2 - s)); }
};

struct ObjectiveParams {
    double rho = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    CarlemanWeight weight;
    BasisSet basis;
    CoeffVectorField carrier;
    bool include_residual = true;  // false leaves only the penalty terms
};

// Discrete residual of the elliptic system at interior nodes; zero on the
// boundary rows and columns.
CoeffVectorField residual_Q(const CoeffVectorField& Vhat, const BasisSet& bs);

struct ObjectiveTerms {
    double residual = 0.0;
    double regularization = 0.0;
    double boundary_value = 0.0;
    double boundary_flux = 0.0;

    double total() const { return residual + regularization + boundary_value + boundary_flux; }
};

ObjectiveTerms objective_terms(const CoeffVectorField& W, const ObjectiveParams& params);
double evaluate_J(const CoeffVectorField& W, const ObjectiveParams& params);

// Gradient with respect to the real and imaginary parts packed as
// dJ/dRe + i dJ/dIm, so that the directional derivative of J along delta
// is Re<grad, delta>. This is twice conj(dJ/dW) in Wirtinger terms and is
// also the descent direction of the reconstruction loop.
CoeffVectorField gradient_J(const CoeffVectorField& W, const ObjectiveParams& params);

}  // namespace convexinv
