#include "convexinv/objective.hpp"

#include <array>
#include <stdexcept>

namespace convexinv {

CarlemanWeight CarlemanWeight::make(double lambda, double s, const Grid2D& grid)
{
    if (lambda < 0.0) throw std::invalid_argument("CarlemanWeight: lambda must be non-negative");
    CarlemanWeight w{lambda, s, std::vector<double>(grid.n())};
    for (int i = 0; i < grid.n(); ++i) w.values[i] = eval(grid.x2(i), lambda, s);
    return w;
}

namespace {

// Forward differences of every mode at interior node (i, j).
struct LocalDiffs {
    std::vector<cplx> lap, dx1, dx2;
};

LocalDiffs local_diffs(const CoeffVectorField& V, int i, int j)
{
    const int N = V.n_modes();
    const double h = V.grid().h;
    LocalDiffs d{std::vector<cplx>(N), std::vector<cplx>(N), std::vector<cplx>(N)};
    for (int r = 0; r < N; ++r) {
        const cplx c = V(i, j, r);
        d.lap[r] = (V(i + 1, j, r) + V(i - 1, j, r) + V(i, j + 1, r) + V(i, j - 1, r) - 4.0 * c) / (h * h);
        d.dx1[r] = (V(i, j + 1, r) - c) / h;
        d.dx2[r] = (V(i + 1, j, r) - c) / h;
    }
    return d;
}

cplx residual_component(const LocalDiffs& d, const BasisSet& bs, int m)
{
    const int N = bs.n_modes;
    cplx q{};
    for (int r = 0; r < N; ++r) {
        q += bs.mat_D(m, r) * d.lap[r] + bs.mat_S(m, r) * d.dx2[r];
        for (int s = 0; s < N; ++s) q += bs.tensor_B(m, r, s) * (d.dx1[r] * d.dx1[s] + d.dx2[r] * d.dx2[s]);
    }
    return q;
}

struct Tap {
    int di, dj;
    double coef;
};

// Adds scale * |sum coef w|^2 to the value and its real gradient to grad.
template <size_t K>
void quadratic_term(const CoeffVectorField& W, int i, int j, int m, const std::array<Tap, K>& taps, double scale,
                    double& value, CoeffVectorField* grad)
{
    cplx s{};
    for (const auto& t : taps) s += t.coef * W(i + t.di, j + t.dj, m);
    value += scale * std::norm(s);
    if (grad)
        for (const auto& t : taps) (*grad)(i + t.di, j + t.dj, m) += 2.0 * scale * t.coef * s;
}

void check_inputs(const CoeffVectorField& W, const ObjectiveParams& p)
{
    if (!(W.grid() == p.carrier.grid()) || W.n_modes() != p.carrier.n_modes() || W.n_modes() != p.basis.n_modes)
        throw std::invalid_argument("objective: W, carrier and basis shapes disagree");
    if (static_cast<int>(p.weight.values.size()) != W.grid().n())
        throw std::invalid_argument("objective: Carleman weight not tabulated on this grid");
    if (p.rho < 0.0 || p.alpha1 < 0.0 || p.alpha2 < 0.0)
        throw std::invalid_argument("objective: regularization weights must be non-negative");
}

ObjectiveTerms accumulate(const CoeffVectorField& W, const ObjectiveParams& p, CoeffVectorField* grad)
{
    check_inputs(W, p);
    const Grid2D& grid = W.grid();
    const int N = W.n_modes();
    const int top = grid.top();
    const double h = grid.h;
    const double h2 = h * h;
    const BasisSet& bs = p.basis;
    ObjectiveTerms terms;

    if (p.include_residual) {
        const CoeffVectorField Vhat = W + p.carrier;
        std::vector<cplx> cx(N), cy(N);
        for (int j = 1; j < top; ++j)
            for (int i = 1; i < top; ++i) {
                const double phi2 = p.weight.values[i] * p.weight.values[i];
                const LocalDiffs d = local_diffs(Vhat, i, j);
                for (int m = 0; m < N; ++m) {
                    const cplx q = residual_component(d, bs, m);
                    terms.residual += h2 * phi2 * std::norm(q);
                    if (!grad) continue;
                    const cplx c = 2.0 * h2 * phi2 * q;
                    for (int r = 0; r < N; ++r) {
                        cx[r] = 0.0;
                        cy[r] = bs.mat_S(m, r);
                        for (int s = 0; s < N; ++s) {
                            const double b = bs.tensor_B(m, r, s) + bs.tensor_B(m, s, r);
                            cx[r] += b * d.dx1[s];
                            cy[r] += b * d.dx2[s];
                        }
                    }
                    for (int r = 0; r < N; ++r) {
                        const cplx cl = c * bs.mat_D(m, r) / h2;
                        (*grad)(i + 1, j, r) += cl;
                        (*grad)(i - 1, j, r) += cl;
                        (*grad)(i, j + 1, r) += cl;
                        (*grad)(i, j - 1, r) += cl;
                        (*grad)(i, j, r) -= 4.0 * cl;
                        const cplx gx = c * std::conj(cx[r]) / h;
                        (*grad)(i, j + 1, r) += gx;
                        (*grad)(i, j, r) -= gx;
                        const cplx gy = c * std::conj(cy[r]) / h;
                        (*grad)(i + 1, j, r) += gy;
                        (*grad)(i, j, r) -= gy;
                    }
                }
            }
    }

    const double rho_h2 = p.rho * h2;
    for (int m = 0; m < N; ++m) {
        for (int j = 0; j <= top; ++j)
            for (int i = 0; i <= top; ++i)
                quadratic_term(W, i, j, m, std::array<Tap, 1>{{{0, 0, 1.0}}}, rho_h2, terms.regularization, grad);

        for (int j = 1; j < top; ++j)
            for (int i = 1; i < top; ++i) {
                const double a = 1.0 / h, b = 1.0 / h2;
                quadratic_term(W, i, j, m, std::array<Tap, 2>{{{0, 1, a}, {0, 0, -a}}}, rho_h2, terms.regularization, grad);
                quadratic_term(W, i, j, m, std::array<Tap, 2>{{{1, 0, a}, {0, 0, -a}}}, rho_h2, terms.regularization, grad);
                quadratic_term(W, i, j, m, std::array<Tap, 3>{{{0, 1, b}, {0, 0, -2.0 * b}, {0, -1, b}}}, rho_h2,
                               terms.regularization, grad);
                quadratic_term(W, i, j, m, std::array<Tap, 3>{{{1, 0, b}, {0, 0, -2.0 * b}, {-1, 0, b}}}, rho_h2,
                               terms.regularization, grad);
                quadratic_term(W, i, j, m, std::array<Tap, 4>{{{1, 1, b}, {-1, 1, -b}, {1, -1, -b}, {-1, -1, b}}},
                               2.0 * rho_h2, terms.regularization, grad);
            }

        for (int j = 0; j <= top; ++j)
            quadratic_term(W, top, j, m, std::array<Tap, 1>{{{0, 0, 1.0}}}, p.alpha1 * h, terms.boundary_value, grad);
        for (int j = 1; j < top; ++j)
            quadratic_term(W, top, j, m, std::array<Tap, 2>{{{0, 0, 1.0 / h}, {-1, 0, -1.0 / h}}}, p.alpha2 * h,
                           terms.boundary_flux, grad);
    }
    return terms;
}

}  // namespace

CoeffVectorField residual_Q(const CoeffVectorField& Vhat, const BasisSet& bs)
{
    if (Vhat.n_modes() != bs.n_modes) throw std::invalid_argument("residual_Q: mode count mismatch");
    CoeffVectorField Q(Vhat.grid(), Vhat.n_modes());
    const int top = Vhat.grid().top();
    for (int j = 1; j < top; ++j)
        for (int i = 1; i < top; ++i) {
            const LocalDiffs d = local_diffs(Vhat, i, j);
            for (int m = 0; m < bs.n_modes; ++m) Q(i, j, m) = residual_component(d, bs, m);
        }
    return Q;
}

ObjectiveTerms objective_terms(const CoeffVectorField& W, const ObjectiveParams& params)
{
    return accumulate(W, params, nullptr);
}

double evaluate_J(const CoeffVectorField& W, const ObjectiveParams& params) { return objective_terms(W, params).total(); }

CoeffVectorField gradient_J(const CoeffVectorField& W, const ObjectiveParams& params)
{
    CoeffVectorField grad(W.grid(), W.n_modes());
    accumulate(W, params, &grad);
    return grad;
}

}  // namespace convexinv
