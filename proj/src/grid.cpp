#include "convexinv/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace convexinv {

Grid2D Grid2D::make(double R, int n_cells)
{
    if (!(R > 0.0)) throw std::invalid_argument("Grid2D: R must be positive");
    if (n_cells < 2) throw std::invalid_argument("Grid2D: need at least two cells per side");
    return Grid2D{R, n_cells, 2.0 * R / n_cells};
}

namespace {
void check_same_shape(const CoeffVectorField& a, const CoeffVectorField& b)
{
    if (!(a.grid() == b.grid()) || a.n_modes() != b.n_modes())
        throw std::invalid_argument("CoeffVectorField: shape mismatch");
}
}  // namespace

CoeffVectorField& CoeffVectorField::operator+=(const CoeffVectorField& o)
{
    check_same_shape(*this, o);
    for (size_t m = 0; m < data_.size(); ++m) data_[m] += o.data_[m];
    return *this;
}

CoeffVectorField& CoeffVectorField::operator-=(const CoeffVectorField& o)
{
    check_same_shape(*this, o);
    for (size_t m = 0; m < data_.size(); ++m) data_[m] -= o.data_[m];
    return *this;
}

CoeffVectorField& CoeffVectorField::operator*=(cplx c)
{
    for (auto& v : data_) v *= c;
    return *this;
}

double CoeffVectorField::norm() const
{
    double acc = 0.0;
    for (const auto& v : data_) acc += std::norm(v);
    return std::sqrt(acc);
}

CoeffVectorField operator+(CoeffVectorField a, const CoeffVectorField& b) { return a += b; }
CoeffVectorField operator-(CoeffVectorField a, const CoeffVectorField& b) { return a -= b; }
CoeffVectorField operator*(cplx c, CoeffVectorField a) { return a *= c; }

cplx inner(const CoeffVectorField& a, const CoeffVectorField& b)
{
    check_same_shape(a, b);
    cplx acc{};
    for (size_t m = 0; m < a.size(); ++m) acc += std::conj(a[m]) * b[m];
    return acc;
}

}  // namespace convexinv
