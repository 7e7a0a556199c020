#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace convexinv {

using cplx = std::complex<double>;

// Uniform (n_cells+1)^2 node grid on (-R, R)^2. Node (i, j) sits at
// (x1, x2) = (-R + j h, -R + i h); i runs along x2, j along x1, and the
// measurement boundary is the top row i = n_cells. Indices are 0-based.
struct Grid2D {
    double R = 0.0;
    int n_cells = 0;
    double h = 0.0;

    static Grid2D make(double R, int n_cells);

    int n() const { return n_cells + 1; }
    int top() const { return n_cells; }
    size_t node_count() const { return static_cast<size_t>(n()) * n(); }
    double x1(int j) const { return -R + j * h; }
    double x2(int i) const { return -R + i * h; }
    size_t node(int i, int j) const { return static_cast<size_t>(i) + static_cast<size_t>(j) * n(); }
    // Lined-up index over (i, j, mode r).
    size_t lined(int i, int j, int r) const { return node(i, j) + static_cast<size_t>(r) * node_count(); }

    bool operator==(const Grid2D&) const = default;
};

// N complex scalar fields on a grid, stored contiguously by lined index.
class CoeffVectorField {
public:
    CoeffVectorField() = default;
    CoeffVectorField(const Grid2D& grid, int n_modes)
        : grid_(grid), n_modes_(n_modes), data_(grid.node_count() * n_modes, cplx{}) {}

    const Grid2D& grid() const { return grid_; }
    int n_modes() const { return n_modes_; }
    size_t size() const { return data_.size(); }

    cplx& operator()(int i, int j, int r) { return data_[grid_.lined(i, j, r)]; }
    const cplx& operator()(int i, int j, int r) const { return data_[grid_.lined(i, j, r)]; }
    cplx& operator[](size_t m) { return data_[m]; }
    const cplx& operator[](size_t m) const { return data_[m]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    CoeffVectorField& operator+=(const CoeffVectorField& o);
    CoeffVectorField& operator-=(const CoeffVectorField& o);
    CoeffVectorField& operator*=(cplx c);

    double norm() const;  // plain Euclidean norm over all entries

private:
    Grid2D grid_;
    int n_modes_ = 0;
    std::vector<cplx> data_;
};

CoeffVectorField operator+(CoeffVectorField a, const CoeffVectorField& b);
CoeffVectorField operator-(CoeffVectorField a, const CoeffVectorField& b);
CoeffVectorField operator*(cplx c, CoeffVectorField a);

// Sum of conj(a) * b over all entries.
cplx inner(const CoeffVectorField& a, const CoeffVectorField& b);

}  // namespace convexinv
