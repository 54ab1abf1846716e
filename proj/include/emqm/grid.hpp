#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace emqm {

using cplx = std::complex<double>;

/// Rectangular grid, 1 to 3 dimensions, x fastest in memory.
/// Node (i,j,k) sits at origin + (i*hx, j*hy, k*hz).
struct GridSpec {
    int dim = 1;
    std::array<int, 3> npts{1, 1, 1};
    std::array<double, 3> spacing{0.0, 0.0, 0.0};
    std::array<double, 3> origin{0.0, 0.0, 0.0};

    static GridSpec line(int n, double h, double x0);
    static GridSpec square(int n, double h, double x0, double y0);
    static GridSpec cube(int n, double h, std::array<double, 3> org);

    /// Centered grid: n points per axis, spacing h, symmetric about 0.
    static GridSpec centered(int dim, int n, double h);

    std::size_t size() const;
    double cell_volume() const;
    std::size_t index(int i, int j = 0, int k = 0) const;
    std::array<int, 3> coords(std::size_t flat) const;
    std::array<double, 3> position(int i, int j = 0, int k = 0) const;
    double extent(int axis) const { return npts[axis] * spacing[axis]; }
    bool matches(const GridSpec& other) const;

    /// Throws std::invalid_argument unless dim in 1..3, npts >= 8 per active
    /// axis and spacing > 0.
    void validate() const;
};

struct WaveField {
    GridSpec grid;
    std::vector<cplx> amp;
    double mass = 0.0;    // kg
    double charge = 0.0;  // C, signed

    std::size_t size() const { return amp.size(); }
};

struct ScalarField {
    GridSpec grid;
    std::vector<double> val;

    static ScalarField zeros(const GridSpec& g);
};

/// Three real components on a grid; the z component is kept even for
/// dim < 3 so cross products stay uniform.
struct VectorField {
    GridSpec grid;
    std::array<std::vector<double>, 3> comp;

    static VectorField zeros(const GridSpec& g);
};

/// True when the outermost grid layer carries at most `rel_tol` of the
/// field's peak amplitude. Gauss-theorem-dependent checks require this.
bool boundary_decay_ok(const WaveField& psi, double rel_tol = 1e-6);

double max_abs(const WaveField& psi);

}  // namespace emqm
