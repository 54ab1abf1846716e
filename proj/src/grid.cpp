#include "emqm/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace emqm {

GridSpec GridSpec::line(int n, double h, double x0) {
    GridSpec g;
    g.dim = 1;
    g.npts = {n, 1, 1};
    g.spacing = {h, 0.0, 0.0};
    g.origin = {x0, 0.0, 0.0};
    g.validate();
    return g;
}

GridSpec GridSpec::square(int n, double h, double x0, double y0) {
    GridSpec g;
    g.dim = 2;
    g.npts = {n, n, 1};
    g.spacing = {h, h, 0.0};
    g.origin = {x0, y0, 0.0};
    g.validate();
    return g;
}

GridSpec GridSpec::cube(int n, double h, std::array<double, 3> org) {
    GridSpec g;
    g.dim = 3;
    g.npts = {n, n, n};
    g.spacing = {h, h, h};
    g.origin = org;
    g.validate();
    return g;
}

GridSpec GridSpec::centered(int dim, int n, double h) {
    const double x0 = -0.5 * (n - 1) * h;
    if (dim == 1) return line(n, h, x0);
    if (dim == 2) return square(n, h, x0, x0);
    return cube(n, h, {x0, x0, x0});
}

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(npts[a]);
    return s;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= spacing[a];
    return v;
}

std::size_t GridSpec::index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(npts[0]) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(npts[1]) * static_cast<std::size_t>(k));
}

std::array<int, 3> GridSpec::coords(std::size_t flat) const {
    const int nx = npts[0];
    const int ny = npts[1];
    const int i = static_cast<int>(flat % nx);
    const int j = static_cast<int>((flat / nx) % ny);
    const int k = static_cast<int>(flat / (static_cast<std::size_t>(nx) * ny));
    return {i, j, k};
}

std::array<double, 3> GridSpec::position(int i, int j, int k) const {
    return {origin[0] + i * spacing[0], origin[1] + j * spacing[1],
            origin[2] + k * spacing[2]};
}

bool GridSpec::matches(const GridSpec& other) const {
    if (dim != other.dim) return false;
    for (int a = 0; a < dim; ++a) {
        if (npts[a] != other.npts[a]) return false;
        if (std::abs(spacing[a] - other.spacing[a]) > 1e-15 * spacing[a]) return false;
        if (std::abs(origin[a] - other.origin[a]) >
            1e-12 * (std::abs(origin[a]) + spacing[a]))
            return false;
    }
    return true;
}

void GridSpec::validate() const {
    if (dim < 1 || dim > 3) throw std::invalid_argument("grid dim must be 1..3");
    for (int a = 0; a < dim; ++a) {
        if (npts[a] < 8)
            throw std::invalid_argument("grid needs at least 8 points per axis");
        if (!(spacing[a] > 0.0))
            throw std::invalid_argument("grid spacing must be positive");
    }
}

ScalarField ScalarField::zeros(const GridSpec& g) {
    ScalarField f;
    f.grid = g;
    f.val.assign(g.size(), 0.0);
    return f;
}

VectorField VectorField::zeros(const GridSpec& g) {
    VectorField f;
    f.grid = g;
    for (auto& c : f.comp) c.assign(g.size(), 0.0);
    return f;
}

double max_abs(const WaveField& psi) {
    double m = 0.0;
    for (const cplx& z : psi.amp) m = std::max(m, std::abs(z));
    return m;
}

bool boundary_decay_ok(const WaveField& psi, double rel_tol) {
    const GridSpec& g = psi.grid;
    const double peak = max_abs(psi);
    if (peak == 0.0) return true;
    double boundary_peak = 0.0;
    const std::size_t n = g.size();
    for (std::size_t f = 0; f < n; ++f) {
        const auto c = g.coords(f);
        bool on_boundary = false;
        for (int a = 0; a < g.dim; ++a)
            if (c[a] == 0 || c[a] == g.npts[a] - 1) on_boundary = true;
        if (on_boundary) boundary_peak = std::max(boundary_peak, std::abs(psi.amp[f]));
    }
    return boundary_peak <= rel_tol * peak;
}

}  // namespace emqm
