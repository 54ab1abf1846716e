#pragma once

#include <array>
#include <optional>
#include <vector>

#include "emqm/constants.hpp"

namespace emqm::hydrogen {

/// Hydrogen quantum numbers; j and m_j are stored doubled (two_j = 2j) so
/// half-integers stay exact. s = 1/2 throughout.
struct QuantumLevel {
    int n = 1;
    int l = 0;
    int two_j = 1;
    std::optional<int> two_mj;

    bool valid() const;
    /// Throws std::invalid_argument on inadmissible quantum numbers.
    static QuantumLevel make(int n, int l, int two_j);
};

/// Center-of-mass / relative coordinate split for two masses.
struct CMTransform {
    double m_a = 0.0, m_b = 0.0;
    double cm_coeff_a = 0.0, cm_coeff_b = 0.0;  // x_cm = ca x_a + cb x_b
    double rel_coeff_b = 0.0;                   // x_a = x_cm + (m_b/M) x_r
    double rel_coeff_a = 0.0;                   // x_b = x_cm - (m_a/M) x_r
    double kinetic_cm_factor = 0.0;             // 1/(2M)
    double kinetic_rel_factor = 0.0;            // 1/(2 m_r)

    std::array<double, 2> to_cm_rel(double x_a, double x_b) const;
    std::array<double, 2> to_bodies(double x_cm, double x_r) const;
};

CMTransform cm_transform(double m_a, double m_b);

/// Normalized hydrogenic radial function R_nl(r) with length scale a0,
/// Int R^2 r^2 dr = 1. Throws on inadmissible (n, l) or r < 0.
double radial_wavefunction(int n, int l, double r, double a0);

/// <R_nl| r^k |R_nl>. Closed forms for k = 0 and (n,l,k) = (2,1,-3);
/// adaptive quadrature otherwise. k = -3 requires l >= 1.
double radial_moment(int n, int l, int k, double a0);

/// Quadrature-only evaluation of the same moment (independent oracle path).
double radial_moment_quadrature(int n, int l, int k, double a0,
                                double rel_tol = 1e-12);

/// <2s| z |2p0>-style dipole matrix element: Int R_nl R_nl' r^3 dr times the
/// angular factor for z between (l, m) and (l' = l+1, m). Quadrature-backed.
double dipole_z_element(int n, int l, int lp, int m, double a0);

/// (1/2)[j(j+1) - l(l+1) - 3/4], in units of hbar^2 (multiply by hbar^2).
double ls_coupling(int l, int two_j);

/// Same, in J^2 s^2.
double ls_expectation(int l, int two_j, double hbar);

/// E_n = -rydberg / n^2.
double bohr_level(int n, const DerivedConstants& d);

// --- radial bound-state solver -----------------------------------------------

struct RadialGrid {
    enum class Mesh { graded, uniform };
    Mesh mesh = Mesh::graded;
    int nodes = 4000;
    double r_min = 0.0;  // first node (graded); uniform ignores and uses h
    double r_max = 0.0;
};

RadialGrid default_radial_grid(int n_max, double a0, int nodes = 4000);

struct RadialEigenpair {
    double energy = 0.0;        // J
    std::vector<double> r;      // node radii
    std::vector<double> u;      // u = r R, normalized Int u^2 dr = 1
};

/// Lowest `count` eigenpairs of
///   -(hbar^2/2 m_r)[d^2/dr^2 - l(l+1)/r^2] - e^2/(4 pi eps0 r)
/// acting on u = r R with zero-Dirichlet ends. Throws when eigenfunction
/// mass near r_max exceeds 1e-6 (insufficient box).
std::vector<RadialEigenpair> radial_eigensolve(int l, int count, const RadialGrid& grid,
                                               const ConstantsSet& c,
                                               const DerivedConstants& d);

}  // namespace emqm::hydrogen
