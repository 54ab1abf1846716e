#include "emqm/hydrogen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "emqm/quadrature.hpp"
#include "emqm/tridiag.hpp"

namespace emqm::hydrogen {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

void require_admissible(int n, int l) {
    if (n < 1 || l < 0 || l >= n)
        throw std::invalid_argument("inadmissible quantum numbers (n, l)");
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// generalized Laguerre L^alpha_k(x) by forward recurrence
double laguerre(int k, int alpha, double x) {
    if (k == 0) return 1.0;
    double lm1 = 1.0;
    double lcur = 1.0 + alpha - x;
    for (int i = 1; i < k; ++i) {
        const double lnext = ((2.0 * i + 1.0 + alpha - x) * lcur - (i + alpha) * lm1) /
                             (i + 1.0);
        lm1 = lcur;
        lcur = lnext;
    }
    return lcur;
}

}  // namespace

bool QuantumLevel::valid() const {
    if (n < 1 || l < 0 || l >= n) return false;
    if (two_j != 2 * l + 1 && two_j != 2 * l - 1) return false;
    if (two_j < 1) return false;
    if (two_mj && (std::abs(*two_mj) > two_j || (*two_mj - two_j) % 2 != 0))
        return false;
    return true;
}

QuantumLevel QuantumLevel::make(int n, int l, int two_j) {
    QuantumLevel q{n, l, two_j, std::nullopt};
    if (!q.valid()) throw std::invalid_argument("inadmissible quantum level");
    return q;
}

CMTransform cm_transform(double m_a, double m_b) {
    if (!(m_a > 0.0) || !(m_b > 0.0))
        throw std::invalid_argument("cm_transform: masses must be positive");
    CMTransform t;
    t.m_a = m_a;
    t.m_b = m_b;
    const double total = m_a + m_b;
    t.cm_coeff_a = m_a / total;
    t.cm_coeff_b = m_b / total;
    t.rel_coeff_b = m_b / total;
    t.rel_coeff_a = m_a / total;
    t.kinetic_cm_factor = 1.0 / (2.0 * total);
    t.kinetic_rel_factor = 1.0 / (2.0 * reduced_mass(m_a, m_b));
    return t;
}

std::array<double, 2> CMTransform::to_cm_rel(double x_a, double x_b) const {
    return {cm_coeff_a * x_a + cm_coeff_b * x_b, x_a - x_b};
}

std::array<double, 2> CMTransform::to_bodies(double x_cm, double x_r) const {
    return {x_cm + rel_coeff_b * x_r, x_cm - rel_coeff_a * x_r};
}

double radial_wavefunction(int n, int l, double r, double a0) {
    require_admissible(n, l);
    if (r < 0.0) throw std::invalid_argument("radial_wavefunction: r < 0");
    const double rho = 2.0 * r / (n * a0);
    const double norm =
        std::sqrt(std::pow(2.0 / (n * a0), 3) * factorial(n - l - 1) /
                  (2.0 * n * factorial(n + l)));
    return norm * std::exp(-0.5 * rho) * std::pow(rho, l) *
           laguerre(n - l - 1, 2 * l + 1, rho);
}

double radial_moment_quadrature(int n, int l, int k, double a0, double rel_tol) {
    require_admissible(n, l);
    if (k < -3) throw std::invalid_argument("radial_moment: k >= -3 required");
    if (k == -3 && l == 0)
        throw std::invalid_argument("radial_moment: <1/r^3> diverges for l = 0");
    // dimensionless variable t = r/a0; R_nl(r) = a0^{-3/2} Rt(t)
    const double t_max = 40.0 * n + 20.0;
    auto integrand = [&](double t) {
        const double rt = radial_wavefunction(n, l, t, 1.0);
        return rt * rt * std::pow(t, 2 + k);
    };
    const auto q = integrate_adaptive(integrand, 0.0, t_max, rel_tol, 0.0);
    return q.value * std::pow(a0, k);
}

double radial_moment(int n, int l, int k, double a0) {
    require_admissible(n, l);
    if (k == 0) return 1.0;
    if (n == 2 && l == 1 && k == -3) return 1.0 / (24.0 * a0 * a0 * a0);
    return radial_moment_quadrature(n, l, k, a0, 1e-10);
}

double dipole_z_element(int n, int l, int lp, int m, double a0) {
    require_admissible(n, l);
    require_admissible(n, lp);
    if (std::abs(l - lp) != 1) return 0.0;
    const int lhi = std::max(l, lp);
    if (std::abs(m) > std::min(l, lp)) return 0.0;
    // <l m| cos(theta) |l+1 m> = sqrt(((l+1)^2 - m^2) / ((2l+1)(2l+3)))
    const int llow = lhi - 1;
    const double ang = std::sqrt((static_cast<double>(lhi) * lhi - m * m) /
                                 ((2.0 * llow + 1.0) * (2.0 * llow + 3.0)));
    const double t_max = 40.0 * n + 20.0;
    auto integrand = [&](double t) {
        return radial_wavefunction(n, l, t, 1.0) * radial_wavefunction(n, lp, t, 1.0) *
               t * t * t;
    };
    const auto q = integrate_adaptive(integrand, 0.0, t_max, 1e-12, 0.0);
    return q.value * a0 * ang;
}

double ls_coupling(int l, int two_j) {
    const QuantumLevel q = QuantumLevel::make(std::max(l + 1, 2), l, two_j);
    (void)q;
    const double j = 0.5 * two_j;
    return 0.5 * (j * (j + 1.0) - l * (l + 1.0) - 0.75);
}

double ls_expectation(int l, int two_j, double hbar) {
    return ls_coupling(l, two_j) * hbar * hbar;
}

double bohr_level(int n, const DerivedConstants& d) {
    if (n < 1) throw std::invalid_argument("bohr_level: n >= 1");
    return -d.rydberg / (static_cast<double>(n) * n);
}

RadialGrid default_radial_grid(int n_max, double a0, int nodes) {
    RadialGrid g;
    g.mesh = RadialGrid::Mesh::graded;
    g.nodes = nodes;
    g.r_min = 1e-3 * a0;
    g.r_max = 40.0 * a0 * n_max * n_max;
    return g;
}

std::vector<RadialEigenpair> radial_eigensolve(int l, int count, const RadialGrid& grid,
                                               const ConstantsSet& c,
                                               const DerivedConstants& d) {
    if (l < 0 || count < 1) throw std::invalid_argument("radial_eigensolve: bad input");
    const int n = grid.nodes;
    if (n < 100) throw std::invalid_argument("radial_eigensolve: too few nodes");

    // node radii; Dirichlet u = 0 at r = 0 and r = r_max
    std::vector<double> r(n);
    if (grid.mesh == RadialGrid::Mesh::graded) {
        if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min))
            throw std::invalid_argument("radial_eigensolve: bad graded grid");
        // nodes strictly inside (0, r_max): r_min * ratio^n = r_max
        const double ratio = std::pow(grid.r_max / grid.r_min, 1.0 / n);
        r[0] = grid.r_min;
        for (int i = 1; i < n; ++i) r[i] = r[i - 1] * ratio;
    } else {
        const double h = grid.r_max / (n + 1);
        for (int i = 0; i < n; ++i) r[i] = (i + 1) * h;
    }

    const double kin = c.hbar * c.hbar / (2.0 * d.m_r);
    const double e2_coul = c.e_charge * c.e_charge / (4.0 * kPi * c.eps0);

    // non-uniform 3-point second derivative; symmetrized by a diagonal
    // similarity transform (geometric mean of the off-diagonal pair)
    std::vector<double> lower(n, 0.0), upper(n, 0.0);
    SymTridiagonal t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        const double h_minus = (i == 0) ? r[0] : r[i] - r[i - 1];
        const double h_plus = (i == n - 1) ? grid.r_max - r[n - 1] : r[i + 1] - r[i];
        const double denom = h_minus * h_plus * (h_minus + h_plus);
        const double a_lo = 2.0 * h_plus / denom;   // couples u_{i-1}
        const double a_hi = 2.0 * h_minus / denom;  // couples u_{i+1}
        lower[i] = -kin * a_lo;
        upper[i] = -kin * a_hi;
        const double centrifugal = kin * l * (l + 1.0) / (r[i] * r[i]);
        t.diag[i] = kin * (a_lo + a_hi) + centrifugal - e2_coul / r[i];
    }
    for (int i = 0; i + 1 < n; ++i) t.off[i] = -std::sqrt(upper[i] * lower[i + 1]);

    const auto vals = lowest_eigenvalues(t, count);

    std::vector<RadialEigenpair> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        RadialEigenpair pair;
        pair.energy = vals[k];
        pair.r = r;
        std::vector<double> w = eigenvector(t, vals[k]);
        // undo the symmetrizing similarity: u_i = w_i / d_i with
        // d_{i+1}/d_i = sqrt(lower_{i+1}/upper_i)
        pair.u.resize(n);
        double dscale = 1.0;
        pair.u[0] = w[0];
        for (int i = 1; i < n; ++i) {
            dscale *= std::sqrt(lower[i] / upper[i - 1]);
            pair.u[i] = w[i] / dscale;
        }
        // normalize Int u^2 dr = 1 (trapezoid, non-uniform)
        double nrm = 0.0;
        for (int i = 0; i + 1 < n; ++i)
            nrm += 0.5 * (pair.u[i] * pair.u[i] + pair.u[i + 1] * pair.u[i + 1]) *
                   (r[i + 1] - r[i]);
        nrm += 0.5 * pair.u[0] * pair.u[0] * r[0];
        nrm = std::sqrt(nrm);
        for (auto& v : pair.u) v /= nrm;

        double tail = 0.0, total = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double seg = 0.5 * (pair.u[i] * pair.u[i] + pair.u[i + 1] * pair.u[i + 1]) *
                               (r[i + 1] - r[i]);
            total += seg;
            if (r[i] > 0.97 * grid.r_max) tail += seg;
        }
        if (tail > 1e-6 * total)
            throw std::runtime_error(
                "radial_eigensolve: eigenfunction reaches the box edge; increase r_max");
        out.push_back(std::move(pair));
    }
    return out;
}

}  // namespace emqm::hydrogen
