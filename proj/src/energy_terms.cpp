#include "emqm/energy_terms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emqm::terms {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

// Jacobi eigenvalues of a small dense symmetric matrix.
std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) frob += m[i][j] * m[i][j];
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
        if (off <= 1e-30 * frob) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m[p][q]) < 1e-300) continue;
                const double theta = 0.5 * (m[q][q] - m[p][p]) / m[p][q];
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cth = 1.0 / std::sqrt(t * t + 1.0);
                const double sth = t * cth;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = cth * mkp - sth * mkq;
                    m[k][q] = sth * mkp + cth * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = cth * mpk - sth * mqk;
                    m[q][k] = sth * mpk + cth * mqk;
                }
            }
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = m[i][i];
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace

double effective_a0(const ConstantsSet& c, const DerivedConstants& d, MassScale scale) {
    if (scale == MassScale::paper) return d.a0;
    return c.hbar / (d.alpha * d.m_r * c.c_light);
}

double coulomb_expectation(const QuantumLevel& level, const ConstantsSet& c,
                           const DerivedConstants& d, MassScale scale) {
    if (!level.valid()) throw std::invalid_argument("coulomb_expectation: bad level");
    // <1/r> on the level-structure scale: the Rydberg carries m_r, so the
    // radial scale here is the reduced-mass Bohr radius
    const double a = (scale == MassScale::paper)
                         ? effective_a0(c, d, MassScale::reduced)
                         : effective_a0(c, d, scale);
    const double e2 = c.e_charge * c.e_charge;
    return -(e2 / (4.0 * kPi * c.eps0)) *
           hydrogen::radial_moment(level.n, level.l, -1, a);
}

double zeeman_orbital(int l, int m_l, double b_field, const ConstantsSet& c) {
    if (std::abs(m_l) > l) throw std::invalid_argument("zeeman_orbital: |m_l| > l");
    const double m_r = reduced_mass(c.m_e, c.m_p);
    const double mass_factor = (c.m_p - c.m_e) / (c.m_p + c.m_e);
    return -(c.e_charge / (2.0 * m_r)) * mass_factor * b_field * m_l * c.hbar;
}

double zeeman_spin(double m_s_e, std::optional<double> m_s_p, double b_field,
                   const ConstantsSet& c) {
    if (std::abs(m_s_e) != 0.5)
        throw std::invalid_argument("zeeman_spin: electron projection must be +-1/2");
    double value = c.e_charge * b_field * c.hbar * (m_s_e / c.m_e);
    if (m_s_p) {
        if (std::abs(*m_s_p) != 0.5)
            throw std::invalid_argument("zeeman_spin: proton projection must be +-1/2");
        value -= c.e_charge * b_field * c.hbar * (*m_s_p / c.m_p);
    }
    return value;
}

std::array<double, 3> stern_gerlach_force(
    double m_s, const std::array<std::array<double, 3>, 3>& grad_b,
    const std::array<double, 3>& spin_axis, const ConstantsSet& c) {
    // F_j = (e/m_e) d_j (B . S) = (e/m_e) (dB_i/dx_j) S_i,  S = hbar m_s n
    std::array<double, 3> force{0.0, 0.0, 0.0};
    const double coef = c.e_charge / c.m_e * c.hbar * m_s;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) force[j] += coef * grad_b[i][j] * spin_axis[i];
    return force;
}

double spin_orbit_shift(const QuantumLevel& level, const ConstantsSet& c,
                        const DerivedConstants& d, const SpinOrbitOptions& opt) {
    if (!level.valid()) throw std::invalid_argument("spin_orbit_shift: bad level");
    if (level.l == 0) return 0.0;  // <L.S> = 0; the divergent moment is never touched
    const double a = effective_a0(c, d, opt.mass_scale);
    const double e2 = c.e_charge * c.e_charge;
    const double mass_term =
        1.0 / c.m_e + (opt.include_proton_spin ? 1.0 / c.m_p : 0.0);
    return 0.5 * (c.mu0 * e2 / (4.0 * kPi)) * (mass_term / d.m_r) *
           hydrogen::ls_expectation(level.l, level.two_j, c.hbar) *
           hydrogen::radial_moment(level.n, level.l, -3, a);
}

double fine_structure_splitting(int n, int l, const ConstantsSet& c,
                                const DerivedConstants& d,
                                const SpinOrbitOptions& opt) {
    if (l < 1) throw std::invalid_argument("fine_structure_splitting: l >= 1");
    const auto hi = QuantumLevel::make(n, l, 2 * l + 1);
    const auto lo = QuantumLevel::make(n, l, 2 * l - 1);
    return spin_orbit_shift(hi, c, d, opt) - spin_orbit_shift(lo, c, d, opt);
}

double fine_structure_splitting_compact_2p(const ConstantsSet& c,
                                           const DerivedConstants& d) {
    const double a4 = d.alpha * d.alpha * d.alpha * d.alpha;
    return (3.0 / 96.0) * (c.m_e / d.m_r) * a4 * c.m_e * c.c_light * c.c_light;
}

double experimental_splitting(double lambda1, double lambda2, const ConstantsSet& c) {
    if (!(lambda1 > 0.0) || lambda1 > lambda2)
        throw std::invalid_argument(
            "experimental_splitting: need 0 < lambda1 <= lambda2");
    return 2.0 * kPi * c.hbar * c.c_light * (1.0 / lambda1 - 1.0 / lambda2);
}

double spin_spin_contact(int n, int total_spin_f, const ConstantsSet& c,
                         const DerivedConstants& d, MassScale scale) {
    if (n < 1) throw std::invalid_argument("spin_spin_contact: n >= 1");
    if (total_spin_f != 0 && total_spin_f != 1)
        throw std::invalid_argument("spin_spin_contact: F must be 0 or 1");
    const double a = effective_a0(c, d, scale);
    const double hb2 = c.hbar * c.hbar;
    const double se_dot_sp = (total_spin_f == 1) ? 0.25 * hb2 : -0.75 * hb2;
    // |psi_n0(0)|^2 = 1/(pi n^3 a^3)
    const double psi0_sq = 1.0 / (kPi * std::pow(static_cast<double>(n) * a, 3));
    const double e2 = c.e_charge * c.e_charge;
    return (2.0 / 3.0) * (e2 * c.mu0 / (c.m_e * c.m_p)) * se_dot_sp * psi0_sq;
}

std::vector<double> stark_energy(int n, double e_ext, const ConstantsSet& c,
                                 const DerivedConstants& d, MassScale scale) {
    if (n < 1 || n > 3)
        throw std::invalid_argument("stark_energy: n must be 1..3 (matrix table)");
    const double a = effective_a0(c, d, scale);
    std::vector<double> shifts;
    const double e_mag = std::abs(c.e_charge);
    for (int m = -(n - 1); m <= n - 1; ++m) {
        std::vector<int> ls;
        for (int l = std::abs(m); l < n; ++l) ls.push_back(l);
        const std::size_t dim = ls.size();
        std::vector<std::vector<double>> mat(dim, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                if (std::abs(ls[i] - ls[j]) == 1) {
                    const double z = hydrogen::dipole_z_element(n, ls[i], ls[j], m, a);
                    mat[i][j] = mat[j][i] = e_mag * e_ext * z;
                }
        const auto vals = symmetric_eigenvalues(mat);
        shifts.insert(shifts.end(), vals.begin(), vals.end());
    }
    std::sort(shifts.begin(), shifts.end());
    return shifts;
}

EnergyBreakdown level_breakdown(const QuantumLevel& level, const Environment& env,
                                const ConstantsSet& c, const DerivedConstants& d) {
    if (!level.valid()) throw std::invalid_argument("level_breakdown: bad level");
    EnergyBreakdown out;
    out.level = level;
    out.bohr = hydrogen::bohr_level(level.n, d);
    out.coulomb_expectation = coulomb_expectation(level, c, d, env.spin_orbit.mass_scale);
    if (env.b_field == 0.0) {
        out.spin_orbit = spin_orbit_shift(level, c, d, env.spin_orbit);
    } else {
        // uncoupled (m_l, m_s) basis under an external B; j is not a good label
        if (env.m_l) out.zeeman_orbital = zeeman_orbital(level.l, *env.m_l,
                                                         env.b_field, c);
        if (env.m_s_e)
            out.zeeman_spin = zeeman_spin(*env.m_s_e, env.m_s_p, env.b_field, c);
    }
    if (env.total_spin_f && level.l == 0)
        out.spin_spin = spin_spin_contact(level.n, *env.total_spin_f, c, d,
                                          env.spin_orbit.mass_scale);
    // first-order Stark is off-diagonal in (n, l); the diagonal element
    // vanishes by parity, so the per-level entry stays 0
    out.stark = 0.0;
    out.total = out.bohr + out.spin_orbit + out.zeeman_orbital + out.zeeman_spin +
                out.spin_spin + out.stark;
    return out;
}

}  // namespace emqm::terms
