#pragma once

#include <array>
#include <optional>
#include <vector>

#include "emqm/constants.hpp"
#include "emqm/hydrogen.hpp"

namespace emqm::terms {

using hydrogen::QuantumLevel;

/// Radial length scale: `paper` uses the electron-mass Bohr radius
/// a0 = hbar/(alpha m_e C); `reduced` rebuilds it on the reduced mass.
enum class MassScale { paper, reduced };

double effective_a0(const ConstantsSet& c, const DerivedConstants& d, MassScale scale);

/// -(e^2/4 pi eps0) <1/r>_nl. Diagnostic: equals 2 E_n by the virial relation.
double coulomb_expectation(const QuantumLevel& level, const ConstantsSet& c,
                           const DerivedConstants& d,
                           MassScale scale = MassScale::paper);

/// Orbital Zeeman energy for uniform B along z:
/// -(e/2 m_r) ((m_p - m_e)/(m_p + m_e)) B m_l hbar, e signed.
double zeeman_orbital(int l, int m_l, double b_field, const ConstantsSet& c);

/// Spin Zeeman energy e B hbar (m_s_e/m_e - m_s_p/m_p), e signed; the proton
/// term is included only when a projection is given.
double zeeman_spin(double m_s_e, std::optional<double> m_s_p, double b_field,
                   const ConstantsSet& c);

/// Stern-Gerlach force for B(x) = B0 + G x: F = (e/m_e) grad(B.S).
/// grad_b[i][j] = dB_i/dx_j; the spin points along `spin_axis` (unit vector)
/// with projection m_s (+-1/2).
std::array<double, 3> stern_gerlach_force(
    double m_s, const std::array<std::array<double, 3>, 3>& grad_b,
    const std::array<double, 3>& spin_axis, const ConstantsSet& c);

struct SpinOrbitOptions {
    bool include_proton_spin = false;  // the S_p/m_p term of the coupling
    MassScale mass_scale = MassScale::paper;
};

/// (1/2)(mu0 e^2/4pi)(1/(m_e m_r)) <L.S> <1/r^3>; exactly 0 for l = 0.
double spin_orbit_shift(const QuantumLevel& level, const ConstantsSet& c,
                        const DerivedConstants& d, const SpinOrbitOptions& opt = {});

/// shift(j = l+1/2) - shift(j = l-1/2) for fixed (n, l >= 1).
double fine_structure_splitting(int n, int l, const ConstantsSet& c,
                                const DerivedConstants& d,
                                const SpinOrbitOptions& opt = {});

/// The (2,1) splitting via the compact closed form
/// (3/96)(m_e/m_r) alpha^4 m_e C^2 -- an independent algebraic route.
double fine_structure_splitting_compact_2p(const ConstantsSet& c,
                                           const DerivedConstants& d);

/// 2 pi hbar C (1/lambda1 - 1/lambda2); requires 0 < lambda1 < lambda2.
double experimental_splitting(double lambda1, double lambda2, const ConstantsSet& c);

/// Contact spin-spin energy of an s-state:
/// (2/3)(e^2 mu0/(m_e m_p)) <S_e.S_p>_F |psi_n0(0)|^2, F = 0 (singlet) or 1.
double spin_spin_contact(int n, int total_spin_f, const ConstantsSet& c,
                         const DerivedConstants& d,
                         MassScale scale = MassScale::paper);

/// First-order Stark shifts of the degenerate n-manifold in a uniform field
/// E_ext (n <= 3): eigenvalues of the dipole coupling |e| E z, sorted
/// ascending; matrix elements from radial quadrature and angular selection
/// rules.
std::vector<double> stark_energy(int n, double e_ext, const ConstantsSet& c,
                                 const DerivedConstants& d,
                                 MassScale scale = MassScale::paper);

struct Environment {
    double b_field = 0.0;                  // tesla, along z
    double e_field = 0.0;                  // V/m, along z
    std::optional<int> m_l;                // orbital projection (uncoupled basis)
    std::optional<double> m_s_e;           // electron spin projection
    std::optional<double> m_s_p;           // proton spin projection
    std::optional<int> total_spin_f;       // 0 or 1, s-states only
    SpinOrbitOptions spin_orbit;
};

struct EnergyBreakdown {
    QuantumLevel level;
    double bohr = 0.0;
    double coulomb_expectation = 0.0;  // diagnostic, inside bohr via virial
    double spin_orbit = 0.0;
    double zeeman_orbital = 0.0;
    double zeeman_spin = 0.0;
    double spin_spin = 0.0;
    double stark = 0.0;
    double total = 0.0;  // bohr + spin_orbit + zeemans + spin_spin + stark
};

EnergyBreakdown level_breakdown(const QuantumLevel& level, const Environment& env,
                                const ConstantsSet& c, const DerivedConstants& d);

}  // namespace emqm::terms
