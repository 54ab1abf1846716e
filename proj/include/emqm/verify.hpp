#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emqm/constants.hpp"
#include "emqm/evolve.hpp"
#include "emqm/fields.hpp"
#include "emqm/wave.hpp"

namespace emqm::verify {

struct VerificationReport {
    std::string check;
    std::vector<double> lhs;
    std::vector<double> rhs;
    double residual = 0.0;
    double tolerance = 0.0;
    std::optional<double> order;
    bool passed = false;  // residual <= tolerance

    void finalize() { passed = residual <= tolerance; }
};

// --- conservation-law checks on trajectories (Table of equations of motion) ---

/// Total energy <T> + q<V> + <-(q/2m) B.L> per snapshot; residual is the
/// maximum relative drift from the first snapshot.
VerificationReport check_energy_conservation(const EvolveResult& traj,
                                             const Hamiltonian& h, double tolerance);

/// d<x>/dt versus <j>/q at snapshot midpoints, relative to the velocity scale.
VerificationReport check_position_velocity(const EvolveResult& traj, double hbar,
                                           double tolerance);

/// (m/q) d<j>/dt versus <j x B + rho E>, relative to the force scale.
/// `flip_rhs_sign` is a fault-injection hook for tests.
VerificationReport check_momentum_lorentz(const EvolveResult& traj,
                                          const FieldBundle& bundle, double hbar,
                                          double tolerance, bool flip_rhs_sign = false);

/// (m/q) d<x cross j>/dt versus <x cross (rho E + j x B)>, relative to a
/// characteristic torque scale.
VerificationReport check_angular_momentum(const EvolveResult& traj,
                                          const FieldBundle& bundle, double hbar,
                                          double tolerance);

// --- pointwise identity residuals ------------------------------------------------

/// |<a, O b> + <O a, b>| / (|a| |b| scale(O)) for the variation generator of
/// `kind` (position: i k.x, displacement: r.grad, rotation: Omega.(x cross grad)).
double antihermitian_residual(VariationKind kind, const WaveField& a,
                              const WaveField& b, std::array<double, 3> direction);

/// || hbar w psi - H psi || / (||psi|| max(|hbar w|, ||H psi||/||psi||)).
double stationary_residual(const WaveField& psi, double omega, const Hamiltonian& h);

/// Residual of the Hamiltonian-form identity for one variation kind, with
/// static external fields from `h`. Normalized by the largest term.
double hamiltonian_form_residual(const WaveField& psi, VariationKind kind,
                                 std::array<double, 3> direction, const Hamiltonian& h);

// --- seeded random fields -------------------------------------------------------

/// Gaussian-enveloped random polynomial-phase field; boundary decay holds by
/// construction. Deterministic for a fixed seed.
WaveField random_decayed_field(const GridSpec& g, std::uint64_t seed, double mass,
                               double charge);

// --- suite ----------------------------------------------------------------------

struct SuiteOptions {
    std::string preset = "quick";  // quick: 32^3 / 1D-256; full: 64^3 / 1D-512
    std::uint64_t seed = 1234;
    bool fault_inject_lorentz_sign = false;  // test fixture only
};

struct SuiteResult {
    std::vector<VerificationReport> checks;
    bool all_passed = false;
};

SuiteResult run_suite(const SuiteOptions& opt, const ConstantsSet& constants);

}  // namespace emqm::verify
