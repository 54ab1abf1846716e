#pragma once

#include <optional>

#include "emqm/grid.hpp"

namespace emqm {

/// H = -hbar^2/(2m) Laplacian + q V - (q/2m) B . (x cross (-i hbar grad)).
/// V and B are static; B must be uniform (vector potential A = x cross B / 2).
struct Hamiltonian {
    double hbar = 0.0;
    const ScalarField* potential = nullptr;     // V, volts; may be null
    std::array<double, 3> b_uniform{0.0, 0.0, 0.0};  // tesla
};

std::vector<cplx> apply_hamiltonian(const WaveField& psi, const Hamiltonian& h);

struct EvolveOptions {
    int snapshot_stride = 1;
    double cg_tol = 1e-13;
    int cg_max_iter = 400;
};

struct EvolveResult {
    std::vector<WaveField> snapshots;
    std::vector<double> times;
    double dt = 0.0;
    double max_norm_drift = 0.0;  // max per-step |d ||psi||^2| / ||psi||^2
    int max_cg_iterations = 0;
};

/// Crank-Nicolson evolution: (1 + i dt H / 2hbar) psi' = (1 - i dt H / 2hbar) psi,
/// solved by conjugate gradients on the Hermitian-positive normal form.
/// Warns on stderr when dt exceeds the h^2 m / hbar scale. Throws on CG
/// non-convergence or non-finite amplitudes.
EvolveResult evolve_free(const WaveField& psi0, double dt, int steps,
                         const Hamiltonian& h, const EvolveOptions& opt = {});

}  // namespace emqm
