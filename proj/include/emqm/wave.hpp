#pragma once

#include <functional>

#include "emqm/grid.hpp"

namespace emqm {

struct Hamiltonian;  // evolve.hpp

enum class BoundaryRule {
    zero_exterior,  // field treated as zero outside the grid (Dirichlet)
    one_sided       // second-order one-sided differences at the boundary
};

/// Samples f on the grid nodes. Throws on non-finite samples.
WaveField sample(const std::function<cplx(std::array<double, 3>)>& f,
                 const GridSpec& grid, double mass, double charge);

/// Riemann-sum quadrature of |psi|^2 over the grid.
double norm_squared(const WaveField& psi);

/// rho = q |psi|^2, node-wise.
ScalarField charge_density(const WaveField& psi);

/// j = -(i hbar q / 2m) (psi* grad psi - (grad psi)* psi), real vector field.
/// Central differences in the interior, one-sided at the boundary.
VectorField current_density(const WaveField& psi, double hbar);

// --- discrete operators -----------------------------------------------------

/// d(field)/dx_axis with the given boundary rule.
std::vector<cplx> gradient_component(const GridSpec& g, const std::vector<cplx>& f,
                                     int axis, BoundaryRule rule);

/// out += coef * Laplacian(f), standard 2*dim+1 stencil, zero-Dirichlet.
void add_laplacian(const GridSpec& g, const std::vector<cplx>& f,
                   std::vector<cplx>& out, double coef);

/// out += i * coef_scale * coordinate(axis) * f, node-wise.
void add_i_coord_mul(const GridSpec& g, const std::vector<cplx>& f,
                     std::vector<cplx>& out, int coord_axis, double coef_scale);

/// Quadrature-weighted inner product <a, b> = cellvol * sum conj(a_i) b_i.
cplx inner_product(const WaveField& a, const WaveField& b);
double field_norm(const WaveField& a);

// --- integrated values (space integrals of psi* O psi) -----------------------

struct Observable {
    enum class Kind { position, momentum, kinetic, angular_momentum, multiply };
    Kind kind = Kind::position;
    int axis = 0;
    std::function<double(std::array<double, 3>)> fn;  // multiply kind only

    static Observable position(int axis) { return {Kind::position, axis, {}}; }
    static Observable momentum(int axis) { return {Kind::momentum, axis, {}}; }
    static Observable kinetic() { return {Kind::kinetic, 0, {}}; }
    static Observable angular_momentum(int axis) {
        return {Kind::angular_momentum, axis, {}};
    }
    static Observable multiply(std::function<double(std::array<double, 3>)> f) {
        return {Kind::multiply, 0, std::move(f)};
    }
};

/// <psi| O |psi> with quadrature weights. All supported operators are
/// Hermitian: the imaginary part must stay below 1e-10 relative or the call
/// throws (signals bad boundary decay); the real part is returned.
double integrated_value(const WaveField& psi, const Observable& op, double hbar);

/// Raw complex quadrature of psi* (O psi), no Hermiticity enforcement.
cplx integrated_value_raw(const WaveField& psi, const Observable& op, double hbar);

// --- variation families (mu of delta psi = eps * mu) -------------------------

enum class VariationKind { time, position, displacement, rotation };

struct VariationParams {
    std::array<double, 3> direction{0.0, 0.0, 0.0};  // k, r or Omega
    const Hamiltonian* ham = nullptr;                // required for `time`
    double hbar = 0.0;                               // required for `time`
};

WaveField apply_variation(const WaveField& psi, VariationKind kind,
                          const VariationParams& params);

/// Max-norm over interior nodes of (rho(t+dt)-rho(t))/dt + div j(midpoint).
double continuity_residual(const WaveField& before, const WaveField& after, double dt,
                           double hbar);

}  // namespace emqm
