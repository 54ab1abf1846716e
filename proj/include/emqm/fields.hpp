#pragma once

#include <string>

#include "emqm/grid.hpp"

namespace emqm {

struct ConstantsSet;

enum class SourceKind { charge, current, magnetization, external_uniform };

/// Static potentials and fields on one grid. Fields not applicable to the
/// source are stored as zeros.
struct FieldBundle {
    GridSpec grid;
    ScalarField V;   // volts
    VectorField A;   // T m
    VectorField E;   // V/m
    VectorField B;   // T
    SourceKind kind = SourceKind::charge;
    std::string label;  // distinct per physical source; guards self-pairing
};

// --- free-space Green-function potentials (3D, cubic cells) ------------------

/// V(x) = (1/4 pi eps0) Int rho(y)/|x-y| d3y, by zero-padded spectral
/// convolution. The r=0 kernel value is the cell average of 1/(4 pi eps0 r).
ScalarField scalar_potential(const ScalarField& rho, const ConstantsSet& c);

/// A(x) = (mu0/4 pi) Int j(y)/|x-y| d3y, componentwise.
VectorField vector_potential_current(const VectorField& j, const ConstantsSet& c);

/// A_M(x) = (mu0/4 pi) curl Int M(y)/|x-y| d3y.
VectorField vector_potential_magnetization(const VectorField& m_rho,
                                           const ConstantsSet& c);

// --- bundle constructors ------------------------------------------------------

FieldBundle bundle_from_charge(const ScalarField& rho, const ConstantsSet& c,
                               std::string label);
FieldBundle bundle_from_current(const VectorField& j, const ConstantsSet& c,
                                std::string label);
FieldBundle bundle_from_magnetization(const VectorField& m_rho, const ConstantsSet& c,
                                      std::string label);

/// Uniform B: symmetric gauge A = B cross x / 2 on the grid, B constant,
/// E = V = 0.
FieldBundle uniform_field_potential(const GridSpec& g, std::array<double, 3> b,
                                    std::string label = "uniform-B");

/// Uniform E: V = -E.x on the grid, E constant, A = B = 0.
FieldBundle uniform_electric_field(const GridSpec& g, std::array<double, 3> e,
                                   std::string label = "uniform-E");

// --- energies and residuals ---------------------------------------------------

/// Int [eps0 E1.E2 + (1/mu0) B1.B2], plus the symmetrized boundary flux of
/// (eps0 V E + A cross B / mu0) that accounts for the finite box (the
/// integrand's exterior tail decays only like 1/R). Symmetric under swap,
/// bit-exact. Throws on grid mismatch or when both bundles carry the same
/// label (self-interaction guard).
double interaction_energy(const FieldBundle& b1, const FieldBundle& b2,
                          const ConstantsSet& c);

/// Residual of the Lagrangian identity
///   Int (B^2/mu0 - eps0 E^2) = Int (A.j - rho V) + boundary flux,
/// normalized by the larger integral magnitude. The discrete surface flux of
/// (A cross B / mu0 + eps0 V E) accounts for the finite domain.
double lagrangian_equivalence_residual(const FieldBundle& bundle,
                                       const ScalarField& rho, const VectorField& j,
                                       const ConstantsSet& c);

// --- discrete vector calculus (real fields, one-sided at the boundary) -------

VectorField curl(const VectorField& f);
ScalarField divergence(const VectorField& f);
VectorField gradient(const ScalarField& f);

/// max |div f| over nodes at least `margin` layers from the boundary.
double max_interior_divergence(const VectorField& f, int margin = 2);

double max_abs_component(const VectorField& f);

/// Average of 1/|x| over the unit cube [0,1]^3 (self-cell kernel constant).
inline constexpr double kSelfCellAverage = 1.190038681989783;

}  // namespace emqm
