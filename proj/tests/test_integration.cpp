// Cross-module scenarios: a charge blob sources a potential through the
// free-space solver, a packet evolves in it, and the conservation checks
// close the loop. Dimensionless units (hbar = m = 1, q = -1) with unit-order
// constants so the Green kernel, evolution and quadratures meet mid-range.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "approx_rel.hpp"
#include "emqm/verify.hpp"

using namespace emqm;

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

// unit-system constants for grid experiments: C = 1, eps0 = mu0 = 1
ConstantsSet unit_constants() {
    ConstantsSet c = default_constants();
    c.hbar = 1.0;
    c.e_charge = -1.0;
    c.m_e = 1.0;
    c.m_p = 1836.0;
    c.eps0 = 1.0;
    c.mu0 = 1.0;
    c.c_light = 1.0;
    return c;
}

ScalarField gaussian_blob(const GridSpec& g, double q, double sigma) {
    ScalarField rho = ScalarField::zeros(g);
    const double norm = q / std::pow(2.0 * kPi * sigma * sigma, 1.5);
    for (int k = 0; k < g.npts[2]; ++k)
        for (int j = 0; j < g.npts[1]; ++j)
            for (int i = 0; i < g.npts[0]; ++i) {
                const auto p = g.position(i, j, k);
                const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
                rho.val[g.index(i, j, k)] = norm * std::exp(-r2 / (2.0 * sigma * sigma));
            }
    return rho;
}

}  // namespace

TEST_CASE("packet in a solver-built attractive well: energy and Ehrenfest close") {
    const ConstantsSet c = unit_constants();
    const int n = 32;
    const GridSpec g = GridSpec::centered(3, n, 15.0 / n);
    const double h = g.spacing[0];

    // positive blob: with q = -1 the packet binds to it
    const ScalarField rho = gaussian_blob(g, 8.0, 1.2);
    const FieldBundle well = bundle_from_charge(rho, c, "nucleus-blob");

    const WaveField psi = sample(
        [&](std::array<double, 3> p) {
            const double dx = p[0] - 0.6, dy = p[1], dz = p[2];
            const double r2 = dx * dx + dy * dy + dz * dz;
            return std::polar(std::exp(-r2 / (2.0 * 1.05 * 1.05)), 0.9 * p[1]);
        },
        g, 1.0, c.e_charge);
    REQUIRE(boundary_decay_ok(psi));

    // short window: a 3D packet spreads against the decay predicate quickly
    Hamiltonian ham{c.hbar, &well.V, {0, 0, 0}};
    EvolveOptions eo;
    eo.snapshot_stride = 3;
    eo.cg_tol = 1e-13;
    const EvolveResult traj = evolve_free(psi, 0.18 * h * h, 12, ham, eo);

    CHECK(traj.max_norm_drift <= 1e-12);
    const auto energy = verify::check_energy_conservation(traj, ham, 1e-8);
    CHECK(energy.passed);
    const auto ehrenfest = verify::check_position_velocity(traj, c.hbar, 2e-3);
    CHECK(ehrenfest.passed);
    // sigma spans only ~2.2 cells at 32^3, so the force quadrature closes
    // at the few-percent level
    const auto lorentz = verify::check_momentum_lorentz(traj, well, c.hbar, 6e-2);
    CHECK(lorentz.passed);
    CHECK(lorentz.residual <= 4e-2);
}

TEST_CASE("coupling energy: field-product route equals the charge-potential route") {
    const ConstantsSet c = unit_constants();
    const int n = 48;
    const GridSpec g = GridSpec::centered(3, n, 16.0 / n);

    const ScalarField rho_a = gaussian_blob(g, 3.0, 1.1);
    FieldBundle source = bundle_from_charge(rho_a, c, "source");

    WaveField psi = sample(
        [&](std::array<double, 3> p) {
            const double dx = p[0] - 2.2, dy = p[1] + 0.7, dz = p[2];
            return cplx(std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * 1.1 * 1.1)),
                        0.0);
        },
        g, 1.0, c.e_charge);
    const ScalarField rho_psi = charge_density(psi);
    FieldBundle other = bundle_from_charge(rho_psi, c, "packet");

    const double field_route = interaction_energy(source, other, c);
    double charge_route = 0.0;
    for (std::size_t i = 0; i < rho_psi.val.size(); ++i)
        charge_route += rho_psi.val[i] * source.V.val[i];
    charge_route *= g.cell_volume();

    CHECK(field_route == rel(charge_route, 0.01));
}
