// Interaction-energy formulas for the hydrogen levels: Coulomb expectation,
// Zeeman terms, Stern-Gerlach, spin-orbit and fine structure, spin-spin
// contact, first-order Stark.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "emqm/energy_terms.hpp"
#include "spin_spin_oracle.hpp"

#include "approx_rel.hpp"

using namespace emqm;
using namespace emqm::terms;
using hydrogen::QuantumLevel;

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
const ConstantsSet kC = default_constants();
const DerivedConstants kD = derive(kC);
}  // namespace

TEST_CASE("Coulomb expectation: virial relation and n-only dependence") {
    // <V_C> = 2 E_n for the pure Coulomb level structure
    const double v10 = coulomb_expectation(QuantumLevel::make(1, 0, 1), kC, kD);
    CHECK(v10 == rel(2.0 * hydrogen::bohr_level(1, kD), 1e-8));

    const double v20 = coulomb_expectation(QuantumLevel::make(2, 0, 1), kC, kD);
    const double v21 = coulomb_expectation(QuantumLevel::make(2, 1, 3), kC, kD);
    CHECK(v20 == rel(v21, 1e-9));
    CHECK(v20 == rel(2.0 * hydrogen::bohr_level(2, kD), 1e-8));
}

TEST_CASE("orbital Zeeman: magnitude near the Bohr magneton, linear in m_l") {
    CHECK(zeeman_orbital(1, 0, 1.0, kC) == 0.0);

    const double mu_b = std::abs(kC.e_charge) * kC.hbar / (2.0 * kC.m_e);
    const double e1 = zeeman_orbital(1, 1, 1.0, kC);
    // reduced-mass and (m_p - m_e)/(m_p + m_e) factors shift mu_B at the
    // m_e/m_p level only
    CHECK(std::abs(e1 / (mu_b * 1.0) - 1.0) <= 2.0 * kC.m_e / kC.m_p);
    CHECK(e1 == rel(9.274e-24, 2e-3));

    CHECK(zeeman_orbital(1, -1, 1.0, kC) == -e1);
    CHECK(zeeman_orbital(2, 2, 0.5, kC) == rel(2.0 * 0.5 * e1, 1e-12));
    CHECK_THROWS_AS((void)zeeman_orbital(1, 2, 1.0, kC), std::invalid_argument);
}

TEST_CASE("spin Zeeman: electron term is e hbar B / 2 m_e, proton term tiny") {
    const double e_up = zeeman_spin(0.5, std::nullopt, 1.0, kC);
    CHECK(std::abs(e_up) ==
          rel(std::abs(kC.e_charge) * kC.hbar / (2.0 * kC.m_e), 1e-12));
    CHECK(std::abs(e_up) == rel(9.274e-24, 1e-4));

    // unpolarized trace
    CHECK(zeeman_spin(0.5, std::nullopt, 1.0, kC) +
              zeeman_spin(-0.5, std::nullopt, 1.0, kC) ==
          0.0);

    // proton term magnitude relative to the electron term = m_e/m_p
    const double with_p = zeeman_spin(0.5, 0.5, 1.0, kC);
    CHECK(std::abs(with_p - e_up) / std::abs(e_up) ==
          rel(kC.m_e / kC.m_p, 1e-10));

    CHECK_THROWS_AS((void)zeeman_spin(0.3, std::nullopt, 1.0, kC),
                    std::invalid_argument);
}

TEST_CASE("Stern-Gerlach force: zero gradient, magnitude, spin flip") {
    std::array<std::array<double, 3>, 3> no_grad{};
    const auto f0 = stern_gerlach_force(0.5, no_grad, {0, 0, 1}, kC);
    CHECK(f0[0] == 0.0);
    CHECK(f0[1] == 0.0);
    CHECK(f0[2] == 0.0);

    std::array<std::array<double, 3>, 3> grad{};
    grad[2][2] = 10.0;  // dB_z/dz
    const auto up = stern_gerlach_force(0.5, grad, {0, 0, 1}, kC);
    const auto down = stern_gerlach_force(-0.5, grad, {0, 0, 1}, kC);
    CHECK(std::abs(up[2]) ==
          rel(std::abs(kC.e_charge) * kC.hbar / (2.0 * kC.m_e) * 10.0, 1e-12));
    CHECK(std::abs(up[2]) == rel(9.274e-23, 1e-4));
    CHECK(up[2] == -down[2]);
}

TEST_CASE("spin-orbit: l = 0 vanishes, the 2p splitting matches the quoted value") {
    CHECK(spin_orbit_shift(QuantumLevel::make(2, 0, 1), kC, kD) == 0.0);
    CHECK(spin_orbit_shift(QuantumLevel::make(3, 0, 1), kC, kD) == 0.0);

    const double split = fine_structure_splitting(2, 1, kC, kD);
    CHECK(split == rel(7.259023470408092e-24, 1e-6));

    // j = 3/2 lies above j = 1/2
    CHECK(spin_orbit_shift(QuantumLevel::make(2, 1, 3), kC, kD) > 0.0);
    CHECK(spin_orbit_shift(QuantumLevel::make(2, 1, 1), kC, kD) < 0.0);
}

TEST_CASE("spin-orbit: degeneracy-weighted shifts sum to zero") {
    for (int n = 2; n <= 5; ++n)
        for (int l = 1; l < n && l <= 4; ++l) {
            const double hi = spin_orbit_shift(QuantumLevel::make(n, l, 2 * l + 1),
                                               kC, kD);
            const double lo = spin_orbit_shift(QuantumLevel::make(n, l, 2 * l - 1),
                                               kC, kD);
            const double total = (2.0 * l + 2.0) * hi + (2.0 * l) * lo;
            CHECK(std::abs(total) <= 1e-12 * std::max(std::abs(hi), std::abs(lo)));
        }
}

TEST_CASE("spin-orbit: the proton-spin term rescales by 1 + m_e/m_p") {
    SpinOrbitOptions with_p;
    with_p.include_proton_spin = true;
    const auto level = QuantumLevel::make(2, 1, 3);
    const double base = spin_orbit_shift(level, kC, kD);
    const double full = spin_orbit_shift(level, kC, kD, with_p);
    CHECK(full / base == doctest::Approx(1.0 + kC.m_e / kC.m_p).epsilon(1e-12));
}

TEST_CASE("fine structure: composed path equals the compact closed form") {
    const double composed = fine_structure_splitting(2, 1, kC, kD);
    const double compact = fine_structure_splitting_compact_2p(kC, kD);
    CHECK(composed == rel(compact, 1e-10));
    CHECK_THROWS_AS((void)fine_structure_splitting(2, 0, kC, kD),
                    std::invalid_argument);
}

TEST_CASE("fine structure: (3,1)/(2,1) ratio follows <1/r^3>") {
    const double r31 = hydrogen::radial_moment_quadrature(3, 1, -3, kD.a0);
    const double r21 = hydrogen::radial_moment_quadrature(2, 1, -3, kD.a0);
    const double ratio = fine_structure_splitting(3, 1, kC, kD) /
                         fine_structure_splitting(2, 1, kC, kD);
    CHECK(ratio == rel(r31 / r21, 1e-8));
}

TEST_CASE("experimental splitting reproduces the published doublet digits") {
    const double de =
        experimental_splitting(1215.668237310e-10, 1215.673644608e-10, kC);
    CHECK(de == rel(7.26816814178113e-24, 1e-9));
    CHECK(experimental_splitting(5e-7, 5e-7, kC) == 0.0);
    CHECK_THROWS_AS((void)experimental_splitting(6e-7, 5e-7, kC),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)experimental_splitting(-1e-7, 5e-7, kC),
                    std::invalid_argument);
}

TEST_CASE("spin-spin contact constant matches the frozen mollified oracle") {
    // oracle self-check against the frozen numbers (guards against drift)
    const auto fine = spin_spin_oracle::contact_kernel(0.0015);
    CHECK(fine.kernel_per_ss == rel(spin_spin_oracle::kFrozenEta0015, 1e-6));
    CHECK(fine.max_offdiagonal <= 1e-12);
    const auto coarse = spin_spin_oracle::contact_kernel(0.0030);
    CHECK(coarse.kernel_per_ss == rel(spin_spin_oracle::kFrozenEta0030, 1e-6));

    // closed-form route: E_SS = (q_e q_p mu0 / 4 pi m_e m_p) * W with both
    // charge signs carried; the kernel limit is W/<SS> -> -(8 pi/3)|psi(0)|^2
    // (-8/3 in a0 = 1 units)
    const double a = kD.a0;
    const double kernel_oracle = fine.kernel_per_ss / (a * a * a);  // rescale to SI
    const double prefactor = (kC.e_charge * (-kC.e_charge)) * kC.mu0 /
                             (4.0 * kPi * kC.m_e * kC.m_p);
    const double ss_triplet = 0.25 * kC.hbar * kC.hbar;
    const double oracle_energy = prefactor * kernel_oracle * ss_triplet;
    const double closed_energy = spin_spin_contact(1, 1, kC, kD);
    CHECK(closed_energy == rel(oracle_energy, 0.01));
}

TEST_CASE("spin-spin: triplet/singlet ratio and 1/n^3 scaling") {
    const double triplet = spin_spin_contact(1, 1, kC, kD);
    const double singlet = spin_spin_contact(1, 0, kC, kD);
    CHECK(triplet / singlet ==
          doctest::Approx(-1.0 / 3.0).epsilon(5e-16));  // exact spin algebra
    CHECK(triplet > 0.0);                    // triplet above singlet

    CHECK(spin_spin_contact(2, 1, kC, kD) == rel(triplet / 8.0, 1e-12));
    CHECK_THROWS_AS((void)spin_spin_contact(1, 2, kC, kD), std::invalid_argument);
    CHECK_THROWS_AS((void)spin_spin_contact(0, 1, kC, kD), std::invalid_argument);
}

TEST_CASE("Stark: dipole oracle, n = 2 shifts, parity zeros") {
    // <2s|z|2p0> = -3 a0, quadrature against the closed value
    const double z = hydrogen::dipole_z_element(2, 0, 1, 0, kD.a0);
    CHECK(z == rel(-3.0 * kD.a0, 1e-8));

    const double e_ext = 1.0e5;  // V/m
    const auto shifts = stark_energy(2, e_ext, kC, kD);
    REQUIRE(shifts.size() == 4);
    const double expected = 3.0 * std::abs(kC.e_charge) * kD.a0 * e_ext;
    CHECK(shifts[0] == rel(-expected, 1e-8));
    CHECK(shifts[1] == 0.0);
    CHECK(shifts[2] == 0.0);
    CHECK(shifts[3] == rel(expected, 1e-8));

    for (double s : stark_energy(2, 0.0, kC, kD)) CHECK(s == 0.0);
    // n = 1: no degenerate partner, the linear shift vanishes by parity
    for (double s : stark_energy(1, e_ext, kC, kD)) CHECK(s == 0.0);

    // n = 3 block: nine states, shifts pair up by sign symmetry
    const auto s3 = stark_energy(3, e_ext, kC, kD);
    REQUIRE(s3.size() == 9);
    for (std::size_t i = 0; i < s3.size(); ++i)
        CHECK(s3[i] == doctest::Approx(-s3[s3.size() - 1 - i]).epsilon(1e-10).scale(
                           expected));

    CHECK_THROWS_AS((void)stark_energy(4, e_ext, kC, kD), std::invalid_argument);
}

TEST_CASE("level breakdown: totals compose and reproduce the fine structure") {
    Environment env;
    const auto hi = level_breakdown(QuantumLevel::make(2, 1, 3), env, kC, kD);
    const auto lo = level_breakdown(QuantumLevel::make(2, 1, 1), env, kC, kD);
    // differencing ~5e-19 totals leaves ~1e-11 relative noise on the 7e-24 gap
    CHECK(hi.total - lo.total ==
          rel(fine_structure_splitting(2, 1, kC, kD), 1e-10));

    const auto ground = level_breakdown(QuantumLevel::make(1, 0, 1), env, kC, kD);
    CHECK(ground.total == hydrogen::bohr_level(1, kD));
    CHECK(ground.spin_orbit == 0.0);

    // uncoupled basis under B: orbital Zeeman splits (2,1,m_l=+-1) by 2 mu_B B
    Environment magnetic;
    magnetic.b_field = 1.0;
    magnetic.m_l = 1;
    magnetic.m_s_e = 0.5;
    const auto up = level_breakdown(QuantumLevel::make(2, 1, 3), magnetic, kC, kD);
    magnetic.m_l = -1;
    const auto dn = level_breakdown(QuantumLevel::make(2, 1, 3), magnetic, kC, kD);
    CHECK(up.total - dn.total ==
          rel(2.0 * zeeman_orbital(1, 1, 1.0, kC), 1e-10));

    // breakdown invariant: the total is the sum of its parts
    for (const auto& b : {hi, lo, ground, up, dn})
        CHECK(b.total == rel(b.bohr + b.spin_orbit + b.zeeman_orbital +
                             b.zeeman_spin + b.spin_spin + b.stark,
                         1e-15));
}

TEST_CASE("mass-scale toggle rebuilds the radial scale on the reduced mass") {
    const double a_paper = effective_a0(kC, kD, MassScale::paper);
    const double a_reduced = effective_a0(kC, kD, MassScale::reduced);
    CHECK(a_paper == kD.a0);
    CHECK(a_reduced / a_paper ==
          doctest::Approx(kC.m_e / kD.m_r).epsilon(1e-14));

    SpinOrbitOptions reduced;
    reduced.mass_scale = MassScale::reduced;
    const double split_paper = fine_structure_splitting(2, 1, kC, kD);
    const double split_reduced = fine_structure_splitting(2, 1, kC, kD, reduced);
    // <1/r^3> scales as the inverse cube of the radial scale
    CHECK(split_reduced / split_paper ==
          doctest::Approx(std::pow(kD.m_r / kC.m_e, 3)).epsilon(1e-12));
}
