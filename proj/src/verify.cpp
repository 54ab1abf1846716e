#include "emqm/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "emqm/simd/kernels.hpp"

namespace emqm::verify {

namespace {

const simd::KernelTable& K() { return simd::active(); }

std::array<double, 3> integrate_vector(const VectorField& f) {
    const double vol = f.grid.cell_volume();
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a) {
        double s = 0.0;
        for (double v : f.comp[a]) s += v;
        out[a] = s * vol;
    }
    return out;
}

// Int rho E + j x B over the grid, plus a characteristic magnitude for
// normalization (sum of |rho E| + |j x B| contributions).
struct ForceQuadrature {
    std::array<double, 3> force{0.0, 0.0, 0.0};
    std::array<double, 3> torque{0.0, 0.0, 0.0};
    double force_scale = 0.0;
    double torque_scale = 0.0;
};

ForceQuadrature lorentz_quadrature(const WaveField& psi, const FieldBundle& bundle,
                                   double hbar) {
    const GridSpec& g = psi.grid;
    const ScalarField rho = charge_density(psi);
    const VectorField j = current_density(psi, hbar);
    const double vol = g.cell_volume();
    ForceQuadrature out;
    for (int k = 0; k < g.npts[2]; ++k)
        for (int jj = 0; jj < g.npts[1]; ++jj)
            for (int i = 0; i < g.npts[0]; ++i) {
                const std::size_t f = g.index(i, jj, k);
                const auto p = g.position(i, jj, k);
                std::array<double, 3> jf{j.comp[0][f], j.comp[1][f], j.comp[2][f]};
                std::array<double, 3> bf{bundle.B.comp[0][f], bundle.B.comp[1][f],
                                         bundle.B.comp[2][f]};
                std::array<double, 3> densf;
                double mag = 0.0;
                for (int a = 0; a < 3; ++a) {
                    const int b = (a + 1) % 3;
                    const int c = (a + 2) % 3;
                    const double jxb = jf[b] * bf[c] - jf[c] * bf[b];
                    const double re = rho.val[f] * bundle.E.comp[a][f];
                    densf[a] = re + jxb;
                    mag += std::abs(re) + std::abs(jxb);
                }
                double rad = 0.0;
                for (int a = 0; a < 3; ++a) {
                    const int b = (a + 1) % 3;
                    const int c = (a + 2) % 3;
                    out.force[a] += densf[a] * vol;
                    out.torque[a] += (p[b] * densf[c] - p[c] * densf[b]) * vol;
                    rad += p[a] * p[a];
                }
                out.force_scale += mag * vol;
                out.torque_scale += std::sqrt(rad) * mag * vol;
            }
    return out;
}

std::array<double, 3> angular_momentum_of_current(const WaveField& psi, double hbar) {
    const GridSpec& g = psi.grid;
    const VectorField j = current_density(psi, hbar);
    const double vol = g.cell_volume();
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (int k = 0; k < g.npts[2]; ++k)
        for (int jj = 0; jj < g.npts[1]; ++jj)
            for (int i = 0; i < g.npts[0]; ++i) {
                const std::size_t f = g.index(i, jj, k);
                const auto p = g.position(i, jj, k);
                const std::array<double, 3> jf{j.comp[0][f], j.comp[1][f],
                                               j.comp[2][f]};
                for (int a = 0; a < 3; ++a) {
                    const int b = (a + 1) % 3;
                    const int c = (a + 2) % 3;
                    out[a] += (p[b] * jf[c] - p[c] * jf[b]) * vol;
                }
            }
    return out;
}

void require_snapshots(const EvolveResult& traj, std::size_t n) {
    if (traj.snapshots.size() < n)
        throw std::invalid_argument("trajectory needs at least " + std::to_string(n) +
                                    " snapshots");
}

}  // namespace

VerificationReport check_energy_conservation(const EvolveResult& traj,
                                             const Hamiltonian& h, double tolerance) {
    require_snapshots(traj, 3);
    VerificationReport rep;
    rep.check = "energy_conservation";
    rep.tolerance = tolerance;
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        const WaveField& psi = traj.snapshots[s];
        if (!boundary_decay_ok(psi))
            throw std::runtime_error("energy check: boundary decay violated");
        double e = integrated_value(psi, Observable::kinetic(), h.hbar);
        if (h.potential) {
            const ScalarField rho = charge_density(psi);
            e += K().rdot(rho.val.data(), h.potential->val.data(), rho.val.size()) *
                 psi.grid.cell_volume();
        }
        for (int a = 0; a < 3; ++a)
            if (h.b_uniform[a] != 0.0)
                e += -(psi.charge / (2.0 * psi.mass)) * h.b_uniform[a] *
                     integrated_value(psi, Observable::angular_momentum(a), h.hbar);
        rep.lhs.push_back(e);
    }
    const double e0 = rep.lhs.front();
    double drift = 0.0;
    for (double e : rep.lhs) drift = std::max(drift, std::abs(e - e0));
    rep.residual = drift / std::abs(e0);
    rep.rhs = {e0};
    rep.finalize();
    return rep;
}

VerificationReport check_position_velocity(const EvolveResult& traj, double hbar,
                                           double tolerance) {
    require_snapshots(traj, 3);
    VerificationReport rep;
    rep.check = "position_velocity";
    rep.tolerance = tolerance;
    const std::size_t m = traj.snapshots.size();
    std::vector<std::array<double, 3>> xs(m), js(m);
    const double q = traj.snapshots[0].charge;
    double scale = 0.0;  // characteristic internal speed |j|/|q| per unit norm
    for (std::size_t s = 0; s < m; ++s) {
        const WaveField& psi = traj.snapshots[s];
        const double nrm = norm_squared(psi);
        for (int a = 0; a < psi.grid.dim; ++a)
            xs[s][a] = integrated_value(psi, Observable::position(a), hbar) / nrm;
        const VectorField jf = current_density(psi, hbar);
        js[s] = integrate_vector(jf);
        for (auto& v : js[s]) v /= nrm;
        double mag = 0.0;
        for (int a = 0; a < 3; ++a)
            for (double v : jf.comp[a]) mag += std::abs(v);
        scale = std::max(scale, mag * psi.grid.cell_volume() / (std::abs(q) * nrm));
    }
    if (scale == 0.0) scale = 1.0;

    double worst = 0.0;
    for (std::size_t s = 0; s + 1 < m; ++s) {
        const double dt = traj.times[s + 1] - traj.times[s];
        for (int a = 0; a < traj.snapshots[0].grid.dim; ++a) {
            const double lhs = (xs[s + 1][a] - xs[s][a]) / dt;
            const double rhs = 0.5 * (js[s][a] + js[s + 1][a]) / q;
            rep.lhs.push_back(lhs);
            rep.rhs.push_back(rhs);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    rep.residual = worst / scale;
    rep.finalize();
    return rep;
}

VerificationReport check_momentum_lorentz(const EvolveResult& traj,
                                          const FieldBundle& bundle, double hbar,
                                          double tolerance, bool flip_rhs_sign) {
    require_snapshots(traj, 3);
    VerificationReport rep;
    rep.check = "momentum_lorentz";
    rep.tolerance = tolerance;
    const std::size_t m = traj.snapshots.size();
    const double q = traj.snapshots[0].charge;
    const double mass = traj.snapshots[0].mass;
    std::vector<std::array<double, 3>> js(m), forces(m);
    double scale = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        js[s] = integrate_vector(current_density(traj.snapshots[s], hbar));
        const ForceQuadrature fq = lorentz_quadrature(traj.snapshots[s], bundle, hbar);
        forces[s] = fq.force;
        scale = std::max(scale, fq.force_scale);
    }
    if (scale == 0.0) scale = 1.0;
    const double sgn = flip_rhs_sign ? -1.0 : 1.0;
    double worst = 0.0;
    for (std::size_t s = 0; s + 1 < m; ++s) {
        const double dt = traj.times[s + 1] - traj.times[s];
        for (int a = 0; a < traj.snapshots[0].grid.dim; ++a) {
            const double lhs = (mass / q) * (js[s + 1][a] - js[s][a]) / dt;
            const double rhs = sgn * 0.5 * (forces[s][a] + forces[s + 1][a]);
            rep.lhs.push_back(lhs);
            rep.rhs.push_back(rhs);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    rep.residual = worst / scale;
    rep.finalize();
    return rep;
}

VerificationReport check_angular_momentum(const EvolveResult& traj,
                                          const FieldBundle& bundle, double hbar,
                                          double tolerance) {
    require_snapshots(traj, 3);
    VerificationReport rep;
    rep.check = "angular_momentum";
    rep.tolerance = tolerance;
    const std::size_t m = traj.snapshots.size();
    const double q = traj.snapshots[0].charge;
    const double mass = traj.snapshots[0].mass;
    std::vector<std::array<double, 3>> ls(m), torques(m);
    double scale = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        ls[s] = angular_momentum_of_current(traj.snapshots[s], hbar);
        const ForceQuadrature fq = lorentz_quadrature(traj.snapshots[s], bundle, hbar);
        torques[s] = fq.torque;
        scale = std::max(scale, fq.torque_scale);
    }
    if (scale == 0.0) scale = 1.0;
    double worst = 0.0;
    for (std::size_t s = 0; s + 1 < m; ++s) {
        const double dt = traj.times[s + 1] - traj.times[s];
        for (int a = 0; a < 3; ++a) {
            const double lhs = (mass / q) * (ls[s + 1][a] - ls[s][a]) / dt;
            const double rhs = 0.5 * (torques[s][a] + torques[s + 1][a]);
            rep.lhs.push_back(lhs);
            rep.rhs.push_back(rhs);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    rep.residual = worst / scale;
    rep.finalize();
    return rep;
}

double antihermitian_residual(VariationKind kind, const WaveField& a,
                              const WaveField& b, std::array<double, 3> direction) {
    if (kind == VariationKind::time)
        throw std::invalid_argument("antihermitian_residual: use spatial kinds");
    if (!boundary_decay_ok(a) || !boundary_decay_ok(b))
        throw std::runtime_error("antihermitian_residual: boundary decay violated");
    VariationParams params;
    params.direction = direction;
    const WaveField oa = apply_variation(a, kind, params);
    const WaveField ob = apply_variation(b, kind, params);
    const cplx lhs = inner_product(a, ob) + inner_product(oa, b);
    const double na = field_norm(a);
    const double nb = field_norm(b);
    const double scale =
        std::max({field_norm(oa) / na, field_norm(ob) / nb, 1e-300});
    return std::abs(lhs) / (na * nb * scale);
}

double stationary_residual(const WaveField& psi, double omega, const Hamiltonian& h) {
    WaveField r = psi;
    r.amp = apply_hamiltonian(psi, h);
    const double hnorm = field_norm(r);
    const double e = h.hbar * omega;
    for (std::size_t i = 0; i < r.amp.size(); ++i) r.amp[i] = e * psi.amp[i] - r.amp[i];
    const double pnorm = field_norm(psi);
    const double scale = std::max(std::abs(e), hnorm / pnorm);
    if (scale == 0.0) return 0.0;
    return field_norm(r) / (pnorm * scale);
}

double hamiltonian_form_residual(const WaveField& psi, VariationKind kind,
                                 std::array<double, 3> direction, const Hamiltonian& h) {
    const GridSpec& g = psi.grid;
    VariationParams params;
    params.direction = direction;
    params.ham = &h;
    params.hbar = h.hbar;
    const WaveField mu = apply_variation(psi, kind, params);

    WaveField hpsi = psi;
    hpsi.amp = apply_hamiltonian(psi, h);
    WaveField tpsi = psi;
    tpsi.amp.assign(psi.amp.size(), cplx(0.0, 0.0));
    add_laplacian(g, psi.amp, tpsi.amp, -h.hbar * h.hbar / (2.0 * psi.mass));

    // <mu*(i hbar d_t psi)> + c.c. with i hbar d_t psi = H psi
    const double term1 = 2.0 * inner_product(mu, hpsi).real();
    // (hbar^2/2m) <mu* Lap psi> + c.c. = -<mu* T psi> - c.c.
    const double term2 = -2.0 * inner_product(mu, tpsi).real();

    double term3 = 0.0;
    const ScalarField rho = charge_density(psi);
    const VectorField jcur = current_density(psi, h.hbar);
    VectorField efield = VectorField::zeros(g);
    if (h.potential) {
        efield = gradient(*h.potential);
        for (auto& compv : efield.comp)
            for (auto& v : compv) v = -v;
    }
    const double vol = g.cell_volume();
    switch (kind) {
        case VariationKind::position:
            term3 = 0.0;
            break;
        case VariationKind::time: {
            // d/dt of the EM coupling, via the synthesized psi-dot
            WaveField empsi = psi;
            empsi.amp.resize(psi.amp.size());
            for (std::size_t i = 0; i < psi.amp.size(); ++i)
                empsi.amp[i] = hpsi.amp[i] - tpsi.amp[i];
            WaveField psidot = psi;
            psidot.amp.resize(psi.amp.size());
            const cplx inv_ih(0.0, -1.0 / h.hbar);
            for (std::size_t i = 0; i < psi.amp.size(); ++i)
                psidot.amp[i] = inv_ih * hpsi.amp[i];
            term3 = 2.0 * inner_product(psidot, empsi).real();
            break;
        }
        case VariationKind::displacement:
        case VariationKind::rotation: {
            for (int k = 0; k < g.npts[2]; ++k)
                for (int jj = 0; jj < g.npts[1]; ++jj)
                    for (int i = 0; i < g.npts[0]; ++i) {
                        const std::size_t f = g.index(i, jj, k);
                        const auto p = g.position(i, jj, k);
                        std::array<double, 3> dens;
                        const std::array<double, 3> jf{jcur.comp[0][f],
                                                       jcur.comp[1][f],
                                                       jcur.comp[2][f]};
                        for (int a = 0; a < 3; ++a) {
                            const int b = (a + 1) % 3;
                            const int c = (a + 2) % 3;
                            const double jxb = jf[b] * h.b_uniform[c] -
                                               jf[c] * h.b_uniform[b];
                            dens[a] = rho.val[f] * efield.comp[a][f] - jxb;
                        }
                        if (kind == VariationKind::displacement) {
                            for (int a = 0; a < 3; ++a)
                                term3 += direction[a] * dens[a] * vol;
                        } else {
                            for (int a = 0; a < 3; ++a) {
                                const int b = (a + 1) % 3;
                                const int c = (a + 2) % 3;
                                term3 += direction[a] *
                                         (p[b] * dens[c] - p[c] * dens[b]) * vol;
                            }
                        }
                    }
            break;
        }
    }

    const double s0 = 2.0 * field_norm(mu) * field_norm(hpsi);
    const double scale = std::max(
        {std::abs(term1), std::abs(term2), std::abs(term3), 1e-6 * s0, 1e-300});
    return std::abs(term1 + term2 - term3) / scale;
}

WaveField random_decayed_field(const GridSpec& g, std::uint64_t seed, double mass,
                               double charge) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double l_min = g.extent(0);
    for (int a = 1; a < g.dim; ++a) l_min = std::min(l_min, g.extent(a));
    const double sigma = l_min / 13.0;

    std::array<double, 3> center{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim; ++a)
        center[a] = g.origin[a] + 0.5 * (g.npts[a] - 1) * g.spacing[a] +
                    0.02 * l_min * uni(rng);
    std::array<double, 3> kvec{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim; ++a) kvec[a] = 2.5 * uni(rng) / sigma;
    std::array<cplx, 3> lin;
    std::array<cplx, 3> quad;
    for (int a = 0; a < 3; ++a) {
        lin[a] = cplx(uni(rng), uni(rng));
        quad[a] = cplx(0.5 * uni(rng), 0.5 * uni(rng));
    }

    return sample(
        [&](std::array<double, 3> p) {
            double r2 = 0.0, phase = 0.0;
            cplx poly(1.0, 0.0);
            for (int a = 0; a < g.dim; ++a) {
                const double d = (p[a] - center[a]) / sigma;
                r2 += d * d;
                phase += kvec[a] * (p[a] - center[a]);
                poly += lin[a] * d + quad[a] * d * d;
            }
            return poly * std::exp(-0.5 * r2) * std::polar(1.0, phase);
        },
        g, mass, charge);
}

}  // namespace emqm::verify
