#include "emqm/evolve.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "emqm/simd/kernels.hpp"
#include "emqm/wave.hpp"

namespace emqm {

namespace {

const simd::KernelTable& K() { return simd::active(); }

bool any_b(const Hamiltonian& h) {
    return h.b_uniform[0] != 0.0 || h.b_uniform[1] != 0.0 || h.b_uniform[2] != 0.0;
}

}  // namespace

std::vector<cplx> apply_hamiltonian(const WaveField& psi, const Hamiltonian& h) {
    if (!(h.hbar > 0.0)) throw std::invalid_argument("Hamiltonian: hbar not set");
    const GridSpec& g = psi.grid;
    std::vector<cplx> out(psi.amp.size(), cplx(0.0, 0.0));
    add_laplacian(g, psi.amp, out, -h.hbar * h.hbar / (2.0 * psi.mass));
    if (h.potential) {
        if (!h.potential->grid.matches(g))
            throw std::invalid_argument("apply_hamiltonian: potential grid mismatch");
        K().cmul_real_add(out.data(), psi.amp.data(), h.potential->val.data(),
                          psi.charge, psi.amp.size());
    }
    if (any_b(h)) {
        // (i hbar q / 2m) B . (x cross grad)
        const double scale = h.hbar * psi.charge / (2.0 * psi.mass);
        std::array<std::vector<cplx>, 3> grad;
        for (int a = 0; a < g.dim; ++a)
            grad[a] = gradient_component(g, psi.amp, a, BoundaryRule::zero_exterior);
        for (int a = 0; a < 3; ++a) {
            const double ba = h.b_uniform[a];
            if (ba == 0.0) continue;
            const int b = (a + 1) % 3;
            const int c = (a + 2) % 3;
            if (!grad[c].empty()) add_i_coord_mul(g, grad[c], out, b, scale * ba);
            if (!grad[b].empty()) add_i_coord_mul(g, grad[b], out, c, -scale * ba);
        }
    }
    return out;
}

EvolveResult evolve_free(const WaveField& psi0, double dt, int steps,
                         const Hamiltonian& h, const EvolveOptions& opt) {
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_free: dt must be positive");
    const GridSpec& g = psi0.grid;
    double h_min = g.spacing[0];
    for (int a = 1; a < g.dim; ++a) h_min = std::min(h_min, g.spacing[a]);
    if (dt > h_min * h_min * psi0.mass / h.hbar)
        std::fprintf(stderr,
                     "evolve_free: dt=%g exceeds h^2 m / hbar = %g; accuracy may "
                     "suffer\n",
                     dt, h_min * h_min * psi0.mass / h.hbar);

    const double alpha = dt / (2.0 * h.hbar);
    const std::size_t n = psi0.amp.size();

    EvolveResult res;
    res.dt = dt;
    res.snapshots.push_back(psi0);
    res.times.push_back(0.0);

    WaveField psi = psi0;
    std::vector<cplx> h1, h2, rhs(n), x(n), r(n), p(n), mp(n), hx(n);

    auto apply_normal = [&](const std::vector<cplx>& v, std::vector<cplx>& out) {
        // out = v + alpha^2 H(H v)
        WaveField tmp = psi;  // reuse grid/mass/charge metadata
        tmp.amp = v;
        hx = apply_hamiltonian(tmp, h);
        tmp.amp = hx;
        out = apply_hamiltonian(tmp, h);
        const double a2 = alpha * alpha;
        for (std::size_t i = 0; i < n; ++i) out[i] = v[i] + a2 * out[i];
    };

    double norm_prev = K().cnorm2(psi.amp.data(), n);

    for (int step = 0; step < steps; ++step) {
        h1 = apply_hamiltonian(psi, h);
        WaveField tmp = psi;
        tmp.amp = h1;
        h2 = apply_hamiltonian(tmp, h);
        // rhs = (1 - i alpha H)^2 psi = psi - 2 i alpha H psi - alpha^2 H^2 psi
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] = psi.amp[i] - cplx(0.0, 2.0 * alpha) * h1[i] -
                     (alpha * alpha) * h2[i];

        x = psi.amp;
        apply_normal(x, mp);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - mp[i];
        p = r;
        double rr = K().cnorm2(r.data(), n);
        const double bnorm = std::sqrt(K().cnorm2(rhs.data(), n));
        const double stop = opt.cg_tol * bnorm;
        int it = 0;
        while (std::sqrt(rr) > stop) {
            if (it++ >= opt.cg_max_iter)
                throw std::runtime_error("evolve_free: CG failed to converge");
            apply_normal(p, mp);
            const double pmp = K().cdot(p.data(), mp.data(), n).real();
            const double a = rr / pmp;
            K().caxpy(x.data(), cplx(a, 0.0), p.data(), n);
            K().caxpy(r.data(), cplx(-a, 0.0), mp.data(), n);
            const double rr_new = K().cnorm2(r.data(), n);
            K().caxpby(p.data(), cplx(1.0, 0.0), r.data(), cplx(rr_new / rr, 0.0), n);
            rr = rr_new;
        }
        res.max_cg_iterations = std::max(res.max_cg_iterations, it);

        psi.amp = x;
        const double norm_now = K().cnorm2(psi.amp.data(), n);
        if (!std::isfinite(norm_now))
            throw std::runtime_error("evolve_free: non-finite amplitudes");
        res.max_norm_drift = std::max(
            res.max_norm_drift, std::abs(norm_now - norm_prev) / norm_prev);
        norm_prev = norm_now;

        if ((step + 1) % opt.snapshot_stride == 0 || step + 1 == steps) {
            res.snapshots.push_back(psi);
            res.times.push_back((step + 1) * dt);
        }
    }
    return res;
}

}  // namespace emqm
