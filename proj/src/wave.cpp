#include "emqm/wave.hpp"

#include <cmath>
#include <stdexcept>

#include "emqm/evolve.hpp"
#include "emqm/simd/kernels.hpp"

namespace emqm {

namespace {

const simd::KernelTable& K() { return simd::active(); }

// Iterates the contiguous blocks along `axis` so stencil updates can run on
// flat ranges: axis 0 -> one block per row, axis 1 -> one per z-slab,
// axis 2 -> a single block.
struct AxisBlocks {
    std::size_t stride;       // node distance between axis neighbours
    std::size_t block;        // nodes per contiguous block
    std::size_t count;        // number of blocks
    std::size_t block_step;   // flat distance between block starts
    int npts;                 // nodes along the axis
};

AxisBlocks axis_blocks(const GridSpec& g, int axis) {
    const std::size_t nx = static_cast<std::size_t>(g.npts[0]);
    const std::size_t ny = static_cast<std::size_t>(g.npts[1]);
    const std::size_t nz = static_cast<std::size_t>(g.npts[2]);
    if (axis == 0) return {1, nx, ny * nz, nx, g.npts[0]};
    if (axis == 1) return {nx, nx * ny, nz, nx * ny, g.npts[1]};
    return {nx * ny, nx * ny * nz, 1, 0, g.npts[2]};
}

}  // namespace

WaveField sample(const std::function<cplx(std::array<double, 3>)>& f,
                 const GridSpec& grid, double mass, double charge) {
    grid.validate();
    WaveField w;
    w.grid = grid;
    w.mass = mass;
    w.charge = charge;
    w.amp.resize(grid.size());
    for (int k = 0; k < grid.npts[2]; ++k)
        for (int j = 0; j < grid.npts[1]; ++j)
            for (int i = 0; i < grid.npts[0]; ++i) {
                const cplx v = f(grid.position(i, j, k));
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw std::invalid_argument("sample: non-finite value");
                w.amp[grid.index(i, j, k)] = v;
            }
    return w;
}

double norm_squared(const WaveField& psi) {
    return K().cnorm2(psi.amp.data(), psi.amp.size()) * psi.grid.cell_volume();
}

ScalarField charge_density(const WaveField& psi) {
    ScalarField rho;
    rho.grid = psi.grid;
    rho.val.resize(psi.amp.size());
    K().cabs2_scaled(rho.val.data(), psi.amp.data(), psi.charge, psi.amp.size());
    return rho;
}

std::vector<cplx> gradient_component(const GridSpec& g, const std::vector<cplx>& f,
                                     int axis, BoundaryRule rule) {
    std::vector<cplx> out(f.size(), cplx(0.0, 0.0));
    if (axis >= g.dim) return out;
    const AxisBlocks ab = axis_blocks(g, axis);
    const double h = g.spacing[axis];
    const double c = 0.5 / h;
    const std::size_t s = ab.stride;
    const std::size_t interior = ab.block - 2 * s;
    for (std::size_t b = 0; b < ab.count; ++b) {
        const std::size_t base = b * ab.block_step;
        cplx* o = out.data() + base;
        const cplx* x = f.data() + base;
        if (interior > 0) K().cshift_pair_diff(o + s, x, x + 2 * s, c, interior);
        // boundary planes (s nodes each at both ends of the block)
        for (std::size_t t = 0; t < s; ++t) {
            const std::size_t lo = t;
            const std::size_t hi = ab.block - s + t;
            if (rule == BoundaryRule::zero_exterior) {
                o[lo] = c * x[lo + s];
                o[hi] = -c * x[hi - s];
            } else {
                o[lo] = (-3.0 * x[lo] + 4.0 * x[lo + s] - x[lo + 2 * s]) * c;
                o[hi] = (3.0 * x[hi] - 4.0 * x[hi - s] + x[hi - 2 * s]) * c;
            }
        }
    }
    return out;
}

void add_laplacian(const GridSpec& g, const std::vector<cplx>& f,
                   std::vector<cplx>& out, double coef) {
    double diag = 0.0;
    for (int axis = 0; axis < g.dim; ++axis) {
        const AxisBlocks ab = axis_blocks(g, axis);
        const double c = coef / (g.spacing[axis] * g.spacing[axis]);
        diag += -2.0 * c;
        const std::size_t s = ab.stride;
        const std::size_t interior = ab.block - 2 * s;
        for (std::size_t b = 0; b < ab.count; ++b) {
            const std::size_t base = b * ab.block_step;
            cplx* o = out.data() + base;
            const cplx* x = f.data() + base;
            if (interior > 0) K().cshift_pair_add(o + s, x, x + 2 * s, c, interior);
            K().cadd_scaled(o, x + s, c, s);                              // low plane
            K().cadd_scaled(o + ab.block - s, x + ab.block - 2 * s, c, s);  // high
        }
    }
    K().cadd_scaled(out.data(), f.data(), diag, f.size());
}

void add_i_coord_mul(const GridSpec& g, const std::vector<cplx>& f,
                     std::vector<cplx>& out, int coord_axis, double coef_scale) {
    const std::size_t nx = static_cast<std::size_t>(g.npts[0]);
    const std::size_t rows = g.size() / nx;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t base = r * nx;
        const auto rc = g.coords(base);
        double c0, dc;
        if (coord_axis == 0) {
            c0 = coef_scale * g.origin[0];
            dc = coef_scale * g.spacing[0];
        } else {
            c0 = coef_scale *
                 (g.origin[coord_axis] + rc[coord_axis] * g.spacing[coord_axis]);
            dc = 0.0;
        }
        K().cadd_iaffine(out.data() + base, f.data() + base, c0, dc, nx);
    }
}

VectorField current_density(const WaveField& psi, double hbar) {
    VectorField j = VectorField::zeros(psi.grid);
    const double c = hbar * psi.charge / psi.mass;
    for (int axis = 0; axis < psi.grid.dim; ++axis) {
        const auto grad =
            gradient_component(psi.grid, psi.amp, axis, BoundaryRule::one_sided);
        K().cimag_prod_scaled(j.comp[axis].data(), psi.amp.data(), grad.data(), c,
                              psi.amp.size());
    }
    return j;
}

cplx inner_product(const WaveField& a, const WaveField& b) {
    if (!a.grid.matches(b.grid))
        throw std::invalid_argument("inner_product: grid mismatch");
    return K().cdot(a.amp.data(), b.amp.data(), a.amp.size()) * a.grid.cell_volume();
}

double field_norm(const WaveField& a) { return std::sqrt(norm_squared(a)); }

namespace {

std::vector<cplx> apply_observable(const WaveField& psi, const Observable& op,
                                   double hbar) {
    const GridSpec& g = psi.grid;
    std::vector<cplx> out(psi.amp.size(), cplx(0.0, 0.0));
    switch (op.kind) {
        case Observable::Kind::position: {
            // x_a psi = -i * (i x_a) psi
            add_i_coord_mul(g, psi.amp, out, op.axis, 1.0);
            for (auto& z : out) z = cplx(z.imag(), -z.real());
            break;
        }
        case Observable::Kind::momentum: {
            const auto grad =
                gradient_component(g, psi.amp, op.axis, BoundaryRule::zero_exterior);
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = cplx(0.0, -hbar) * grad[i];
            break;
        }
        case Observable::Kind::kinetic: {
            add_laplacian(g, psi.amp, out, 1.0);
            const double c = -hbar * hbar / (2.0 * psi.mass);
            for (auto& z : out) z *= c;
            break;
        }
        case Observable::Kind::angular_momentum: {
            // L_a = -i hbar (x_b d_c - x_c d_b), (a,b,c) cyclic
            const int b = (op.axis + 1) % 3;
            const int cc = (op.axis + 2) % 3;
            const auto gb = gradient_component(g, psi.amp, b, BoundaryRule::zero_exterior);
            const auto gc = gradient_component(g, psi.amp, cc, BoundaryRule::zero_exterior);
            add_i_coord_mul(g, gc, out, b, -hbar);
            add_i_coord_mul(g, gb, out, cc, hbar);
            break;
        }
        case Observable::Kind::multiply: {
            if (!op.fn) throw std::invalid_argument("multiply observable needs fn");
            for (int k = 0; k < g.npts[2]; ++k)
                for (int j = 0; j < g.npts[1]; ++j)
                    for (int i = 0; i < g.npts[0]; ++i) {
                        const std::size_t f = g.index(i, j, k);
                        out[f] = op.fn(g.position(i, j, k)) * psi.amp[f];
                    }
            break;
        }
    }
    return out;
}

}  // namespace

cplx integrated_value_raw(const WaveField& psi, const Observable& op, double hbar) {
    const auto opsi = apply_observable(psi, op, hbar);
    return K().cdot(psi.amp.data(), opsi.data(), opsi.size()) *
           psi.grid.cell_volume();
}

double integrated_value(const WaveField& psi, const Observable& op, double hbar) {
    const auto opsi = apply_observable(psi, op, hbar);
    const cplx v = K().cdot(psi.amp.data(), opsi.data(), opsi.size()) *
                   psi.grid.cell_volume();
    // Hermitian operator: the imaginary part may only be rounding noise,
    // judged against the Cauchy-Schwarz magnitude (the raw value itself can
    // legitimately be zero).
    const double cs_bound = std::sqrt(K().cnorm2(psi.amp.data(), psi.amp.size()) *
                                      K().cnorm2(opsi.data(), opsi.size())) *
                            psi.grid.cell_volume();
    if (std::abs(v.imag()) > 1e-10 * std::max(std::abs(v.real()), cs_bound))
        throw std::runtime_error(
            "integrated_value: imaginary part exceeds 1e-10 relative "
            "(check boundary decay)");
    return v.real();
}

WaveField apply_variation(const WaveField& psi, VariationKind kind,
                          const VariationParams& params) {
    WaveField mu;
    mu.grid = psi.grid;
    mu.mass = psi.mass;
    mu.charge = psi.charge;
    mu.amp.assign(psi.amp.size(), cplx(0.0, 0.0));
    const auto& d = params.direction;
    switch (kind) {
        case VariationKind::time: {
            if (!params.ham || !(params.hbar > 0.0))
                throw std::invalid_argument(
                    "time variation needs a Hamiltonian context");
            // d_t psi = H psi / (i hbar)
            mu.amp = apply_hamiltonian(psi, *params.ham);
            const cplx inv_ih = cplx(0.0, -1.0 / params.hbar);
            for (auto& z : mu.amp) z *= inv_ih;
            break;
        }
        case VariationKind::position: {
            for (int a = 0; a < 3; ++a)
                if (d[a] != 0.0) add_i_coord_mul(psi.grid, psi.amp, mu.amp, a, d[a]);
            break;
        }
        case VariationKind::displacement: {
            for (int a = 0; a < psi.grid.dim; ++a) {
                if (d[a] == 0.0) continue;
                const auto grad = gradient_component(psi.grid, psi.amp, a,
                                                     BoundaryRule::zero_exterior);
                simd::active().cadd_scaled(mu.amp.data(), grad.data(), d[a],
                                           grad.size());
            }
            break;
        }
        case VariationKind::rotation: {
            // Omega . (x cross grad psi)
            std::array<std::vector<cplx>, 3> grad;
            for (int a = 0; a < psi.grid.dim; ++a)
                grad[a] = gradient_component(psi.grid, psi.amp, a,
                                             BoundaryRule::zero_exterior);
            for (int a = 0; a < 3; ++a) {
                if (d[a] == 0.0) continue;
                const int b = (a + 1) % 3;
                const int c = (a + 2) % 3;
                // (x cross grad)_a = x_b d_c - x_c d_b; multiply by -i*i = 1 via
                // two imaginary-coordinate passes
                if (!grad[c].empty()) {
                    std::vector<cplx> tmp(mu.amp.size(), cplx(0.0, 0.0));
                    add_i_coord_mul(psi.grid, grad[c], tmp, b, d[a]);
                    for (std::size_t i = 0; i < tmp.size(); ++i)
                        mu.amp[i] += cplx(tmp[i].imag(), -tmp[i].real());
                }
                if (!grad[b].empty()) {
                    std::vector<cplx> tmp(mu.amp.size(), cplx(0.0, 0.0));
                    add_i_coord_mul(psi.grid, grad[b], tmp, c, d[a]);
                    for (std::size_t i = 0; i < tmp.size(); ++i)
                        mu.amp[i] -= cplx(tmp[i].imag(), -tmp[i].real());
                }
            }
            break;
        }
    }
    return mu;
}

double continuity_residual(const WaveField& before, const WaveField& after, double dt,
                           double hbar) {
    if (!before.grid.matches(after.grid))
        throw std::invalid_argument("continuity_residual: grid mismatch");
    const GridSpec& g = before.grid;
    const ScalarField rho0 = charge_density(before);
    const ScalarField rho1 = charge_density(after);

    WaveField mid = before;
    for (std::size_t i = 0; i < mid.amp.size(); ++i)
        mid.amp[i] = 0.5 * (before.amp[i] + after.amp[i]);
    const VectorField j = current_density(mid, hbar);

    // divergence of j, central differences, interior nodes only
    double worst = 0.0;
    for (int k = (g.dim > 2 ? 1 : 0); k < g.npts[2] - (g.dim > 2 ? 1 : 0); ++k)
        for (int jj = (g.dim > 1 ? 1 : 0); jj < g.npts[1] - (g.dim > 1 ? 1 : 0); ++jj)
            for (int i = 1; i < g.npts[0] - 1; ++i) {
                const std::size_t f = g.index(i, jj, k);
                double div = 0.0;
                div += (j.comp[0][g.index(i + 1, jj, k)] -
                        j.comp[0][g.index(i - 1, jj, k)]) /
                       (2.0 * g.spacing[0]);
                if (g.dim > 1)
                    div += (j.comp[1][g.index(i, jj + 1, k)] -
                            j.comp[1][g.index(i, jj - 1, k)]) /
                           (2.0 * g.spacing[1]);
                if (g.dim > 2)
                    div += (j.comp[2][g.index(i, jj, k + 1)] -
                            j.comp[2][g.index(i, jj, k - 1)]) /
                           (2.0 * g.spacing[2]);
                const double r = std::abs((rho1.val[f] - rho0.val[f]) / dt + div);
                worst = std::max(worst, r);
            }
    return worst;
}

}  // namespace emqm
