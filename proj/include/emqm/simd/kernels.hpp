#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace emqm::simd {

using cplx = std::complex<double>;

/// Flat-array arithmetic kernels behind the grid operations. Every entry has
/// a scalar reference implementation and (on x86-64 with AVX2) a vectorized
/// variant; the active table is chosen once at runtime. The two variants are
/// equivalence-tested against each other.
struct KernelTable {
    const char* name;

    // sum_i conj(a_i) * b_i
    cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
    // sum_i |a_i|^2
    double (*cnorm2)(const cplx* a, std::size_t n);
    // y_i += alpha * x_i   (complex alpha)
    void (*caxpy)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
    // y_i = alpha * x_i + beta * y_i
    void (*caxpby)(cplx* y, cplx alpha, const cplx* x, cplx beta, std::size_t n);
    // y_i += c * x_i   (real c)
    void (*cadd_scaled)(cplx* y, const cplx* x, double c, std::size_t n);
    // y_i += c * (lo_i + hi_i)   -- stencil neighbour pair
    void (*cshift_pair_add)(cplx* y, const cplx* lo, const cplx* hi, double c,
                            std::size_t n);
    // y_i += c * (hi_i - lo_i)   -- central difference
    void (*cshift_pair_diff)(cplx* y, const cplx* lo, const cplx* hi, double c,
                             std::size_t n);
    // out_i = c * |x_i|^2
    void (*cabs2_scaled)(double* out, const cplx* x, double c, std::size_t n);
    // out_i = c * Im(conj(a_i) * b_i)
    void (*cimag_prod_scaled)(double* out, const cplx* a, const cplx* b, double c,
                              std::size_t n);
    // y_i += c * v_i * x_i   (real field v times complex field x)
    void (*cmul_real_add)(cplx* y, const cplx* x, const double* v, double c,
                          std::size_t n);
    // y_i += i * (c0 + dc*i) * x_i   -- imaginary affine coefficient
    void (*cadd_iaffine)(cplx* y, const cplx* x, double c0, double dc, std::size_t n);
    // sum_i a_i * b_i   (real)
    double (*rdot)(const double* a, const double* b, std::size_t n);
    // y_i += c * x_i   (real)
    void (*raxpy)(double* y, double c, const double* x, std::size_t n);
};

/// Runtime-selected kernel table (AVX2 when the CPU supports it).
const KernelTable& active();

/// Scalar reference table, always available.
const KernelTable& scalar_table();

/// Force a backend by name ("scalar" or "avx2"). Returns false if the
/// requested backend is unavailable on this machine.
bool force_backend(std::string_view name);

std::string_view active_name();
bool avx2_available();

}  // namespace emqm::simd
