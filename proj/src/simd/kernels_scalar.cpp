#include "emqm/simd/kernels.hpp"

namespace emqm::simd {

namespace scalar {

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double cnorm2(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void caxpby(cplx* y, cplx alpha, const cplx* x, cplx beta, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

void cadd_scaled(cplx* y, const cplx* x, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += c * x[i];
}

void cshift_pair_add(cplx* y, const cplx* lo, const cplx* hi, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += c * (lo[i] + hi[i]);
}

void cshift_pair_diff(cplx* y, const cplx* lo, const cplx* hi, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += c * (hi[i] - lo[i]);
}

void cabs2_scaled(double* out, const cplx* x, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = c * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
}

void cimag_prod_scaled(double* out, const cplx* a, const cplx* b, double c,
                       std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = c * (a[i].real() * b[i].imag() - a[i].imag() * b[i].real());
}

void cmul_real_add(cplx* y, const cplx* x, const double* v, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += (c * v[i]) * x[i];
}

void cadd_iaffine(cplx* y, const cplx* x, double c0, double dc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double coef = c0 + dc * static_cast<double>(i);
        y[i] += cplx(-coef * x[i].imag(), coef * x[i].real());
    }
}

double rdot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void raxpy(double* y, double c, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += c * x[i];
}

}  // namespace scalar

const KernelTable& scalar_table() {
    static const KernelTable table = {
        "scalar",
        scalar::cdot,
        scalar::cnorm2,
        scalar::caxpy,
        scalar::caxpby,
        scalar::cadd_scaled,
        scalar::cshift_pair_add,
        scalar::cshift_pair_diff,
        scalar::cabs2_scaled,
        scalar::cimag_prod_scaled,
        scalar::cmul_real_add,
        scalar::cadd_iaffine,
        scalar::rdot,
        scalar::raxpy,
    };
    return table;
}

}  // namespace emqm::simd
