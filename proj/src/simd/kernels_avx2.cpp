// AVX2 variants of the flat-array kernels. Compiled with -mavx2 -mfma and
// reached only through the runtime dispatch in kernels_dispatch.cpp.

#include "emqm/simd/kernels.hpp"

#ifdef __AVX2__

#include <immintrin.h>

namespace emqm::simd {

namespace avx2 {

namespace {

inline const double* as_doubles(const cplx* p) {
    return reinterpret_cast<const double*>(p);
}
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

// sign mask that negates elements 0 and 2 of a __m256d
inline __m256d neg_even_mask() {
    return _mm256_castsi256_pd(_mm256_setr_epi64x(
        static_cast<long long>(0x8000000000000000ULL), 0,
        static_cast<long long>(0x8000000000000000ULL), 0));
}

// [re0 im0 re1 im1] -> [-im0 re0 -im1 re1]  (multiplication by i)
inline __m256d rot90(__m256d v) {
    return _mm256_xor_pd(_mm256_permute_pd(v, 0x5), neg_even_mask());
}

}  // namespace

double rdot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4),
                               acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    __m256d acc = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void raxpy(double* y, double c, const double* x, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vc, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += c * x[i];
}

double cnorm2(const cplx* a, std::size_t n) {
    const double* d = as_doubles(a);
    return rdot(d, d, 2 * n);
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
    const double* da = as_doubles(a);
    const double* db = as_doubles(b);
    const __m256d signs = neg_even_mask();
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= 2 * n; i += 4) {
        const __m256d va = _mm256_loadu_pd(da + i);
        const __m256d vb = _mm256_loadu_pd(db + i);
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        const __m256d va_sw = _mm256_xor_pd(_mm256_permute_pd(va, 0x5), signs);
        acc_im = _mm256_fmadd_pd(va_sw, vb, acc_im);
    }
    alignas(32) double lr[4], li[4];
    _mm256_store_pd(lr, acc_re);
    _mm256_store_pd(li, acc_im);
    double re = lr[0] + lr[1] + lr[2] + lr[3];
    double im = li[0] + li[1] + li[2] + li[3];
    for (std::size_t k = i / 2; k < n; ++k) {
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    double* dy = as_doubles(y);
    const double* dx = as_doubles(x);
    const __m256d var = _mm256_set1_pd(alpha.real());
    const __m256d vai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 4 <= 2 * n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(dx + i);
        __m256d vy = _mm256_loadu_pd(dy + i);
        vy = _mm256_fmadd_pd(var, vx, vy);
        vy = _mm256_fmadd_pd(vai, rot90(vx), vy);
        _mm256_storeu_pd(dy + i, vy);
    }
    for (std::size_t k = i / 2; k < n; ++k) y[k] += alpha * x[k];
}

void caxpby(cplx* y, cplx alpha, const cplx* x, cplx beta, std::size_t n) {
    double* dy = as_doubles(y);
    const double* dx = as_doubles(x);
    const __m256d var = _mm256_set1_pd(alpha.real());
    const __m256d vai = _mm256_set1_pd(alpha.imag());
    const __m256d vbr = _mm256_set1_pd(beta.real());
    const __m256d vbi = _mm256_set1_pd(beta.imag());
    std::size_t i = 0;
    for (; i + 4 <= 2 * n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(dx + i);
        const __m256d vy = _mm256_loadu_pd(dy + i);
        __m256d t = _mm256_mul_pd(var, vx);
        t = _mm256_fmadd_pd(vai, rot90(vx), t);
        t = _mm256_fmadd_pd(vbr, vy, t);
        t = _mm256_fmadd_pd(vbi, rot90(vy), t);
        _mm256_storeu_pd(dy + i, t);
    }
    for (std::size_t k = i / 2; k < n; ++k) y[k] = alpha * x[k] + beta * y[k];
}

void cadd_scaled(cplx* y, const cplx* x, double c, std::size_t n) {
    raxpy(as_doubles(y), c, as_doubles(x), 2 * n);
}

void cshift_pair_add(cplx* y, const cplx* lo, const cplx* hi, double c, std::size_t n) {
    double* dy = as_doubles(y);
    const double* dl = as_doubles(lo);
    const double* dh = as_doubles(hi);
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= 2 * n; i += 4) {
        const __m256d sum =
            _mm256_add_pd(_mm256_loadu_pd(dl + i), _mm256_loadu_pd(dh + i));
        _mm256_storeu_pd(dy + i, _mm256_fmadd_pd(vc, sum, _mm256_loadu_pd(dy + i)));
    }
    for (std::size_t k = i / 2; k < n; ++k) y[k] += c * (lo[k] + hi[k]);
}

void cshift_pair_diff(cplx* y, const cplx* lo, const cplx* hi, double c, std::size_t n) {
    double* dy = as_doubles(y);
    const double* dl = as_doubles(lo);
    const double* dh = as_doubles(hi);
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= 2 * n; i += 4) {
        const __m256d diff =
            _mm256_sub_pd(_mm256_loadu_pd(dh + i), _mm256_loadu_pd(dl + i));
        _mm256_storeu_pd(dy + i, _mm256_fmadd_pd(vc, diff, _mm256_loadu_pd(dy + i)));
    }
    for (std::size_t k = i / 2; k < n; ++k) y[k] += c * (hi[k] - lo[k]);
}

void cabs2_scaled(double* out, const cplx* x, double c, std::size_t n) {
    const double* dx = as_doubles(x);
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d v0 = _mm256_loadu_pd(dx + 2 * k);
        const __m256d v1 = _mm256_loadu_pd(dx + 2 * k + 4);
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        // hadd interleaves blocks: [x0 x2 x1 x3] -> reorder to [x0 x1 x2 x3]
        const __m256d r = _mm256_permute4x64_pd(h, 0xD8);
        _mm256_storeu_pd(out + k, _mm256_mul_pd(vc, r));
    }
    for (; k < n; ++k)
        out[k] = c * (x[k].real() * x[k].real() + x[k].imag() * x[k].imag());
}

void cimag_prod_scaled(double* out, const cplx* a, const cplx* b, double c,
                       std::size_t n) {
    const double* da = as_doubles(a);
    const double* db = as_doubles(b);
    const __m256d signs = neg_even_mask();
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d a0 = _mm256_loadu_pd(da + 2 * k);
        const __m256d b0 = _mm256_loadu_pd(db + 2 * k);
        const __m256d a1 = _mm256_loadu_pd(da + 2 * k + 4);
        const __m256d b1 = _mm256_loadu_pd(db + 2 * k + 4);
        const __m256d t0 =
            _mm256_mul_pd(_mm256_xor_pd(_mm256_permute_pd(a0, 0x5), signs), b0);
        const __m256d t1 =
            _mm256_mul_pd(_mm256_xor_pd(_mm256_permute_pd(a1, 0x5), signs), b1);
        const __m256d r = _mm256_permute4x64_pd(_mm256_hadd_pd(t0, t1), 0xD8);
        _mm256_storeu_pd(out + k, _mm256_mul_pd(vc, r));
    }
    for (; k < n; ++k)
        out[k] = c * (a[k].real() * b[k].imag() - a[k].imag() * b[k].real());
}

void cmul_real_add(cplx* y, const cplx* x, const double* v, double c, std::size_t n) {
    double* dy = as_doubles(y);
    const double* dx = as_doubles(x);
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m128d v2 = _mm_loadu_pd(v + k);
        const __m256d vv =
            _mm256_permute4x64_pd(_mm256_castpd128_pd256(v2), 0x50);  // [v0 v0 v1 v1]
        const __m256d coef = _mm256_mul_pd(vc, vv);
        const __m256d vx = _mm256_loadu_pd(dx + 2 * k);
        _mm256_storeu_pd(dy + 2 * k,
                         _mm256_fmadd_pd(coef, vx, _mm256_loadu_pd(dy + 2 * k)));
    }
    for (; k < n; ++k) y[k] += (c * v[k]) * x[k];
}

void cadd_iaffine(cplx* y, const cplx* x, double c0, double dc, std::size_t n) {
    double* dy = as_doubles(y);
    const double* dx = as_doubles(x);
    const __m256d viota = _mm256_setr_pd(0.0, 0.0, 1.0, 1.0);
    const __m256d vc0 = _mm256_set1_pd(c0);
    const __m256d vdc = _mm256_set1_pd(dc);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d vidx =
            _mm256_add_pd(_mm256_set1_pd(static_cast<double>(k)), viota);
        const __m256d coef = _mm256_fmadd_pd(vdc, vidx, vc0);
        const __m256d vx = _mm256_loadu_pd(dx + 2 * k);
        _mm256_storeu_pd(
            dy + 2 * k,
            _mm256_fmadd_pd(coef, rot90(vx), _mm256_loadu_pd(dy + 2 * k)));
    }
    for (; k < n; ++k) {
        const double coef = c0 + dc * static_cast<double>(k);
        y[k] += cplx(-coef * x[k].imag(), coef * x[k].real());
    }
}

}  // namespace avx2

const KernelTable* avx2_table() {
    static const KernelTable table = {
        "avx2",
        avx2::cdot,
        avx2::cnorm2,
        avx2::caxpy,
        avx2::caxpby,
        avx2::cadd_scaled,
        avx2::cshift_pair_add,
        avx2::cshift_pair_diff,
        avx2::cabs2_scaled,
        avx2::cimag_prod_scaled,
        avx2::cmul_real_add,
        avx2::cadd_iaffine,
        avx2::rdot,
        avx2::raxpy,
    };
    return &table;
}

}  // namespace emqm::simd

#else

namespace emqm::simd {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace emqm::simd

#endif  // __AVX2__
