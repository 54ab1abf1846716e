#include "emqm/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emqm {

namespace {

using cd = std::complex<double>;

void bit_reverse(cd* a, std::size_t n) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

// one twiddle table per length, rebuilt only when the length changes
struct TwiddleCache {
    std::size_t n = 0;
    std::vector<cd> w;  // w[j] = exp(-2 pi i j / n), j < n/2
    void ensure(std::size_t len) {
        if (n == len) return;
        n = len;
        w.resize(len / 2);
        const double step = -2.0 * std::numbers::pi_v<double> / static_cast<double>(len);
        for (std::size_t j = 0; j < len / 2; ++j)
            w[j] = std::polar(1.0, step * static_cast<double>(j));
    }
};

thread_local TwiddleCache g_twiddles;

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_pow2(cd* a, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: length must be a power of two");
    if (n == 1) return;
    g_twiddles.ensure(n);
    const auto& w = g_twiddles.w;
    bit_reverse(a, n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                cd tw = w[j * stride];
                if (inverse) tw = std::conj(tw);
                const cd u = a[i + j];
                const cd v = a[i + j + len / 2] * tw;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

void fft3(std::vector<cd>& data, std::size_t nx, std::size_t ny, std::size_t nz,
          bool inverse) {
    if (data.size() != nx * ny * nz) throw std::invalid_argument("fft3: size mismatch");

    // x lines are contiguous
    for (std::size_t zy = 0; zy < ny * nz; ++zy) fft_pow2(data.data() + zy * nx, nx, inverse);

    std::vector<cd> line(std::max(ny, nz));
    if (ny > 1) {
        for (std::size_t z = 0; z < nz; ++z)
            for (std::size_t x = 0; x < nx; ++x) {
                const std::size_t base = x + nx * ny * z;
                for (std::size_t y = 0; y < ny; ++y) line[y] = data[base + nx * y];
                fft_pow2(line.data(), ny, inverse);
                for (std::size_t y = 0; y < ny; ++y) data[base + nx * y] = line[y];
            }
    }
    if (nz > 1) {
        const std::size_t nxy = nx * ny;
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t x = 0; x < nx; ++x) {
                const std::size_t base = x + nx * y;
                for (std::size_t z = 0; z < nz; ++z) line[z] = data[base + nxy * z];
                fft_pow2(line.data(), nz, inverse);
                for (std::size_t z = 0; z < nz; ++z) data[base + nxy * z] = line[z];
            }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(nx * ny * nz);
        for (auto& v : data) v *= scale;
    }
}

}  // namespace emqm
