#include "emqm/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emqm {

namespace {

// Number of eigenvalues strictly below x (Sturm sequence via LDL^T).
int count_below(const SymTridiagonal& t, double x) {
    const std::size_t n = t.diag.size();
    int count = 0;
    double d = t.diag[0] - x;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        const double e = t.off[i - 1];
        if (d == 0.0) d = 1e-300;
        d = t.diag[i] - x - e * e / d;
        if (d < 0.0) ++count;
    }
    return count;
}

}  // namespace

std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int count) {
    const std::size_t n = t.diag.size();
    if (t.off.size() + 1 != n) throw std::invalid_argument("tridiagonal size mismatch");
    if (count < 1 || static_cast<std::size_t>(count) > n)
        throw std::invalid_argument("bad eigenvalue count");

    double lo = t.diag[0], hi = t.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::abs(t.off[i]) : 0.0);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }

    std::vector<double> vals(count);
    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        for (int iter = 0; iter < 120; ++iter) {
            const double mid = 0.5 * (a + b);
            if (count_below(t, mid) <= k)
                a = mid;
            else
                b = mid;
            if (b - a <= 1e-15 * (std::abs(a) + std::abs(b))) break;
        }
        vals[k] = 0.5 * (a + b);
    }
    return vals;
}

namespace {

std::vector<double> inverse_iteration(const SymTridiagonal& t, double lambda,
                                      int passes);

double rayleigh_quotient(const SymTridiagonal& t, const std::vector<double>& x) {
    const std::size_t n = t.diag.size();
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double tx = t.diag[i] * x[i];
        if (i > 0) tx += t.off[i - 1] * x[i - 1];
        if (i + 1 < n) tx += t.off[i] * x[i + 1];
        num += x[i] * tx;
    }
    return num;  // x is unit-normalized
}

}  // namespace

std::vector<double> eigenvector(const SymTridiagonal& t, double lambda) {
    std::vector<double> x = inverse_iteration(t, lambda, 3);
    // one Rayleigh-quotient polish pass tightens the eigenpair residual
    const double rq = rayleigh_quotient(t, x);
    if (std::isfinite(rq)) x = inverse_iteration(t, rq, 2);
    double big = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) > big) {
            big = std::abs(x[i]);
            at = i;
        }
    if (x[at] < 0.0)
        for (auto& v : x) v = -v;
    return x;
}

namespace {

std::vector<double> inverse_iteration(const SymTridiagonal& t, double lambda,
                                      int passes) {
    const std::size_t n = t.diag.size();
    // LU factor of (T - lambda I) with partial pivoting; bands b (diag),
    // c (super), d (2nd super) after row swaps.
    std::vector<double> b(n), c(n, 0.0), d(n, 0.0), l(n, 0.0);
    std::vector<int> piv(n, 0);
    for (std::size_t i = 0; i < n; ++i) b[i] = t.diag[i] - lambda;
    for (std::size_t i = 0; i + 1 < n; ++i) c[i] = t.off[i];

    std::vector<double> sub(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) sub[i + 1] = t.off[i];

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i + 1]) > std::abs(b[i])) {
            piv[i] = 1;
            std::swap(b[i], sub[i + 1]);
            std::swap(c[i], b[i + 1]);
            // row i+1 originally has (sub, diag, super); after swap its 2nd
            // super enters row i
            d[i] = c[i + 1];
            c[i + 1] = 0.0;
        }
        if (b[i] == 0.0) b[i] = 1e-300;
        const double m = sub[i + 1] / b[i];
        l[i + 1] = m;
        b[i + 1] -= m * c[i];
        c[i + 1] -= m * d[i];
    }
    if (b[n - 1] == 0.0) b[n - 1] = 1e-300;

    std::vector<double> x(n, 1.0);
    double nrm = std::sqrt(static_cast<double>(n));
    for (auto& v : x) v /= nrm;

    for (int pass = 0; pass < passes; ++pass) {
        // forward substitution with the recorded pivots
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (piv[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= l[i + 1] * x[i];
        }
        // back substitution
        for (std::size_t ii = n; ii-- > 0;) {
            double v = x[ii];
            if (ii + 1 < n) v -= c[ii] * x[ii + 1];
            if (ii + 2 < n) v -= d[ii] * x[ii + 2];
            x[ii] = v / b[ii];
        }
        nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (auto& v : x) v /= nrm;
    }
    return x;
}

}  // namespace

}  // namespace emqm
