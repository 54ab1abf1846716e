#include "emqm/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace emqm {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1] (QUADPACK values).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct PanelEstimate {
    double kronrod;
    double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b, int& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = kWgk[7] * f(c);
    double resg = kWg[3] * f(c);
    evals += 1;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double fsum = f(c - x) + f(c + x);
        evals += 2;
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    PanelEstimate est;
    est.kronrod = resk * h;
    est.error = std::abs((resk - resg) * h);
    return est;
}

void integrate_panel(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, int depth, int max_depth,
                     QuadratureResult& acc) {
    const PanelEstimate est = gk15(f, a, b, acc.evaluations);
    const double tol = std::max(abs_tol, rel_tol * std::abs(est.kronrod));
    if (est.error <= tol || depth >= max_depth) {
        acc.value += est.kronrod;
        acc.abs_error += est.error;
        if (est.error > tol) acc.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    integrate_panel(f, a, mid, rel_tol, abs_tol, depth + 1, max_depth, acc);
    integrate_panel(f, mid, b, rel_tol, abs_tol, depth + 1, max_depth, acc);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double rel_tol, double abs_tol,
                                    int max_depth) {
    QuadratureResult acc;
    acc.converged = true;
    if (a == b) return acc;
    integrate_panel(f, a, b, rel_tol, abs_tol, 0, max_depth, acc);
    return acc;
}

}  // namespace emqm
