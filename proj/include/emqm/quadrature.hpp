#pragma once

#include <functional>

namespace emqm {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    int evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
/// Subdivides until the local error estimate satisfies the mixed
/// relative/absolute tolerance or max_depth is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double rel_tol = 1e-12,
                                    double abs_tol = 0.0, int max_depth = 48);

}  // namespace emqm
