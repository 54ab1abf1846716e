#pragma once

#include <vector>

namespace emqm {

/// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
};

/// Lowest `count` eigenvalues by Sturm-sequence bisection.
std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int count);

/// Eigenvector for an isolated eigenvalue, by inverse iteration with a
/// partially pivoted tridiagonal solve. Normalized to unit Euclidean norm.
std::vector<double> eigenvector(const SymTridiagonal& t, double lambda);

}  // namespace emqm
