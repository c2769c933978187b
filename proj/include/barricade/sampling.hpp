#pragma once

#include "barricade/types.hpp"

#include <vector>

namespace barricade {

/// Deterministic low-discrepancy sampling utilities. All sequences are
/// pure functions of (index, seed), so concurrent callers never share state.

double halton(unsigned long long index, unsigned base);

/// Inverse standard normal CDF (Acklam approximation, ~1e-9 accurate).
double inverse_normal_cdf(double p);

/// Unit directions in R^n from Halton points pushed through the normal
/// quantile and normalized. The seed offsets the sequence.
std::vector<Vec> sphere_directions(int n, int count, unsigned seed);

/// Euclidean projection onto the probability simplex {w >= 0, sum w = 1}.
Vec project_to_simplex(const Vec& v);

}  // namespace barricade
