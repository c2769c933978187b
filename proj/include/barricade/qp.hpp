#pragma once

#include "barricade/types.hpp"

#include <vector>

namespace barricade {

/// min 0.5 w'Hw + c'w  subject to  w >= 0 and, when `simplex` is nonempty,
/// sum_{i in simplex} w_i = 1. Dense primal active-set for the small QPs
/// behind projections (H = Gram matrix of generators or constraint rows).
Vec small_nonneg_qp(const Mat& H, const Vec& c, const std::vector<int>& simplex = {},
                    int max_iter = 800);

}  // namespace barricade
