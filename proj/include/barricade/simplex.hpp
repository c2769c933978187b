#pragma once

#include "barricade/types.hpp"

#include <vector>

namespace barricade {

/// min c'x  subject to  A_ub x <= b_ub,  A_eq x = b_eq.
/// Variables are free unless flagged in `nonneg` (empty means all free).
struct LinearProgram {
  Mat A_ub;
  Vec b_ub;
  Mat A_eq;
  Vec b_eq;
  Vec c;
  std::vector<bool> nonneg;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vec x;             // Optimal: minimizer. Unbounded: feasible point from which the ray leaves.
  double objective = 0.0;
  Vec ray;           // Unbounded only: A_ub ray <= 0, A_eq ray = 0, c'ray < 0.
};

/// Dense two-phase simplex with Bland's rule throughout. Deterministic and
/// exact enough at desk scale; not meant for large instances.
LpSolution solve_lp(const LinearProgram& lp);

/// Feasibility of {x : A_ub x <= b_ub, A_eq x = b_eq} (phase 1 only).
bool lp_feasible(const LinearProgram& lp, Vec* point = nullptr);

}  // namespace barricade
