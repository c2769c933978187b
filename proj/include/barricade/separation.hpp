#pragma once

#include "barricade/convex_set.hpp"
#include "barricade/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace barricade {

/// Certifies sup_C <x*,c> <= alpha <= inf_D <x*,d> with a gap of at least
/// `margin`; xstar is unit length.
struct Hyperplane {
  Vec xstar;
  double alpha = 0.0;
  double margin = 0.0;
};

struct GapStep {
  Vec c;
  Vec d;
  double gap = 0.0;
};

struct SeparationOutcome {
  enum class Status { StronglySeparated, SeparatedOnly, NotStronglySeparable, Intersecting };
  Status status = Status::Intersecting;
  std::optional<Hyperplane> hyperplane;   // StronglySeparated / SeparatedOnly
  double dist = 0.0;                      // StronglySeparated: ||cp - dp||
  Vec cp, dp;                             // closest pair found
  std::optional<Vec> common_ray;          // NotStronglySeparable
  std::vector<GapStep> gap_sequence;      // NotStronglySeparable: strictly decreasing gaps
  std::optional<Vec> point;               // Intersecting
};

const char* to_string(SeparationOutcome::Status s);

struct DistanceResult {
  double lower = 0.0;
  double upper = kInf;
  Vec cp, dp;
  int iterations = 0;
  bool converged = false;  // upper - lower <= tol
};

/// Closest-pair bounds by alternating projections with a drift-doubling
/// acceleration, plus the dual support bound. Never throws on budget
/// exhaustion; check `converged`.
DistanceResult distance_bounds(const ConvexSet& C, const ConvexSet& D,
                               double tol = kSeparationTol, int max_iter = kMaxIter);

/// As distance_bounds, but throws ConvergenceError (carrying both bounds)
/// when the bracket does not close within budget.
DistanceResult distance(const ConvexSet& C, const ConvexSet& D, double tol = kSeparationTol,
                        int max_iter = kMaxIter);

SeparationOutcome separate(const ConvexSet& C, const ConvexSet& D,
                           double tol = kSeparationTol, int max_iter = kMaxIter);

/// Named pairs reproducing classic failure modes of strong separation,
/// truncated to R^n where applicable. The embedded sequence pairs carry
/// their exact gaps.
struct CounterexamplePair {
  ConvexSet C;
  ConvexSet D;
  SeparationOutcome::Status expected;
  std::vector<GapStep> embedded_pairs;
};

CounterexamplePair counterexample_pair(const std::string& name, int n);

}  // namespace barricade
