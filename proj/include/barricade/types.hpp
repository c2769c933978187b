#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace barricade {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default tolerances. Membership and projection defaults sit well below
/// every verdict tolerance so that certificate revalidation never trips
/// on oracle noise.
inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kProjectionTol = 1e-8;
inline constexpr double kConeTol = 1e-7;       // margin on unit vectors
inline constexpr double kSeparationTol = 1e-8;
inline constexpr double kKktTol = 1e-6;
inline constexpr int kMaxIter = 10000;

/// Operational thresholds for "limit equals -infinity" decisions.
inline constexpr double kDivergenceThreshold = -1e6;
inline constexpr int kLambdaDoublingCap = 20;  // probe lambda up to 2^20

enum class Tribool { False, True, Unknown };

inline const char* to_string(Tribool t) {
  switch (t) {
    case Tribool::False: return "false";
    case Tribool::True: return "true";
    default: return "unknown";
  }
}

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

class ConstructionError : public std::invalid_argument {
 public:
  explicit ConstructionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Iterative routine exhausted its budget. Carries the best iterate and
/// residual (projections) or the bracketing bounds (distance).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Vec best, double residual)
      : std::runtime_error(what), best_iterate(std::move(best)), residual(residual) {}
  ConvergenceError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), residual(upper - lower), lower_bound(lower), upper_bound(upper) {}

  Vec best_iterate;
  double residual = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
};

/// A sampled/numeric probe could not certify a verdict either way.
/// Carries the best certified lower bound seen so far.
class InconclusiveError : public std::runtime_error {
 public:
  InconclusiveError(const std::string& what, double best_lower)
      : std::runtime_error(what), best_lower_bound(best_lower) {}

  double best_lower_bound;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

inline void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": entries must be finite");
}

inline void require_dim(const Vec& v, Eigen::Index n, const char* what) {
  if (v.size() != n)
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(n) +
                         ", got " + std::to_string(v.size()));
}

/// Closed real interval with optional open endpoints; lo/hi may be +-inf.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double x) const {
    if (x < lo || (x == lo && !lo_closed && std::isfinite(lo))) return false;
    if (x > hi || (x == hi && !hi_closed && std::isfinite(hi))) return false;
    return true;
  }
  bool bounded_below() const { return std::isfinite(lo); }
  bool bounded_above() const { return std::isfinite(hi); }
  double clamp(double x) const {
    double eps = 0.0;
    double l = bounded_below() ? (lo_closed ? lo : lo + eps) : -kInf;
    double h = bounded_above() ? (hi_closed ? hi : hi - eps) : kInf;
    return std::min(std::max(x, l), h);
  }
  bool is_open() const {
    return (!bounded_below() || !lo_closed) && (!bounded_above() || !hi_closed);
  }
};

}  // namespace barricade
