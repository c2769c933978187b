#pragma once

#include "barricade/catalog_fn.hpp"
#include "barricade/cones.hpp"
#include "barricade/convex_set.hpp"
#include "barricade/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace barricade {

struct HorizonValue {
  enum class Method { ClosedForm, NumericLimit };
  double value = kInf;
  Method method = Method::ClosedForm;
  std::vector<double> estimates;  // NumericLimit: nondecreasing difference quotients
};

/// Asymptotic slope of f along v (v != 0); closed form from the catalog.
HorizonValue horizon(const CatalogFn& f, const Vec& v);

/// Numeric route via difference quotients at lambda = 1, 2, 4, ..., 2^20;
/// used as an oracle against the closed forms.
HorizonValue horizon_numeric(const CatalogFn& f, const Vec& v);

/// {v : f^inf(v) <= 0}; exact polyhedral whenever the horizon is
/// affine/conic, sampled otherwise.
ConeRep horizon_zero_cone(const CatalogFn& f);

struct DirectionProbe {
  Vec v;
  std::optional<Vec> base;
  std::vector<double> values;
  bool diverged = false;
};

/// Reports on the three growth conditions: coercivity (f^inf > 0 off 0),
/// descent to -inf along every zero-cone direction from every base point,
/// and descent to -inf along every zero-cone direction from some base.
struct ConditionReport {
  enum class Condition { Coercive, UniformDescent, WitnessedDescent };
  Condition condition = Condition::Coercive;
  Tribool holds = Tribool::Unknown;
  std::vector<DirectionProbe> witnesses;  // false verdicts carry the violating probe
  std::string note;
};

ConditionReport check_coercive(const CatalogFn& f, double tol = kConeTol);
ConditionReport check_uniform_descent(const CatalogFn& f, double tol = kConeTol);
ConditionReport check_witnessed_descent(const CatalogFn& f, double tol = kConeTol);

const char* to_string(ConditionReport::Condition c);

struct ExistenceReport {
  SspVerdict ssp;
  bool ssp_via_constraints = false;  // all constraints satisfy uniform descent
  Tribool bounded_below = Tribool::Unknown;
  double bound_probe_value = 0.0;
  ConditionReport witnessed_descent;
  std::vector<ConditionReport> constraint_descent;  // sublevel constraint sets only

  enum class Conclusion { NonemptyCompact, HypothesesFailed, Inconclusive };
  Conclusion conclusion = Conclusion::Inconclusive;
  std::vector<std::string> failed;

  std::optional<Vec> solution;  // present iff feasible with kkt_residual <= tol
  double best_value = kInf;
  Vec best_point;
  double kkt_residual = kInf;
  bool nonattainment = false;
  std::vector<Vec> diverging_trace;
};

const char* to_string(ExistenceReport::Conclusion c);

/// Certify the existence hypotheses for min f over M and solve by projected
/// subgradient descent with restarts plus a gradient polish.
ExistenceReport certify_and_solve(const ConvexSet& M, const CatalogFn& f,
                                  double tol = kKktTol, int max_iter = kMaxIter,
                                  unsigned seed = 0);

}  // namespace barricade
