#include "barricade/horizon.hpp"

#include "barricade/sampling.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>

namespace barricade {

HorizonValue horizon(const CatalogFn& f, const Vec& v) {
  require_finite(v, "horizon");
  if (v.norm() == 0.0) throw std::invalid_argument("horizon: v must be nonzero");
  HorizonValue h;
  h.value = f.horizon(v);
  h.method = HorizonValue::Method::ClosedForm;
  return h;
}

HorizonValue horizon_numeric(const CatalogFn& f, const Vec& v) {
  require_finite(v, "horizon_numeric");
  if (v.norm() == 0.0) throw std::invalid_argument("horizon_numeric: v must be nonzero");
  HorizonValue h;
  h.method = HorizonValue::Method::NumericLimit;
  const Vec x0 = f.domain_interior_point();
  const double f0 = f.value(x0);
  // dom(f) is convex: once x0 + lambda v leaves it, larger lambdas stay out.
  if (!std::isfinite(f.value(x0 + 1e-3 * v)) || !std::isfinite(f.value(x0 + v))) {
    h.value = kInf;
    h.method = HorizonValue::Method::ClosedForm;
    return h;
  }
  double lambda = 1.0;
  for (int k = 0; k <= kLambdaDoublingCap; ++k, lambda *= 2.0) {
    double fv = f.value(x0 + lambda * v);
    if (!std::isfinite(fv)) {
      h.value = kInf;
      return h;
    }
    double q = (fv - f0) / lambda;
    h.estimates.push_back(q);
    if (q > 1e12) {
      h.value = kInf;
      return h;
    }
  }
  h.value = h.estimates.back();
  return h;
}

ConeRep horizon_zero_cone(const CatalogFn& f) {
  const int n = f.dimension();
  return std::visit(
      [&](const auto& fn) -> ConeRep {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, AffineFn>) {
          if (fn.g.norm() < 1e-14) return ConeRep::whole_space(n);
          Mat A(1, n);
          A.row(0) = fn.g.transpose();
          return ConeRep::from_rows(A);
        } else if constexpr (std::is_same_v<T, QuadraticFn>) {
          // {v : Qv = 0, b'v <= 0}
          Mat A(2 * fn.Q.rows() + 1, n);
          A.topRows(fn.Q.rows()) = fn.Q;
          A.middleRows(fn.Q.rows(), fn.Q.rows()) = -fn.Q;
          A.row(2 * fn.Q.rows()) = fn.b.transpose();
          return ConeRep::from_rows(A);
        } else if constexpr (std::is_same_v<T, NormAffineFn>) {
          Eigen::JacobiSVD<Mat> svd(fn.W, Eigen::ComputeFullU | Eigen::ComputeFullV);
          int rank = 0;
          const double thresh = 1e-12 * (1.0 + svd.singularValues().size() *
                                                   (svd.singularValues().size()
                                                        ? svd.singularValues()(0)
                                                        : 0.0));
          for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > thresh) ++rank;
          if (rank == 0) {
            if (fn.g.norm() < 1e-14) return ConeRep::whole_space(n);
            Mat A(1, n);
            A.row(0) = fn.g.transpose();
            return ConeRep::from_rows(A);
          }
          if (rank == 1) {
            double sigma = svd.singularValues()(0);
            Vec q = svd.matrixV().col(0);
            Mat A(2, n);
            A.row(0) = (sigma * q + fn.g).transpose();
            A.row(1) = (-sigma * q + fn.g).transpose();
            return ConeRep::from_rows(A);
          }
          if (fn.g.norm() < 1e-14) {
            // {|Wv| <= 0} = null(W)
            Mat A(2 * fn.W.rows(), n);
            A.topRows(fn.W.rows()) = fn.W;
            A.bottomRows(fn.W.rows()) = -fn.W;
            return ConeRep::from_rows(A);
          }
          std::vector<Vec> dirs;
          for (const Vec& d : sphere_directions(n, 512, 0))
            if (f.horizon(d) <= 1e-12) dirs.push_back(d);
          return ConeRep::sampled(std::move(dirs), n);
        } else if constexpr (std::is_same_v<T, Lift1DFn>) {
          const bool plus_ok = fn.phi.horizon(1.0) <= 0.0;
          const bool minus_ok = fn.phi.horizon(-1.0) <= 0.0;
          if (plus_ok && minus_ok) return ConeRep::whole_space(n);
          std::vector<Vec> rows;
          if (!plus_ok) rows.push_back(Vec::Unit(n, fn.index));   // v_i <= 0
          if (!minus_ok) rows.push_back(-Vec::Unit(n, fn.index)); // v_i >= 0
          Mat A(static_cast<Eigen::Index>(rows.size()), n);
          for (size_t i = 0; i < rows.size(); ++i)
            A.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
          return ConeRep::from_rows(A);
        } else {
          Mat A(2, 2);
          A << -1, 0, 0, -1;  // nonnegative quadrant
          return ConeRep::from_rows(A);
        }
      },
      f.rep());
}

// ---------------------------------------------------------------------------
// Condition checks
// ---------------------------------------------------------------------------

const char* to_string(ConditionReport::Condition c) {
  switch (c) {
    case ConditionReport::Condition::Coercive: return "coercive";
    case ConditionReport::Condition::UniformDescent: return "uniform_descent";
    default: return "witnessed_descent";
  }
}

namespace {

// Operational "f(x + lambda v) -> -inf" decision over doubling lambdas:
// monotone decrease plus either crossing the divergence threshold or
// non-shrinking decrements with a visibly negative tail (catches sublinear
// divergence like -sqrt(lambda) within the lambda cap).
bool diverges_to_minus_inf(const std::vector<double>& values) {
  if (values.size() < 4) return false;
  for (size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] <= values[i - 1] + 1e-9)) return false;
    if (!std::isfinite(values[i])) return false;
  }
  if (values.back() <= kDivergenceThreshold) return true;
  size_t m = values.size();
  double d_prev = values[m - 3] - values[m - 4];
  double d_mid = values[m - 2] - values[m - 3];
  double d_last = values[m - 1] - values[m - 2];
  bool growing_decrements = d_mid <= d_prev + 1e-12 && d_last <= d_mid + 1e-12 &&
                            d_last < -1e-9;
  return growing_decrements && values.back() <= -10.0;
}

std::vector<double> probe_values(const CatalogFn& f, const Vec& base, const Vec& v) {
  std::vector<double> values;
  values.push_back(f.value(base));
  double lambda = 1.0;
  for (int k = 0; k <= kLambdaDoublingCap; ++k, lambda *= 2.0) {
    values.push_back(f.value(base + lambda * v));
    if (values.back() <= 2.0 * kDivergenceThreshold) break;
  }
  return values;
}

std::vector<Vec> descent_directions(const CatalogFn& f, const ConeRep& cone, int budget,
                                    unsigned seed) {
  std::vector<Vec> dirs = cone_sample_directions(cone, budget, seed);
  std::vector<Vec> out;
  for (Vec& d : dirs) {
    if (d.norm() > 1e-9 && f.horizon(d) <= kConeTol) out.push_back(d.normalized());
  }
  // canonical order so witnesses are reproducible
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a(i) != b(i)) return a(i) > b(i);
    }
    return false;
  });
  return out;
}

}  // namespace

ConditionReport check_coercive(const CatalogFn& f, double tol) {
  ConditionReport rep;
  rep.condition = ConditionReport::Condition::Coercive;
  ConeRep cone = horizon_zero_cone(f);

  if (cone.exact()) {
    if (cone_is_trivial(cone)) {
      rep.holds = Tribool::True;
      rep.note = "horizon positive off the origin (zero cone is trivial)";
      return rep;
    }
    std::vector<Vec> dirs = descent_directions(f, cone, 8, 0);
    rep.holds = Tribool::False;
    if (!dirs.empty()) {
      DirectionProbe p;
      p.v = dirs.front();
      p.values = {f.horizon(dirs.front())};
      rep.witnesses.push_back(std::move(p));
    }
    rep.note = "nonzero direction with horizon <= 0";
    return rep;
  }

  // Sampled route: sphere minimum of the horizon.
  double best = kInf;
  Vec bestd;
  for (const Vec& d : sphere_directions(f.dimension(), 512, 1)) {
    double h = f.horizon(d);
    if (h < best) {
      best = h;
      bestd = d;
    }
  }
  if (best <= tol) {
    rep.holds = Tribool::False;
    DirectionProbe p;
    p.v = bestd;
    p.values = {best};
    rep.witnesses.push_back(std::move(p));
    rep.note = "sampled sphere minimum <= tol";
  } else {
    rep.holds = Tribool::True;
    rep.note = "sampled sphere minimum > tol (512 directions)";
  }
  return rep;
}

ConditionReport check_witnessed_descent(const CatalogFn& f, double tol) {
  ConditionReport rep;
  rep.condition = ConditionReport::Condition::WitnessedDescent;
  ConeRep cone = horizon_zero_cone(f);
  if (cone.exact() && cone_is_trivial(cone)) {
    rep.holds = Tribool::True;
    rep.note = "vacuous: zero cone is trivial";
    return rep;
  }
  std::vector<Vec> dirs = descent_directions(f, cone, 32, 2);
  if (dirs.empty()) {
    rep.holds = Tribool::Unknown;
    rep.note = "no certified directions to test";
    return rep;
  }
  std::vector<Vec> bases = f.suggested_bases();
  for (const Vec& s : f.domain_samples(8)) bases.push_back(s);

  for (const Vec& v : dirs) {
    bool found = false;
    DirectionProbe last;
    for (const Vec& base : bases) {
      if (!std::isfinite(f.value(base))) continue;
      auto values = probe_values(f, base, v);
      last.v = v;
      last.base = base;
      last.values = values;
      if (diverges_to_minus_inf(values)) {
        last.diverged = true;
        found = true;
        break;
      }
    }
    if (!found) {
      rep.holds = Tribool::False;
      rep.witnesses.push_back(std::move(last));
      rep.note = "no base point diverges along this direction";
      return rep;
    }
    rep.witnesses.push_back(std::move(last));
  }
  rep.holds = cone.exact() ? Tribool::True : Tribool::Unknown;
  rep.note = cone.exact() ? "every tested direction has a diverging base"
                          : "sampled cone: directions tested are a subset";
  (void)tol;
  return rep;
}

ConditionReport check_uniform_descent(const CatalogFn& f, double tol) {
  ConditionReport rep;
  rep.condition = ConditionReport::Condition::UniformDescent;
  ConeRep cone = horizon_zero_cone(f);
  if (cone.exact() && cone_is_trivial(cone)) {
    rep.holds = Tribool::True;
    rep.note = "vacuous: zero cone is trivial";
    return rep;
  }
  std::vector<Vec> dirs = descent_directions(f, cone, 32, 3);
  if (dirs.empty()) {
    rep.holds = Tribool::Unknown;
    rep.note = "no certified directions to test";
    return rep;
  }
  std::vector<Vec> bases = f.domain_samples(24);
  for (const Vec& v : dirs) {
    for (const Vec& base : bases) {
      if (!std::isfinite(f.value(base))) continue;
      auto values = probe_values(f, base, v);
      if (!diverges_to_minus_inf(values)) {
        DirectionProbe p;
        p.v = v;
        p.base = base;
        p.values = values;
        rep.holds = Tribool::False;
        rep.witnesses.push_back(std::move(p));
        rep.note = "non-diverging base/direction pair";
        return rep;
      }
    }
  }
  rep.holds = cone.exact() ? Tribool::True : Tribool::Unknown;
  rep.note = "all sampled base/direction pairs diverge (24 bases)";
  (void)tol;
  return rep;
}

// ---------------------------------------------------------------------------
// certify_and_solve
// ---------------------------------------------------------------------------

const char* to_string(ExistenceReport::Conclusion c) {
  switch (c) {
    case ExistenceReport::Conclusion::NonemptyCompact: return "nonempty_compact";
    case ExistenceReport::Conclusion::HypothesesFailed: return "hypotheses_failed";
    default: return "inconclusive";
  }
}

namespace {

struct SolveState {
  Vec best_point;
  double best_value = kInf;
  std::vector<Vec> trace;
};

double safe_value(const CatalogFn& f, const Vec& x) { return f.value(x); }

void subgradient_phase(const ConvexSet& M, const CatalogFn& f, Vec x0, int iters,
                       SolveState& st) {
  Vec x = project(M, f.domain_project(x0));
  double fx = safe_value(f, x);
  if (std::isfinite(fx) && fx < st.best_value) {
    st.best_value = fx;
    st.best_point = x;
  }
  const double a = std::max(1.0, x.norm());
  for (int k = 1; k <= iters; ++k) {
    Vec g = f.subgradient(x);
    double t = a / std::sqrt(static_cast<double>(k));
    Vec cand = project(M, x - t * g);
    double fc = safe_value(f, cand);
    int halvings = 0;
    while (!std::isfinite(fc) && halvings < 40) {
      t *= 0.5;
      cand = project(M, x - t * g);
      fc = safe_value(f, cand);
      ++halvings;
    }
    if (!std::isfinite(fc)) break;
    x = cand;
    if ((k & 7) == 0 || k == iters) st.trace.push_back(x);
    if (fc < st.best_value) {
      st.best_value = fc;
      st.best_point = x;
    }
    if (fc <= 2.0 * kDivergenceThreshold) break;
  }
}

void polish_phase(const ConvexSet& M, const CatalogFn& f, int iters, SolveState& st) {
  Vec x = st.best_point;
  double fx = st.best_value;
  double t = 1.0;
  for (int k = 0; k < iters; ++k) {
    Vec g = f.subgradient(x);
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Vec cand = project(M, x - t * g);
      double fc = safe_value(f, cand);
      if (std::isfinite(fc) && fc < fx - 1e-16) {
        x = cand;
        fx = fc;
        t = std::min(t * 2.0, 1e6);
        moved = true;
        break;
      }
      t *= 0.5;
      if (t < 1e-18) break;
    }
    if (!moved) break;
  }
  if (fx < st.best_value) {
    st.best_value = fx;
    st.best_point = x;
  }
}

// Doubling march along a drift direction; refines the infimum estimate and
// records the diverging trace.
void nonattainment_march(const ConvexSet& M, const CatalogFn& f, const Vec& dir,
                         SolveState& st, std::vector<Vec>& trace, bool& hit_threshold) {
  Vec x = st.best_point;
  double fx = st.best_value;
  double lambda = std::max(1.0, 0.1 * x.norm());
  for (int j = 0; j < 80; ++j) {
    Vec cand = project(M, f.domain_project(x + lambda * dir));
    double fc = safe_value(f, cand);
    if (std::isfinite(fc) && fc < fx - 1e-9 * (1.0 + std::abs(fx))) {
      x = cand;
      fx = fc;
      trace.push_back(x);
      lambda *= 2.0;
      if (fc <= 2.0 * kDivergenceThreshold) {
        hit_threshold = true;
        break;
      }
    } else {
      break;
    }
  }
  if (fx < st.best_value) {
    st.best_value = fx;
    st.best_point = x;
  }
}

}  // namespace

ExistenceReport certify_and_solve(const ConvexSet& M, const CatalogFn& f, double tol,
                                  int max_iter, unsigned seed) {
  if (M.dimension() != f.dimension())
    throw DimensionError("certify_and_solve: set/function dimension mismatch");
  ExistenceReport rep;

  // Hypotheses.
  rep.ssp = ssp_verdict(M, kConeTol, seed);
  rep.witnessed_descent = check_witnessed_descent(f);
  if (const auto* sys = std::get_if<SublevelSystem>(&M.rep())) {
    bool all_true = true;
    for (const CatalogFn& fi : sys->constraints()) {
      rep.constraint_descent.push_back(check_uniform_descent(fi));
      if (rep.constraint_descent.back().holds != Tribool::True) all_true = false;
    }
    rep.ssp_via_constraints = all_true;
  }

  // Solve: restarts, merge, polish.
  const int n = M.dimension();
  SolveState st;
  const int restarts = 10;
  const int per_restart = std::max(300, max_iter / 10);
  const Vec anchor = M.anchor();
  std::vector<Vec> seeds_list = sphere_directions(n, restarts - 1, seed + 11);
  for (int r = 0; r < restarts; ++r) {
    Vec x0 = anchor;
    if (r > 0) x0 = anchor + (1.0 + anchor.norm()) * seeds_list[static_cast<size_t>(r - 1)];
    SolveState local;
    local.best_value = st.best_value;
    local.best_point = st.best_point.size() ? st.best_point : anchor;
    subgradient_phase(M, f, x0, per_restart, local);
    if (local.best_value < st.best_value - 1e-15 ||
        (st.best_point.size() == 0 && local.best_point.size())) {
      st.best_value = local.best_value;
      st.best_point = local.best_point;
      st.trace = local.trace;
    } else if (std::abs(local.best_value - st.best_value) <= 1e-15 &&
               local.best_point.size() && st.best_point.size()) {
      // deterministic merge: lexicographically smallest point on ties
      for (int i = 0; i < n; ++i) {
        if (local.best_point(i) < st.best_point(i) - 1e-15) {
          st.best_point = local.best_point;
          break;
        }
        if (local.best_point(i) > st.best_point(i) + 1e-15) break;
      }
    }
  }
  if (st.best_point.size() == 0) {
    st.best_point = anchor;
    st.best_value = safe_value(f, anchor);
  }
  polish_phase(M, f, std::max(200, max_iter / 4), st);

  // Nonattainment detection: iterates drifting outward while the
  // objective flattens.
  bool hit_threshold = st.best_value <= 2.0 * kDivergenceThreshold;
  const double start_scale = 1.0 + anchor.norm();
  bool drifted = st.best_point.norm() > 10.0 * start_scale;
  Vec drift_dir;
  if (st.trace.size() >= 2) {
    Vec d = st.trace.back() - st.trace[st.trace.size() / 2];
    if (d.norm() > 1e-9) drift_dir = d.normalized();
  }
  if (drift_dir.size() == 0 && st.best_point.norm() > 1e-9 && drifted)
    drift_dir = st.best_point.normalized();
  if (drift_dir.size() > 0) {
    double before = st.best_value;
    std::vector<Vec> trace;
    nonattainment_march(M, f, drift_dir, st, trace, hit_threshold);
    if (!trace.empty()) {
      rep.diverging_trace = trace;
      drifted = drifted || st.best_point.norm() > 10.0 * start_scale;
      (void)before;
    }
  }
  rep.nonattainment = drifted;
  if (!rep.diverging_trace.empty() && !drifted) rep.nonattainment = false;

  rep.best_value = st.best_value;
  rep.best_point = st.best_point;

  // KKT residual: prox-gradient stationarity proxy.
  {
    Vec g = f.subgradient(st.best_point);
    Vec pg = project(M, st.best_point - g);
    rep.kkt_residual = (pg - st.best_point).norm();
  }

  if (st.best_value <= kDivergenceThreshold || hit_threshold) {
    rep.bounded_below = Tribool::False;
    rep.bound_probe_value = st.best_value;
  } else if (rep.kkt_residual <= tol || !rep.nonattainment || !rep.diverging_trace.empty()) {
    // objective flattened (march stopped by vanishing improvement)
    rep.bounded_below = Tribool::True;
    rep.bound_probe_value = st.best_value;
  } else {
    rep.bounded_below = Tribool::Unknown;
    rep.bound_probe_value = st.best_value;
  }

  if (rep.kkt_residual <= tol && contains(M, st.best_point, 100 * kMembershipTol)) {
    rep.solution = st.best_point;
  }

  // Conclusion. A compact constraint set certifies existence on its own
  // (Weierstrass), so the descent condition is only binding when M is
  // unbounded.
  const bool compact_M = is_bounded_exact(M) == Tribool::True;
  bool ssp_ok = rep.ssp.verdict == SspVerdict::Verdict::HasSSP || rep.ssp_via_constraints;
  if (rep.ssp.verdict == SspVerdict::Verdict::LacksSSP && !rep.ssp_via_constraints)
    rep.failed.push_back("ssp");
  if (rep.bounded_below == Tribool::False) rep.failed.push_back("bounded_below");
  if (rep.witnessed_descent.holds == Tribool::False && !compact_M)
    rep.failed.push_back("witnessed_descent");

  if (!rep.failed.empty()) {
    rep.conclusion = ExistenceReport::Conclusion::HypothesesFailed;
  } else if (!ssp_ok || rep.bounded_below == Tribool::Unknown ||
             (rep.witnessed_descent.holds != Tribool::True && !compact_M)) {
    rep.conclusion = ExistenceReport::Conclusion::Inconclusive;
  } else {
    rep.conclusion = ExistenceReport::Conclusion::NonemptyCompact;
  }
  return rep;
}

}  // namespace barricade
