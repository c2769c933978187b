#include "barricade/separation.hpp"

#include "barricade/cones.hpp"
#include "barricade/simplex.hpp"
#include "barricade/support.hpp"

#include <algorithm>

namespace barricade {

const char* to_string(SeparationOutcome::Status s) {
  switch (s) {
    case SeparationOutcome::Status::StronglySeparated: return "strongly_separated";
    case SeparationOutcome::Status::SeparatedOnly: return "separated_only";
    case SeparationOutcome::Status::NotStronglySeparable: return "not_strongly_separable";
    default: return "intersecting";
  }
}

namespace {

// Dual bound along the current gap direction: inf_D <w,.> - sup_C <w,.>,
// clipped at zero. Inconclusive or infinite support values contribute no
// bound.
double dual_bound(const ConvexSet& C, const ConvexSet& D, const Vec& w) {
  try {
    SupportValue sc = support(C, w);
    SupportValue sd = support(D, -w);
    if (!sc.is_finite() || !sd.is_finite()) return 0.0;
    return std::max(0.0, -sd.value - sc.value);
  } catch (const InconclusiveError&) {
    return 0.0;
  }
}

// Translate the pair by lambda*v and realign with one alternation round;
// the realignment is what actually squeezes the gap, independent of which
// set carries the curvature.
struct JumpResult {
  Vec c, d;
  double gap;
};

JumpResult jump_and_realign(const ConvexSet& C, const ConvexSet& D, const Vec& cp,
                            const Vec& dp, double lambda, const Vec& v) {
  Vec dj = project(D, dp + lambda * v);
  Vec c2 = project(C, dj);
  Vec d2 = project(D, c2);
  return {c2, d2, (c2 - d2).norm()};
}

}  // namespace

DistanceResult distance_bounds(const ConvexSet& C, const ConvexSet& D, double tol,
                               int max_iter) {
  if (C.dimension() != D.dimension()) throw DimensionError("distance: dimension mismatch");
  DistanceResult res;
  Vec cp = C.anchor();
  Vec dp = project(D, cp);
  cp = project(C, dp);
  res.iterations = 2;
  double gap = (cp - dp).norm();
  double lower = 0.0;

  auto refresh_dual = [&]() {
    if (gap > 1e-14) {
      Vec w = (dp - cp) / gap;
      lower = std::max(lower, dual_bound(C, D, w));
    }
  };

  Vec window_cp = cp;
  int window_age = 0;
  double window_gap = gap;

  while (res.iterations + 2 <= max_iter) {
    Vec cp_next = project(C, dp);
    Vec dp_next = project(D, cp_next);
    res.iterations += 2;
    cp = cp_next;
    dp = dp_next;
    gap = (cp - dp).norm();
    ++window_age;

    if (gap <= tol) break;
    if ((res.iterations % 50) == 0) {
      refresh_dual();
      if (gap - lower <= tol) break;
    }

    if (window_age >= 10) {
      double improvement = window_gap - gap;
      Vec drift = cp - window_cp;
      window_cp = cp;
      window_gap = gap;
      window_age = 0;
      // Slow progress: try to squeeze the gap by doubling jumps along the
      // drift direction, re-projecting both endpoints. Rejected jumps cost
      // two projections and we fall back to plain alternation.
      if (improvement < 0.2 * gap && drift.norm() > 1e-12) {
        Vec v = drift.normalized();
        double lambda = std::max({1.0, drift.norm(), 0.1 * cp.norm()});
        while (res.iterations + 3 <= max_iter) {
          JumpResult j = jump_and_realign(C, D, cp, dp, lambda, v);
          res.iterations += 3;
          if (j.gap < gap * (1.0 - 1e-12)) {
            cp = j.c;
            dp = j.d;
            gap = j.gap;
            lambda *= 2.0;
            if (gap <= tol) break;
          } else {
            break;
          }
        }
        if (gap <= tol) break;
      }
    }
  }
  refresh_dual();
  res.cp = cp;
  res.dp = dp;
  res.upper = gap;
  res.lower = std::min(lower, gap);
  res.converged = res.upper - res.lower <= tol;
  return res;
}

DistanceResult distance(const ConvexSet& C, const ConvexSet& D, double tol, int max_iter) {
  DistanceResult r = distance_bounds(C, D, tol, max_iter);
  if (!r.converged)
    throw ConvergenceError("distance: bracket did not close within budget", r.lower, r.upper);
  return r;
}

namespace {

struct CommonRaySearch {
  std::optional<Vec> dir;      // certified nonzero common recession direction
  bool trivial_certified = false;  // rec(C) ∩ rec(D) = {0} proven exactly
};

// Nonzero direction of K1 ∩ K2, exact for polyhedral pairs via coordinate
// LPs; sampled fallback filters certified directions of one cone through
// the other.
CommonRaySearch common_recession_direction(const ConeRep& K1, const ConeRep& K2) {
  CommonRaySearch out;
  const int n = K1.dim;

  auto to_rows = [&](const ConeRep& K) -> std::optional<Mat> {
    if (K.kind == ConeRep::Kind::PolyhedralH) return K.A;
    return std::nullopt;
  };

  if (K1.exact() && K2.exact()) {
    // V-form cones contribute generator variables; H-form cones contribute rows.
    std::vector<Mat> row_blocks;
    if (auto r = to_rows(K1)) row_blocks.push_back(*r);
    if (auto r = to_rows(K2)) row_blocks.push_back(*r);
    std::vector<const std::vector<Vec>*> gen_blocks;
    if (K1.kind == ConeRep::Kind::PolyhedralV) gen_blocks.push_back(&K1.generators);
    if (K2.kind == ConeRep::Kind::PolyhedralV) gen_blocks.push_back(&K2.generators);

    // Trivial V-form cones force the trivial intersection.
    for (const auto* g : gen_blocks) {
      if (g->empty()) {
        out.trivial_certified = true;
        return out;
      }
    }

    int gtotal = 0;
    for (const auto* g : gen_blocks) gtotal += static_cast<int>(g->size());
    const int nv = n + gtotal;  // v plus generator weights

    Eigen::Index nrows = 0;
    for (const Mat& b : row_blocks) nrows += b.rows();
    const bool use_box = gen_blocks.empty();

    Mat A_ub = Mat::Zero(nrows + (use_box ? 2 * n : 0) , nv);
    Vec b_ub = Vec::Zero(A_ub.rows());
    Eigen::Index at = 0;
    for (const Mat& b : row_blocks) {
      A_ub.block(at, 0, b.rows(), n) = b;
      at += b.rows();
    }
    if (use_box) {
      A_ub.block(at, 0, n, n) = Mat::Identity(n, n);
      b_ub.segment(at, n).setOnes();
      at += n;
      A_ub.block(at, 0, n, n) = -Mat::Identity(n, n);
      b_ub.segment(at, n).setOnes();
    }

    // Equalities: v = G'w per V-form block, plus sum of weights = 1.
    Eigen::Index neq = static_cast<Eigen::Index>(gen_blocks.size()) * n +
                       (gen_blocks.empty() ? 0 : 1);
    Mat A_eq = Mat::Zero(neq, nv);
    Vec b_eq = Vec::Zero(neq);
    int woff = n;
    at = 0;
    for (const auto* g : gen_blocks) {
      for (int i = 0; i < n; ++i) {
        A_eq(at + i, i) = 1.0;
        for (size_t k = 0; k < g->size(); ++k)
          A_eq(at + i, woff + static_cast<int>(k)) = -(*g)[k](i);
      }
      at += n;
      woff += static_cast<int>(g->size());
    }
    if (!gen_blocks.empty()) {
      for (int k = n; k < nv; ++k) A_eq(neq - 1, k) = 1.0;
      b_eq(neq - 1) = 1.0;
    }

    std::vector<bool> nonneg(static_cast<size_t>(nv), false);
    for (int k = n; k < nv; ++k) nonneg[static_cast<size_t>(k)] = true;

    double best = 0.0;
    Vec bestv;
    for (int j = 0; j < n; ++j) {
      for (double s : {1.0, -1.0}) {
        LinearProgram lp;
        lp.A_ub = A_ub;
        lp.b_ub = b_ub;
        lp.A_eq = A_eq;
        lp.b_eq = b_eq;
        lp.c = Vec::Zero(nv);
        lp.c(j) = -s;
        lp.nonneg = nonneg;
        LpSolution sol = solve_lp(lp);
        if (sol.status == LpStatus::Optimal) {
          double val = -sol.objective;
          if (val > best + 1e-9) {
            best = val;
            bestv = sol.x.head(n);
          }
        } else if (sol.status == LpStatus::Unbounded) {
          best = 1.0;
          bestv = sol.ray.head(n);
        }
      }
    }
    if (best > 1e-9 && bestv.size() == n && bestv.norm() > 1e-12) {
      out.dir = bestv.normalized();
    } else if (!gen_blocks.empty()) {
      // The weight simplex was exhausted with v = 0 throughout.
      out.trivial_certified = true;
    } else {
      out.trivial_certified = true;
    }
    return out;
  }

  // Sampled route: directions certified in one cone, tested in the other.
  const ConeRep& sampled = K1.exact() ? K2 : K1;
  const ConeRep& other = K1.exact() ? K1 : K2;
  for (const Vec& d : sampled.directions) {
    if (cone_contains(other, d, 1e-9)) {
      out.dir = d;
      return out;
    }
  }
  return out;  // nothing found, nothing certified
}

std::optional<Hyperplane> weak_separation_lp(const ConvexSet& C, const ConvexSet& D) {
  const auto* pc = std::get_if<HPolyhedron>(&C.rep());
  const auto* pd = std::get_if<HPolyhedron>(&D.rep());
  if (!pc || !pd) return std::nullopt;
  // max margin = -(b1'y + b2'z) s.t. A1'y + A2'z = 0, sum(y)+sum(z) = 1,
  // y, z >= 0; x* = A1'y separates when nonzero.
  const int m1 = static_cast<int>(pc->A().rows());
  const int m2 = static_cast<int>(pd->A().rows());
  const int n = pc->dimension();
  LinearProgram lp;
  lp.A_eq = Mat::Zero(n + 1, m1 + m2);
  lp.A_eq.block(0, 0, n, m1) = pc->A().transpose();
  lp.A_eq.block(0, m1, n, m2) = pd->A().transpose();
  lp.A_eq.row(n).setOnes();
  lp.b_eq = Vec::Zero(n + 1);
  lp.b_eq(n) = 1.0;
  lp.c = Vec(m1 + m2);
  lp.c.head(m1) = pc->b();
  lp.c.tail(m2) = pd->b();
  lp.nonneg.assign(static_cast<size_t>(m1 + m2), true);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  double margin = -sol.objective;
  if (margin < -1e-9) return std::nullopt;
  Vec xstar = pc->A().transpose() * sol.x.head(m1);
  if (xstar.norm() < 1e-10) return std::nullopt;
  // x* pairs as sup_C <-x*, c> <= ... ; orient so sup_C <= inf_D.
  double nx = xstar.norm();
  Hyperplane h;
  h.xstar = -xstar / nx;
  SupportValue sc = support(C, h.xstar);
  SupportValue sd = support(D, -h.xstar);
  if (!sc.is_finite() || !sd.is_finite()) return std::nullopt;
  double supc = sc.value, infd = -sd.value;
  if (supc > infd + 1e-7) return std::nullopt;
  h.alpha = 0.5 * (supc + infd);
  h.margin = std::max(0.0, infd - supc);
  return h;
}

SeparationOutcome strongly(const ConvexSet& C, const ConvexSet& D, const DistanceResult& r,
                           double tol) {
  SeparationOutcome out;
  out.status = SeparationOutcome::Status::StronglySeparated;
  out.cp = r.cp;
  out.dp = r.dp;
  out.dist = r.upper;
  Hyperplane h;
  h.xstar = (r.dp - r.cp) / r.upper;
  h.alpha = h.xstar.dot(0.5 * (r.cp + r.dp));
  h.margin = r.lower;
  // Revalidate through the support values when they are available.
  try {
    SupportValue sc = support(C, h.xstar);
    SupportValue sd = support(D, -h.xstar);
    if (sc.is_finite() && sd.is_finite()) {
      double supc = sc.value, infd = -sd.value;
      h.alpha = 0.5 * (supc + infd);
      h.margin = std::max(h.margin, std::max(0.0, infd - supc));
    }
  } catch (const InconclusiveError&) {
  }
  (void)tol;
  out.hyperplane = h;
  return out;
}

std::vector<GapStep> squeeze_gap_sequence(const ConvexSet& C, const ConvexSet& D, Vec cp,
                                          Vec dp, const Vec& v, double tol) {
  std::vector<GapStep> seq;
  double gap = (cp - dp).norm();
  seq.push_back({cp, dp, gap});
  double lambda = std::max(1.0, gap);
  for (int k = 0; k < 60; ++k) {
    JumpResult j = jump_and_realign(C, D, cp, dp, lambda, v);
    if (j.gap < gap * (1.0 - 1e-12)) {
      cp = j.c;
      dp = j.d;
      gap = j.gap;
      seq.push_back({cp, dp, gap});
      lambda *= 2.0;
      if (gap < tol) break;
    } else {
      lambda *= 2.0;  // flat stretch: jump further before giving up
      if (lambda > 1e14) break;
    }
  }
  return seq;
}

}  // namespace

SeparationOutcome separate(const ConvexSet& C, const ConvexSet& D, double tol, int max_iter) {
  if (C.dimension() != D.dimension()) throw DimensionError("separate: dimension mismatch");

  ConeRep KC = recession_cone(C);
  ConeRep KD = recession_cone(D);
  CommonRaySearch crs = common_recession_direction(KC, KD);

  int budget = max_iter;
  DistanceResult r;
  for (int esc = 0; esc <= 3; ++esc, budget *= 4) {
    r = distance_bounds(C, D, tol, budget);

    if (r.lower > tol) return strongly(C, D, r, tol);

    if (r.upper <= tol) {
      Vec mid = 0.5 * (r.cp + r.dp);
      if (contains(C, mid, 10 * tol) && contains(D, mid, 10 * tol)) {
        SeparationOutcome out;
        out.status = SeparationOutcome::Status::Intersecting;
        out.point = mid;
        out.cp = r.cp;
        out.dp = r.dp;
        return out;
      }
    }

    // Zero-distance-but-disjoint territory: a certified common recession
    // direction with a squeezing gap sequence settles it.
    if (crs.dir) {
      bool in_both = true;
      for (const ConvexSet* S : {&C, &D}) {
        Vec c0 = S->anchor();
        for (double lam : {1.0, 10.0, 100.0})
          if (!contains(*S, c0 + lam * (*crs.dir), 1e-6 * lam)) in_both = false;
      }
      if (in_both) {
        auto seq = squeeze_gap_sequence(C, D, r.cp, r.dp, *crs.dir, tol);
        if (seq.size() >= 2 && seq.back().gap < 10 * tol) {
          SeparationOutcome out;
          out.status = SeparationOutcome::Status::NotStronglySeparable;
          out.common_ray = crs.dir;
          out.gap_sequence = std::move(seq);
          out.cp = r.cp;
          out.dp = r.dp;
          return out;
        }
      }
    }

    // Trivial common recession certified exactly: disjointness implies a
    // positive gap, so escalate the budget until the bracket closes.
    if (!crs.trivial_certified && !crs.dir) break;
  }

  if (auto h = weak_separation_lp(C, D)) {
    SeparationOutcome out;
    out.status = SeparationOutcome::Status::SeparatedOnly;
    out.hyperplane = *h;
    out.cp = r.cp;
    out.dp = r.dp;
    return out;
  }
  throw ConvergenceError("separate: escalation exhausted without a certificate", r.lower,
                         r.upper);
}

// ---------------------------------------------------------------------------
// Counterexample gallery pairs
// ---------------------------------------------------------------------------

namespace {

ConvexSet hyperbola_region() {
  // {(x, y) : x, y >= 0, x*y >= 1} as the 0-sublevel set of the convex
  // function sqrt(((x - y)/sqrt2)^2 + 2) - (x + y)/sqrt2.
  const double s = 1.0 / std::sqrt(2.0);
  Mat W(2, 2);
  W << s, -s, 0.0, 0.0;
  Vec w(2);
  w << 0.0, std::sqrt(2.0);
  Vec g(2);
  g << -s, -s;
  return ConvexSet(SublevelSystem({CatalogFn::norm_affine(W, w, g, 0.0)}));
}

ConvexSet axis_line(int coord_dim) {
  // {y = 0} in R^2 as two opposite halfplanes.
  Mat A(2, coord_dim);
  A.setZero();
  A(0, 1) = 1.0;
  A(1, 1) = -1.0;
  Vec b = Vec::Zero(2);
  return ConvexSet(HPolyhedron(A, b));
}

}  // namespace

CounterexamplePair counterexample_pair(const std::string& name, int n) {
  if (name == "hyperbola_line") {
    CounterexamplePair out{hyperbola_region(), axis_line(2),
                           SeparationOutcome::Status::NotStronglySeparable,
                           {}};
    return out;
  }
  if (n < 2) throw std::invalid_argument("counterexample_pair: n >= 2 required");
  if (name == "l2_slices") {
    // xi^k = k e_k on {sum x_i / i = 1, x >= 0}; zeta^k = 2/(k+1) e_1 + k e_k
    // on {sum y_i / (i+1) = 1, y >= 0}; gaps |xi^k - zeta^k| = 2/(k+1).
    std::vector<Vec> xs, zs;
    std::vector<GapStep> pairs;
    for (int k = 1; k <= n - 1; ++k) {
      Vec xi = Vec::Zero(n);
      xi(k - 1) += static_cast<double>(k);
      Vec zeta = Vec::Zero(n);
      zeta(0) += 2.0 / (k + 1);
      zeta(k - 1) += static_cast<double>(k);
      xs.push_back(xi);
      zs.push_back(zeta);
      pairs.push_back({xi, zeta, (xi - zeta).norm()});
    }
    CounterexamplePair out{ConvexSet(VSet(xs, {})), ConvexSet(VSet(zs, {})),
                           SeparationOutcome::Status::StronglySeparated, pairs};
    return out;
  }
  if (name == "l1_slices") {
    // xi^k = e_k; zeta^k = (k+1)/k e_k; single-coordinate gaps 1/k (the
    // original l1 gaps coincide with the Euclidean ones here).
    std::vector<Vec> xs, zs;
    std::vector<GapStep> pairs;
    for (int k = 1; k <= n - 1; ++k) {
      Vec xi = Vec::Unit(n, k - 1);
      Vec zeta = ((k + 1.0) / k) * Vec::Unit(n, k - 1);
      xs.push_back(xi);
      zs.push_back(zeta);
      pairs.push_back({xi, zeta, (xi - zeta).norm()});
    }
    CounterexamplePair out{ConvexSet(VSet(xs, {})), ConvexSet(VSet(zs, {})),
                           SeparationOutcome::Status::StronglySeparated, pairs};
    return out;
  }
  throw std::out_of_range("counterexample_pair: unknown name '" + name + "'");
}

}  // namespace barricade
