#include "barricade/qp.hpp"

#include <Eigen/LU>

#include <algorithm>

namespace barricade {

namespace {

// Equality-constrained subproblem over the working set: minimize the
// quadratic with the simplex row when present. Returns the free-variable
// values and the simplex multiplier.
struct SubSolution {
  Vec w;
  double nu = 0.0;
};

SubSolution solve_working_set(const Mat& H, const Vec& c, const std::vector<int>& active,
                              const std::vector<bool>& in_simplex, bool has_simplex) {
  const int k = static_cast<int>(active.size());
  SubSolution out;
  if (k == 0) {
    out.w = Vec();
    return out;
  }
  Mat Haa(k, k);
  Vec ca(k), ea(k);
  bool any_simplex = false;
  for (int i = 0; i < k; ++i) {
    ca(i) = c(active[i]);
    ea(i) = in_simplex[static_cast<size_t>(active[i])] ? 1.0 : 0.0;
    if (ea(i) > 0) any_simplex = true;
    for (int j = 0; j < k; ++j) Haa(i, j) = H(active[i], active[j]);
  }
  const double ridge = 1e-12 * (1.0 + Haa.norm());
  Haa.diagonal().array() += ridge;

  if (has_simplex && any_simplex) {
    Mat K(k + 1, k + 1);
    K.setZero();
    K.topLeftCorner(k, k) = Haa;
    K.topRightCorner(k, 1) = ea;
    K.bottomLeftCorner(1, k) = ea.transpose();
    Vec rhs(k + 1);
    rhs.head(k) = -ca;
    rhs(k) = 1.0;
    Vec sol = K.fullPivLu().solve(rhs);
    out.w = sol.head(k);
    out.nu = sol(k);
  } else {
    out.w = Haa.fullPivLu().solve(-ca);
  }
  return out;
}

}  // namespace

Vec small_nonneg_qp(const Mat& H, const Vec& c, const std::vector<int>& simplex, int max_iter) {
  const int n = static_cast<int>(c.size());
  std::vector<bool> in_simplex(static_cast<size_t>(n), false);
  for (int i : simplex) in_simplex[static_cast<size_t>(i)] = true;
  const bool has_simplex = !simplex.empty();

  Vec w = Vec::Zero(n);
  std::vector<int> active;
  if (has_simplex) {
    int i0 = simplex.front();
    for (int i : simplex)
      if (c(i) < c(i0)) i0 = i;
    w(i0) = 1.0;
    active.push_back(i0);
  }

  auto objective = [&](const Vec& v) { return 0.5 * v.dot(H * v) + c.dot(v); };
  Vec best = w;
  double best_obj = objective(w);

  for (int iter = 0; iter < max_iter; ++iter) {
    SubSolution sub = solve_working_set(H, c, active, in_simplex, has_simplex);

    bool feasible = true;
    for (int i = 0; i < static_cast<int>(active.size()); ++i)
      if (sub.w(i) < -1e-12) feasible = false;

    if (feasible) {
      Vec w_new = Vec::Zero(n);
      for (int i = 0; i < static_cast<int>(active.size()); ++i)
        w_new(active[i]) = std::max(sub.w(i), 0.0);
      w = w_new;
      double obj = objective(w);
      if (obj < best_obj) {
        best_obj = obj;
        best = w;
      }
      // KKT: pick the most violated inactive gradient.
      Vec grad = H * w + c;
      int enter = -1;
      double worst = -1e-10 * (1.0 + grad.norm());
      for (int i = 0; i < n; ++i) {
        if (std::find(active.begin(), active.end(), i) != active.end()) continue;
        double v = grad(i) + (in_simplex[static_cast<size_t>(i)] ? sub.nu : 0.0);
        if (v < worst) {
          worst = v;
          enter = i;
        }
      }
      if (enter < 0) return w;
      active.push_back(enter);
      continue;
    }

    // Partial step to the nearest blocking bound, then drop it.
    double t = 1.0;
    int blocker = -1;
    for (int i = 0; i < static_cast<int>(active.size()); ++i) {
      if (sub.w(i) < -1e-12) {
        double wi = w(active[i]);
        double ti = wi / (wi - sub.w(i));
        if (ti < t) {
          t = ti;
          blocker = i;
        }
      }
    }
    if (blocker < 0) return best;
    for (int i = 0; i < static_cast<int>(active.size()); ++i) {
      double wi = w(active[i]);
      w(active[i]) = std::max(wi + t * (sub.w(i) - wi), 0.0);
    }
    w(active[static_cast<size_t>(blocker)]) = 0.0;
    active.erase(active.begin() + blocker);
    if (has_simplex) {
      bool any = false;
      for (int i : active)
        if (in_simplex[static_cast<size_t>(i)]) any = true;
      if (!any) {
        // never drop the last simplex member; re-add the best one
        int i0 = simplex.front();
        for (int i : simplex)
          if (c(i) < c(i0)) i0 = i;
        active.push_back(i0);
        w(i0) = 1.0;
      }
    }
  }
  return best;
}

}  // namespace barricade
