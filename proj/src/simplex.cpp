#include "barricade/simplex.hpp"

#include <algorithm>

namespace barricade {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kSimplexIterCap = 200000;

struct Tableau {
  Mat T;                     // m x N working matrix (B^{-1} A)
  Vec q;                     // m rhs, kept nonnegative
  std::vector<int> basis;    // basic column per row
  int n_struct = 0;          // structural columns (before artificials)

  int rows() const { return static_cast<int>(T.rows()); }
  int cols() const { return static_cast<int>(T.cols()); }

  void pivot(int r, int j) {
    const double piv = T(r, j);
    T.row(r) /= piv;
    q(r) /= piv;
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const double f = T(i, j);
      if (f != 0.0) {
        T.row(i) -= f * T.row(r);
        q(i) -= f * q(r);
        if (q(i) < 0.0 && q(i) > -1e-12) q(i) = 0.0;
      }
    }
    basis[r] = j;
  }
};

// Bland: entering = lowest-index column with negative reduced cost;
// leaving = lowest-index basic variable among minimum-ratio rows.
// `allowed` limits the entering candidates (used to freeze artificials).
enum class IterResult { Optimal, Unbounded, Pivoted };

IterResult simplex_iterate(Tableau& tab, const Vec& cost, int allowed_cols, int* enter_out) {
  const int m = tab.rows();
  Vec cb(m);
  for (int i = 0; i < m; ++i) cb(i) = cost(tab.basis[i]);

  int enter = -1;
  for (int j = 0; j < allowed_cols; ++j) {
    double rc = cost(j) - cb.dot(tab.T.col(j));
    if (rc < -kCostTol) {
      enter = j;
      break;
    }
  }
  if (enter < 0) return IterResult::Optimal;

  int leave = -1;
  double best_ratio = kInf;
  for (int i = 0; i < m; ++i) {
    double y = tab.T(i, enter);
    if (y > kPivotTol) {
      double ratio = tab.q(i) / y;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && (leave < 0 || tab.basis[i] < tab.basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
  }
  if (leave < 0) {
    if (enter_out) *enter_out = enter;
    return IterResult::Unbounded;
  }
  tab.pivot(leave, enter);
  return IterResult::Pivoted;
}

IterResult run_simplex(Tableau& tab, const Vec& cost, int allowed_cols, int* enter_out) {
  for (int it = 0; it < kSimplexIterCap; ++it) {
    IterResult r = simplex_iterate(tab, cost, allowed_cols, enter_out);
    if (r != IterResult::Pivoted) return r;
  }
  throw ConvergenceError("simplex: iteration cap exceeded", Vec(), kInf);
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int m_ub = static_cast<int>(lp.b_ub.size());
  const int m_eq = static_cast<int>(lp.b_eq.size());
  const int m = m_ub + m_eq;

  if (m_ub > 0 && lp.A_ub.cols() != n)
    throw DimensionError("solve_lp: A_ub column count mismatch");
  if (m_eq > 0 && lp.A_eq.cols() != n)
    throw DimensionError("solve_lp: A_eq column count mismatch");

  // Column layout: for each variable one column if nonneg, two (x+, x-) if
  // free; then one slack per inequality; artificials appended afterwards.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int nc = 0;
  for (int j = 0; j < n; ++j) {
    bool nn = j < static_cast<int>(lp.nonneg.size()) && lp.nonneg[j];
    pos_col[j] = nc++;
    if (!nn) neg_col[j] = nc++;
  }
  const int slack0 = nc;
  nc += m_ub;
  const int n_struct = nc;

  Mat A = Mat::Zero(m, n_struct);
  Vec b(m);
  for (int i = 0; i < m_ub; ++i) {
    for (int j = 0; j < n; ++j) {
      A(i, pos_col[j]) = lp.A_ub(i, j);
      if (neg_col[j] >= 0) A(i, neg_col[j]) = -lp.A_ub(i, j);
    }
    A(i, slack0 + i) = 1.0;
    b(i) = lp.b_ub(i);
  }
  for (int i = 0; i < m_eq; ++i) {
    for (int j = 0; j < n; ++j) {
      A(m_ub + i, pos_col[j]) = lp.A_eq(i, j);
      if (neg_col[j] >= 0) A(m_ub + i, neg_col[j]) = -lp.A_eq(i, j);
    }
    b(m_ub + i) = lp.b_eq(i);
  }
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0.0) {
      A.row(i) = -A.row(i);
      b(i) = -b(i);
    }
  }

  // Phase 1 with one artificial per row.
  Tableau tab;
  tab.T.resize(m, n_struct + m);
  tab.T.leftCols(n_struct) = A;
  tab.T.rightCols(m) = Mat::Identity(m, m);
  tab.q = b;
  tab.n_struct = n_struct;
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) tab.basis[i] = n_struct + i;

  Vec phase1_cost = Vec::Zero(n_struct + m);
  for (int i = 0; i < m; ++i) phase1_cost(n_struct + i) = 1.0;

  run_simplex(tab, phase1_cost, n_struct + m, nullptr);

  double infeas = 0.0;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] >= n_struct) infeas += tab.q(i);
  if (infeas > 1e-7) {
    LpSolution sol;
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  // Drive remaining artificials out of the basis; an all-zero row is
  // redundant and can be pivoted on nothing, so zero it out logically by
  // leaving the artificial basic at level zero (it never re-enters).
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= n_struct) {
      for (int j = 0; j < n_struct; ++j) {
        if (std::abs(tab.T(i, j)) > kPivotTol) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2: original cost over structural columns only.
  Vec phase2_cost = Vec::Zero(n_struct + m);
  for (int j = 0; j < n; ++j) {
    phase2_cost(pos_col[j]) = lp.c(j);
    if (neg_col[j] >= 0) phase2_cost(neg_col[j]) = -lp.c(j);
  }

  int enter = -1;
  IterResult r = run_simplex(tab, phase2_cost, n_struct, &enter);

  auto extract_x = [&]() {
    Vec z = Vec::Zero(n_struct + m);
    for (int i = 0; i < m; ++i) z(tab.basis[i]) = tab.q(i);
    Vec x(n);
    for (int j = 0; j < n; ++j) {
      x(j) = z(pos_col[j]);
      if (neg_col[j] >= 0) x(j) -= z(neg_col[j]);
    }
    return x;
  };

  LpSolution sol;
  sol.x = extract_x();
  sol.objective = lp.c.dot(sol.x);
  if (r == IterResult::Optimal) {
    sol.status = LpStatus::Optimal;
    return sol;
  }

  // Unbounded: assemble the improving ray from the entering column.
  Vec zray = Vec::Zero(n_struct + m);
  zray(enter) = 1.0;
  for (int i = 0; i < m; ++i) zray(tab.basis[i]) = -tab.T(i, enter);
  Vec ray(n);
  for (int j = 0; j < n; ++j) {
    ray(j) = zray(pos_col[j]);
    if (neg_col[j] >= 0) ray(j) -= zray(neg_col[j]);
  }
  sol.status = LpStatus::Unbounded;
  sol.ray = ray;
  return sol;
}

bool lp_feasible(const LinearProgram& lp, Vec* point) {
  LinearProgram probe = lp;
  probe.c = Vec::Zero(lp.c.size() > 0 ? lp.c.size()
                                      : (lp.A_ub.cols() > 0 ? lp.A_ub.cols() : lp.A_eq.cols()));
  LpSolution sol = solve_lp(probe);
  if (sol.status == LpStatus::Infeasible) return false;
  if (point) *point = sol.x;
  return true;
}

}  // namespace barricade
