#include "barricade/convex_set.hpp"

#include "barricade/qp.hpp"
#include "barricade/simplex.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace barricade {

namespace {

Vec project_halfspace(const Vec& x, const Vec& a, double b) {
  double viol = a.dot(x) - b;
  if (viol <= 0.0) return x;
  return x - (viol / a.squaredNorm()) * a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

HPolyhedron::HPolyhedron(Mat A, Vec b) {
  if (!all_finite(A) || !all_finite(b)) throw ConstructionError("hpoly: non-finite data");
  if (A.rows() != b.size()) throw DimensionError("hpoly: A/b row mismatch");
  if (A.cols() < 1) throw ConstructionError("hpoly: ambient dimension must be >= 1");

  std::vector<int> keep;
  for (int i = 0; i < A.rows(); ++i) {
    if (A.row(i).norm() > 1e-14) {
      keep.push_back(i);
    } else if (b(i) < 0.0) {
      throw ConstructionError("hpoly: zero row with negative rhs (empty set)");
    }
  }
  if (keep.empty()) throw ConstructionError("hpoly: no nonzero rows");
  A_.resize(static_cast<Eigen::Index>(keep.size()), A.cols());
  b_.resize(static_cast<Eigen::Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    A_.row(static_cast<Eigen::Index>(i)) = A.row(keep[i]);
    b_(static_cast<Eigen::Index>(i)) = b(keep[i]);
  }

  LinearProgram lp;
  lp.A_ub = A_;
  lp.b_ub = b_;
  lp.c = Vec::Zero(A_.cols());
  Vec pt;
  if (!lp_feasible(lp, &pt)) throw ConstructionError("hpoly: empty set");
  anchor_ = pt;

  // rec(S) = {v : Av <= 0} is trivial iff every coordinate LP over the
  // boxed cone attains 0.
  bounded_ = true;
  const int n = dimension();
  for (int j = 0; j < n && bounded_; ++j) {
    for (double sgn : {1.0, -1.0}) {
      LinearProgram cone;
      cone.A_ub.resize(A_.rows() + 2 * n, n);
      cone.b_ub.resize(A_.rows() + 2 * n);
      cone.A_ub.topRows(A_.rows()) = A_;
      cone.b_ub.head(A_.rows()).setZero();
      cone.A_ub.middleRows(A_.rows(), n) = Mat::Identity(n, n);
      cone.A_ub.bottomRows(n) = -Mat::Identity(n, n);
      cone.b_ub.tail(2 * n).setOnes();
      cone.c = Vec::Zero(n);
      cone.c(j) = -sgn;  // maximize sgn * v_j
      LpSolution sol = solve_lp(cone);
      if (sol.status == LpStatus::Optimal && -sol.objective > 1e-9) {
        bounded_ = false;
        break;
      }
    }
  }
}

VSet::VSet(std::vector<Vec> points, std::vector<Vec> rays) {
  if (points.empty()) throw ConstructionError("vset: needs at least one point");
  const Eigen::Index n = points.front().size();
  if (n < 1) throw ConstructionError("vset: ambient dimension must be >= 1");
  for (const Vec& p : points) {
    require_finite(p, "vset point");
    require_dim(p, n, "vset point");
  }
  for (Vec& r : rays) {
    require_finite(r, "vset ray");
    require_dim(r, n, "vset ray");
    double nr = r.norm();
    if (nr < 1e-14) throw ConstructionError("vset: zero ray");
    r /= nr;
  }
  points_ = std::move(points);
  rays_ = std::move(rays);
}

Ball::Ball(Vec center, double radius) : center_(std::move(center)), radius_(radius) {
  require_finite(center_, "ball center");
  if (center_.size() < 1) throw ConstructionError("ball: ambient dimension must be >= 1");
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw ConstructionError("ball: radius must be positive");
}

Vec Epigraph1D::anchor() const {
  Vec a(2);
  double x0 = phi_.interior_point();
  a << x0, phi_.value(x0);
  return a;
}

SublevelSystem::SublevelSystem(std::vector<CatalogFn> constraints)
    : constraints_(std::move(constraints)) {
  if (constraints_.empty()) throw ConstructionError("sublevel: needs at least one constraint");
  const int n = constraints_.front().dimension();
  for (const CatalogFn& f : constraints_)
    if (f.dimension() != n) throw DimensionError("sublevel: constraint dimension mismatch");

  auto dom_project_all = [&](Vec x) {
    for (const CatalogFn& f : constraints_) x = f.domain_project(x);
    return x;
  };

  // Feasibility probe: candidate pool first, then subgradient descent on
  // the max violation.
  std::vector<Vec> pool;
  for (const CatalogFn& f : constraints_) {
    pool.push_back(dom_project_all(f.domain_interior_point()));
    for (const Vec& s : f.domain_samples(16)) pool.push_back(dom_project_all(s));
  }
  for (const Vec& cand : pool) {
    if (max_violation(cand) <= 0.0) {
      anchor_ = cand;
      return;
    }
  }
  Vec x = pool.front();
  for (int k = 0; k < 5000; ++k) {
    double v = max_violation(x);
    if (v <= 0.0) {
      anchor_ = x;
      return;
    }
    int worst = 0;
    double vmax = -kInf;
    for (size_t i = 0; i < constraints_.size(); ++i) {
      double vi = constraints_[i].value(x);
      if (vi > vmax) {
        vmax = vi;
        worst = static_cast<int>(i);
      }
    }
    Vec g = constraints_[worst].subgradient(x);
    double gn = g.squaredNorm();
    if (gn < 1e-18) break;
    x = dom_project_all(x - ((v + 1e-9) / gn) * g);
  }
  throw ConstructionError("sublevel: feasibility probe found no point with all f_i <= 0");
}

double SublevelSystem::max_violation(const Vec& x) const {
  double v = -kInf;
  for (const CatalogFn& f : constraints_) v = std::max(v, f.value(x));
  return v;
}

// ---------------------------------------------------------------------------
// ConvexSet dispatch
// ---------------------------------------------------------------------------

int ConvexSet::dimension() const {
  return std::visit([](const auto& s) { return s.dimension(); }, rep());
}

Vec ConvexSet::anchor() const {
  return std::visit(
      [](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) return s.anchor();
        else if constexpr (std::is_same_v<T, VSet>) return s.points().front();
        else if constexpr (std::is_same_v<T, Ball>) return s.center();
        else if constexpr (std::is_same_v<T, Epigraph1D>) return s.anchor();
        else return s.anchor();
      },
      rep());
}

std::string ConvexSet::kind() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) return "hpoly";
        else if constexpr (std::is_same_v<T, VSet>) return "vset";
        else if constexpr (std::is_same_v<T, Ball>) return "ball";
        else if constexpr (std::is_same_v<T, Epigraph1D>) return "epigraph1d";
        else return "sublevel";
      },
      rep());
}

int dimension(const ConvexSet& S) { return S.dimension(); }

Tribool is_bounded_rep(const ConvexSet& S) {
  return std::visit(
      [](const auto& s) -> Tribool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) {
          return s.bounded() ? Tribool::True : Tribool::False;
        } else if constexpr (std::is_same_v<T, VSet>) {
          return s.bounded() ? Tribool::True : Tribool::False;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return Tribool::True;
        } else if constexpr (std::is_same_v<T, Epigraph1D>) {
          // No catalog entry has both a bounded domain and a bounded value.
          return Tribool::False;
        } else {
          return Tribool::Unknown;
        }
      },
      S.rep());
}

// ---------------------------------------------------------------------------
// Projection per representation
// ---------------------------------------------------------------------------

namespace {

Vec project_ball(const Ball& B, const Vec& x) {
  Vec d = x - B.center();
  double n = d.norm();
  if (n <= B.radius()) return x;
  return B.center() + (B.radius() / n) * d;
}

Vec project_hpoly(const HPolyhedron& P, const Vec& x, double tol, int max_iter) {
  const Mat& A = P.A();
  const Vec& b = P.b();
  const int m = static_cast<int>(A.rows());
  if (((A * x - b).array() <= 0.0).all()) return x;
  if (m == 1) return project_halfspace(x, A.row(0).transpose(), b(0));

  // Cyclic Dykstra over the halfspaces converges to the true projection
  // but its linear rate degrades on thin cones, so after a bounded number
  // of sweeps the dual active-set QP finishes the job exactly:
  // min_{y>=0} 0.5 y'AA'y - y'(Az - b), projection = z - A'y.
  Vec y = x;
  Mat corr = Mat::Zero(m, x.size());
  const int sweeps = std::min(std::max(64, max_iter / 100), 2000);
  const double scale = 1.0 + x.norm();
  for (int k = 0; k < sweeps; ++k) {
    Vec y_prev = y;
    for (int i = 0; i < m; ++i) {
      Vec u = y + corr.row(i).transpose();
      Vec v = project_halfspace(u, A.row(i).transpose(), b(i));
      corr.row(i) = (u - v).transpose();
      y = v;
    }
    double res = (A * y - b).maxCoeff();
    if ((y - y_prev).norm() <= 0.01 * tol * scale && res <= tol * scale) return y;
  }
  Mat H = A * A.transpose();
  Vec dual = small_nonneg_qp(H, -(A * x - b));
  Vec p = x - A.transpose() * dual;
  double res = (A * p - b).maxCoeff();
  if (res <= tol * scale) return p;
  // final feasibility nudge through one more Dykstra pass
  for (int k = 0; k < 50 && res > tol * scale; ++k) {
    for (int i = 0; i < m; ++i) p = project_halfspace(p, A.row(i).transpose(), b(i));
    res = (A * p - b).maxCoeff();
  }
  if (res <= tol * scale) return p;
  throw ConvergenceError("project: polyhedral projection did not converge", p, res);
}

// Active-set QP over the convex coefficients: w = (lambda, mu) minimizes
// 0.5|G'w - z|^2 with lambda on the simplex and mu >= 0.
Vec project_vset(const VSet& V, const Vec& z, double /*tol*/, int /*max_iter*/) {
  const int p = static_cast<int>(V.points().size());
  const int r = static_cast<int>(V.rays().size());
  const int n = V.dimension();
  if (p == 1 && r == 0) return V.points()[0];
  Mat G(p + r, n);
  for (int i = 0; i < p; ++i) G.row(i) = V.points()[i].transpose();
  for (int i = 0; i < r; ++i) G.row(p + i) = V.rays()[i].transpose();
  std::vector<int> simplex(static_cast<size_t>(p));
  for (int i = 0; i < p; ++i) simplex[static_cast<size_t>(i)] = i;
  Vec w = small_nonneg_qp(G * G.transpose(), -(G * z), simplex);
  return G.transpose() * w;
}

Vec project_epigraph(const Epigraph1D& E, const Vec& z, double /*tol*/, int /*max_iter*/) {
  const Catalog1D& phi = E.phi();
  const Interval dom = phi.domain();
  const double a = z(0), b = z(1);
  if (dom.contains(a) && b >= phi.value(a)) return z;

  auto dist2_graph = [&](double x) {
    double dy = phi.value(x) - b;
    double dx = x - a;
    return dx * dx + dy * dy;
  };

  // Feasible reference point gives an upper bound on the distance, which
  // brackets the boundary search. phi may overflow far out, so fall back
  // to the interior anchor when it does.
  double xf = dom.clamp(a);
  double yf = std::max(b, phi.value(xf));
  if (!std::isfinite(yf)) {
    xf = phi.interior_point();
    yf = std::max(b, phi.value(xf));
  }
  double D = std::hypot(xf - a, yf - b) + 1.0;

  double lo = dom.bounded_below() ? std::max(dom.lo, a - D) : a - D;
  double hi = dom.bounded_above() ? std::min(dom.hi, a + D) : a + D;
  if (lo > hi) lo = hi = dom.clamp(a);

  const int grid = 512;
  double best_x = lo, best_d = dist2_graph(lo);
  for (int i = 1; i <= grid; ++i) {
    double x = lo + (hi - lo) * i / grid;
    double d = dist2_graph(x);
    if (d < best_d) {
      best_d = d;
      best_x = x;
    }
  }
  // Golden-section refinement in the best grid cell's neighborhood.
  double cell = (hi - lo) / grid;
  double gl = std::max(lo, best_x - 2 * cell), gh = std::min(hi, best_x + 2 * cell);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c1 = gh - gr * (gh - gl), c2 = gl + gr * (gh - gl);
  double f1 = dist2_graph(c1), f2 = dist2_graph(c2);
  for (int it = 0; it < 120 && gh - gl > 1e-15 * (1.0 + std::abs(gl)); ++it) {
    if (f1 < f2) {
      gh = c2;
      c2 = c1;
      f2 = f1;
      c1 = gh - gr * (gh - gl);
      f1 = dist2_graph(c1);
    } else {
      gl = c1;
      c1 = c2;
      f1 = f2;
      c2 = gl + gr * (gh - gl);
      f2 = dist2_graph(c2);
    }
  }
  double xg = 0.5 * (gl + gh);
  Vec cand(2);
  cand << xg, phi.value(xg);

  // Domain-edge candidates (vertical boundary rays).
  auto consider_edge = [&](double xe) {
    Vec e(2);
    e << xe, std::max(b, phi.value(xe));
    if ((e - z).squaredNorm() < (cand - z).squaredNorm()) cand = e;
  };
  if (dom.bounded_below()) consider_edge(dom.lo);
  if (dom.bounded_above()) consider_edge(dom.hi);
  return cand;
}

// min 0.5||x-z||^2 + nu*f(x) over dom(f); strongly convex, solved by
// projected subgradient descent with backtracking.
Vec penalized_prox(const CatalogFn& f, const Vec& z, double nu, Vec x) {
  auto F = [&](const Vec& u) { return 0.5 * (u - z).squaredNorm() + nu * f.value(u); };
  x = f.domain_project(x);
  double t0 = 1.0;
  for (int k = 0; k < 200; ++k) {
    Vec g = (x - z) + nu * f.subgradient(x);
    double Fx = F(x);
    double t = t0;
    Vec x_next = x;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vec cand = f.domain_project(x - t * g);
      if (F(cand) <= Fx - 1e-4 * t * g.squaredNorm()) {
        x_next = cand;
        moved = true;
        t0 = std::min(t * 2.0, 1e6);
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    if ((x_next - x).norm() <= 1e-15 * (1.0 + x.norm())) {
      x = x_next;
      break;
    }
    x = x_next;
  }
  return x;
}

// Projection onto a single sublevel set {f <= 0} via the penalty
// multiplier: h(nu) = f(x(nu)) is nonincreasing along the prox path, so a
// doubling bracket plus safeguarded secant pins the boundary crossing.
Vec project_single_sublevel(const CatalogFn& f, const Vec& z, double tol) {
  Vec zd = f.domain_project(z);
  double h0 = f.value(zd);
  if (h0 <= 0.0) return zd;

  double nu_lo = 0.0, h_lo = h0;
  double nu_hi = 1.0;
  Vec x = zd;
  double h_hi = kInf;
  for (int k = 0; k < 80; ++k) {
    x = penalized_prox(f, z, nu_hi, x);
    h_hi = f.value(x);
    if (h_hi <= 0.0) break;
    nu_lo = nu_hi;
    h_lo = h_hi;
    nu_hi *= 2.0;
  }
  if (h_hi > 0.0)
    throw ConvergenceError("project: sublevel multiplier search failed", x, h_hi);

  Vec best = x;
  for (int k = 0; k < 60; ++k) {
    if (std::abs(h_hi) <= 1e-13 * (1.0 + std::abs(h0))) break;
    if ((nu_hi - nu_lo) <= 1e-15 * nu_hi) break;
    // secant candidate clipped into the bracket, midpoint fallback
    double nu = nu_hi;
    if (h_lo > 0.0 && h_lo - h_hi > 1e-300) {
      nu = nu_lo + (nu_hi - nu_lo) * h_lo / (h_lo - h_hi);
    }
    double mid = 0.5 * (nu_lo + nu_hi);
    if (!(nu > nu_lo && nu < nu_hi)) nu = mid;
    if (std::abs(nu - nu_lo) < 0.05 * (nu_hi - nu_lo) ||
        std::abs(nu_hi - nu) < 0.05 * (nu_hi - nu_lo))
      nu = mid;
    x = penalized_prox(f, z, nu, x);
    double h = f.value(x);
    if (h > 0.0) {
      nu_lo = nu;
      h_lo = h;
    } else {
      nu_hi = nu;
      h_hi = h;
      best = x;
    }
  }
  // Feasibility polish.
  for (int k = 0; k < 100; ++k) {
    double v = f.value(best);
    if (v <= 0.0) break;
    Vec g = f.subgradient(best);
    double gn = g.squaredNorm();
    if (gn < 1e-18) break;
    best = f.domain_project(best - ((v + 0.1 * tol) / gn) * g);
  }
  return best;
}

Vec project_sublevel(const SublevelSystem& S, const Vec& z, double tol, int max_iter) {
  const auto& fs = S.constraints();
  Vec zd = z;
  for (const CatalogFn& f : fs) zd = f.domain_project(zd);
  if (S.max_violation(zd) <= 0.0 && (zd - z).norm() <= 0.0) return zd;
  if (fs.size() == 1) return project_single_sublevel(fs[0], z, tol);

  bool zd_feasible = S.max_violation(zd) <= 0.0;
  if (zd_feasible && (zd - z).norm() <= tol) return zd;

  // Dykstra across the individual sublevel sets.
  const size_t m = fs.size();
  Vec y = z;
  std::vector<Vec> corr(m, Vec::Zero(z.size()));
  Vec best = zd_feasible ? zd : S.anchor();
  int sweeps = std::max(60, max_iter / 100);
  for (int k = 0; k < sweeps; ++k) {
    Vec y_prev = y;
    for (size_t i = 0; i < m; ++i) {
      Vec u = y + corr[i];
      Vec v = project_single_sublevel(fs[i], u, tol);
      corr[i] = u - v;
      y = v;
    }
    if (S.max_violation(y) <= tol) best = y;
    if ((y - y_prev).norm() <= 0.01 * tol && S.max_violation(y) <= tol) return y;
  }
  if (S.max_violation(best) <= tol) return best;
  throw ConvergenceError("project: sublevel Dykstra did not converge", best,
                         S.max_violation(best));
}

}  // namespace

Vec project(const ConvexSet& S, const Vec& x, double tol, int max_iter) {
  require_finite(x, "project");
  require_dim(x, S.dimension(), "project");
  if (!(tol > 0.0)) throw std::invalid_argument("project: tol must be positive");
  return std::visit(
      [&](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) return project_hpoly(s, x, tol, max_iter);
        else if constexpr (std::is_same_v<T, VSet>) return project_vset(s, x, tol, max_iter);
        else if constexpr (std::is_same_v<T, Ball>) return project_ball(s, x);
        else if constexpr (std::is_same_v<T, Epigraph1D>) return project_epigraph(s, x, tol, max_iter);
        else return project_sublevel(s, x, tol, max_iter);
      },
      S.rep());
}

bool contains(const ConvexSet& S, const Vec& x, double tol) {
  require_finite(x, "contains");
  require_dim(x, S.dimension(), "contains");
  if (!(tol > 0.0)) throw std::invalid_argument("contains: tol must be positive");
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) {
          return ((s.A() * x - s.b()).array() <= tol).all();
        } else if constexpr (std::is_same_v<T, Ball>) {
          return (x - s.center()).norm() <= s.radius() + tol;
        } else if constexpr (std::is_same_v<T, Epigraph1D>) {
          if (s.phi().domain().contains(x(0)) && x(1) >= s.phi().value(x(0))) return true;
          return (x - project(S, x)).norm() <= tol;
        } else if constexpr (std::is_same_v<T, SublevelSystem>) {
          Vec xd = x;
          for (const CatalogFn& f : s.constraints()) xd = f.domain_project(xd);
          if ((x - xd).norm() > tol) return false;
          return s.max_violation(xd) <= tol;
        } else {
          return (x - project(S, x)).norm() <= tol;
        }
      },
      S.rep());
}

}  // namespace barricade
