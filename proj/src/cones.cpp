#include "barricade/cones.hpp"

#include "barricade/horizon.hpp"
#include "barricade/sampling.hpp"
#include "barricade/simplex.hpp"
#include "barricade/support.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>

namespace barricade {

// ---------------------------------------------------------------------------
// ConeRep constructors
// ---------------------------------------------------------------------------

ConeRep ConeRep::whole_space(int n) {
  ConeRep k;
  k.kind = Kind::PolyhedralH;
  k.dim = n;
  k.A = Mat(0, n);
  return k;
}

ConeRep ConeRep::trivial(int n) {
  ConeRep k;
  k.kind = Kind::PolyhedralV;
  k.dim = n;
  return k;
}

ConeRep ConeRep::from_rows(Mat A) {
  ConeRep k;
  k.kind = Kind::PolyhedralH;
  k.dim = static_cast<int>(A.cols());
  // Drop zero rows.
  std::vector<int> keep;
  for (int i = 0; i < A.rows(); ++i)
    if (A.row(i).norm() > 1e-14) keep.push_back(i);
  k.A.resize(static_cast<Eigen::Index>(keep.size()), A.cols());
  for (size_t i = 0; i < keep.size(); ++i)
    k.A.row(static_cast<Eigen::Index>(i)) = A.row(keep[i]);
  return k;
}

ConeRep ConeRep::from_generators(std::vector<Vec> gens, int n) {
  ConeRep k;
  k.kind = Kind::PolyhedralV;
  k.dim = n;
  for (Vec& g : gens) {
    double ng = g.norm();
    if (ng > 1e-14) k.generators.push_back(g / ng);
  }
  return k;
}

ConeRep ConeRep::sampled(std::vector<Vec> dirs, int n) {
  ConeRep k;
  k.kind = Kind::Sampled;
  k.dim = n;
  for (Vec& d : dirs) {
    double nd = d.norm();
    if (nd > 1e-14) k.directions.push_back(d / nd);
  }
  return k;
}

// ---------------------------------------------------------------------------
// Cone predicates and LP helpers
// ---------------------------------------------------------------------------

namespace {

// max w'v over {Av <= 0} intersected with the face {s*v_j = 1, |v|_inf <= 1}.
std::optional<std::pair<double, Vec>> face_lp(const Mat& A, const Vec& w, int j, double s) {
  const int n = static_cast<int>(A.cols());
  LinearProgram lp;
  lp.A_ub.resize(A.rows() + 2 * n, n);
  lp.b_ub.resize(A.rows() + 2 * n);
  lp.A_ub.topRows(A.rows()) = A;
  lp.b_ub.head(A.rows()).setZero();
  lp.A_ub.middleRows(A.rows(), n) = Mat::Identity(n, n);
  lp.A_ub.bottomRows(n) = -Mat::Identity(n, n);
  lp.b_ub.tail(2 * n).setOnes();
  lp.A_eq = Mat::Zero(1, n);
  lp.A_eq(0, j) = s;
  lp.b_eq = Vec::Ones(1);
  lp.c = -w;
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  return std::make_pair(w.dot(sol.x), sol.x);
}

}  // namespace

bool cone_is_trivial(const ConeRep& K) {
  switch (K.kind) {
    case ConeRep::Kind::PolyhedralV:
      return K.generators.empty();
    case ConeRep::Kind::Sampled:
      return false;  // a sampled cone is never certified trivial
    case ConeRep::Kind::PolyhedralH: {
      if (K.A.rows() == 0) return K.dim == 0;
      for (int j = 0; j < K.dim; ++j) {
        for (double s : {1.0, -1.0}) {
          if (face_lp(K.A, Vec::Zero(K.dim), j, s)) return false;
        }
      }
      return true;
    }
  }
  return false;
}

bool cone_is_whole_space(const ConeRep& K) {
  switch (K.kind) {
    case ConeRep::Kind::PolyhedralH:
      return K.A.rows() == 0;
    case ConeRep::Kind::PolyhedralV: {
      if (K.generators.empty()) return false;
      for (int j = 0; j < K.dim; ++j) {
        for (double s : {1.0, -1.0}) {
          if (!cone_contains(K, s * Vec::Unit(K.dim, j))) return false;
        }
      }
      return true;
    }
    case ConeRep::Kind::Sampled:
      return false;
  }
  return false;
}

bool cone_contains(const ConeRep& K, const Vec& v, double tol) {
  require_dim(v, K.dim, "cone_contains");
  switch (K.kind) {
    case ConeRep::Kind::PolyhedralH:
      if (K.A.rows() == 0) return true;
      return ((K.A * v).array() <= tol * (1.0 + v.norm())).all();
    case ConeRep::Kind::PolyhedralV: {
      if (v.norm() <= tol) return true;
      if (K.generators.empty()) return false;
      Mat G(K.dim, static_cast<Eigen::Index>(K.generators.size()));
      for (size_t i = 0; i < K.generators.size(); ++i)
        G.col(static_cast<Eigen::Index>(i)) = K.generators[i];
      LinearProgram lp;
      lp.A_eq = G;
      lp.b_eq = v;
      lp.c = Vec::Zero(G.cols());
      lp.nonneg.assign(static_cast<size_t>(G.cols()), true);
      return lp_feasible(lp);
    }
    case ConeRep::Kind::Sampled: {
      // Sound but incomplete: membership in the sampled subcone.
      if (v.norm() <= tol) return true;
      if (K.directions.empty()) return false;
      Mat G(K.dim, static_cast<Eigen::Index>(K.directions.size()));
      for (size_t i = 0; i < K.directions.size(); ++i)
        G.col(static_cast<Eigen::Index>(i)) = K.directions[i];
      LinearProgram lp;
      lp.A_eq = G;
      lp.b_eq = v;
      lp.c = Vec::Zero(G.cols());
      lp.nonneg.assign(static_cast<size_t>(G.cols()), true);
      return lp_feasible(lp);
    }
  }
  return false;
}

ConeMax cone_linear_max(const ConeRep& K, const Vec& w) {
  ConeMax out;
  switch (K.kind) {
    case ConeRep::Kind::PolyhedralH: {
      if (K.A.rows() == 0) {
        out.mu = w.lpNorm<1>();
        Vec amax(K.dim);
        for (int j = 0; j < K.dim; ++j) amax(j) = w(j) >= 0 ? 1.0 : -1.0;
        out.argmax = amax.normalized();
        return out;
      }
      for (int j = 0; j < K.dim; ++j) {
        for (double s : {1.0, -1.0}) {
          auto r = face_lp(K.A, w, j, s);
          if (r && r->first > out.mu) {
            out.mu = r->first;
            out.argmax = r->second.normalized();
          }
        }
      }
      return out;  // mu = -inf means the cone is trivial
    }
    case ConeRep::Kind::PolyhedralV: {
      for (const Vec& g : K.generators) {
        double v = w.dot(g);
        if (v > out.mu) {
          out.mu = v;
          out.argmax = g;
        }
      }
      return out;
    }
    case ConeRep::Kind::Sampled: {
      out.exact = false;
      for (const Vec& d : K.directions) {
        double v = w.dot(d);
        if (v > out.mu) {
          out.mu = v;
          out.argmax = d;
        }
      }
      return out;
    }
  }
  return out;
}

Tribool cone_pointed(const ConeRep& K) {
  switch (K.kind) {
    case ConeRep::Kind::PolyhedralH: {
      if (K.A.rows() == 0) return K.dim == 0 ? Tribool::True : Tribool::False;
      Eigen::ColPivHouseholderQR<Mat> qr(K.A);
      qr.setThreshold(1e-10);
      return qr.rank() == K.dim ? Tribool::True : Tribool::False;
    }
    case ConeRep::Kind::PolyhedralV: {
      if (K.generators.empty()) return Tribool::True;
      Mat G(K.dim, static_cast<Eigen::Index>(K.generators.size()));
      for (size_t i = 0; i < K.generators.size(); ++i)
        G.col(static_cast<Eigen::Index>(i)) = K.generators[i];
      // Lineality exists iff some nonzero conic combination cancels.
      LinearProgram lp;
      const int m = static_cast<int>(K.generators.size());
      lp.A_eq = G;
      lp.b_eq = Vec::Zero(K.dim);
      lp.A_ub = Mat::Identity(m, m);
      lp.b_ub = Vec::Ones(m);
      lp.c = -Vec::Ones(m);
      lp.nonneg.assign(static_cast<size_t>(m), true);
      LpSolution sol = solve_lp(lp);
      if (sol.status == LpStatus::Optimal && -sol.objective > 1e-7) return Tribool::False;
      return Tribool::True;
    }
    case ConeRep::Kind::Sampled:
      return Tribool::Unknown;
  }
  return Tribool::Unknown;
}

std::vector<Vec> enumerate_cone_generators(const Mat& A) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  std::vector<Vec> gens;
  auto push_unique = [&](const Vec& v) {
    Vec u = v.normalized();
    for (const Vec& g : gens)
      if ((g - u).norm() < 1e-8) return;
    gens.push_back(u);
  };

  // Lineality basis (null space of A) contributes +-directions.
  Eigen::FullPivLU<Mat> lu(A);
  lu.setThreshold(1e-10);
  Mat null_basis = lu.kernel();
  if (null_basis.cols() > 0 && null_basis.norm() > 1e-12) {
    for (int j = 0; j < null_basis.cols(); ++j) {
      Vec b = null_basis.col(j);
      if (b.norm() < 1e-12) continue;
      push_unique(b);
      push_unique(-b);
    }
  }

  // Candidate extreme rays: null directions of (n-1)-subsets of rows.
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  std::vector<int> subset;
  auto consider_subset = [&](const std::vector<int>& rows) {
    Mat As(static_cast<Eigen::Index>(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i)
      As.row(static_cast<Eigen::Index>(i)) = A.row(rows[i]);
    Eigen::FullPivLU<Mat> slu(As);
    slu.setThreshold(1e-10);
    Mat ker = slu.kernel();
    if (ker.cols() != 1) return;
    Vec d = ker.col(0);
    if (d.norm() < 1e-12) return;
    d.normalize();
    if (((A * d).array() <= 1e-9).all()) push_unique(d);
    if (((A * (-d)).array() <= 1e-9).all()) push_unique(-d);
  };
  // all subsets of size n-1 (desk scale: m <= ~16, n <= 4)
  if (n >= 2) {
    std::vector<int> comb(n - 1);
    std::function<void(int, int)> rec = [&](int start, int k) {
      if (k == n - 1) {
        consider_subset(comb);
        return;
      }
      for (int i = start; i < m; ++i) {
        comb[k] = i;
        rec(i + 1, k + 1);
      }
    };
    rec(0, 0);
  } else {
    for (double s : {1.0, -1.0}) {
      Vec d(1);
      d << s;
      if (((A * d).array() <= 1e-9).all()) push_unique(d);
    }
  }
  return gens;
}

std::vector<Vec> cone_sample_directions(const ConeRep& K, int budget, unsigned seed) {
  std::vector<Vec> out;
  auto push_unique = [&](const Vec& v) {
    for (const Vec& g : out)
      if ((g - v).norm() < 1e-9) return;
    out.push_back(v);
  };
  switch (K.kind) {
    case ConeRep::Kind::PolyhedralV:
      for (const Vec& g : K.generators) push_unique(g);
      return out;
    case ConeRep::Kind::Sampled:
      for (const Vec& d : K.directions) {
        push_unique(d);
        if (static_cast<int>(out.size()) >= budget) break;
      }
      return out;
    case ConeRep::Kind::PolyhedralH: {
      if (K.A.rows() == 0) {
        for (int j = 0; j < K.dim; ++j) {
          push_unique(Vec::Unit(K.dim, j));
          push_unique(-Vec::Unit(K.dim, j));
        }
        return out;
      }
      if (K.dim <= 4) {
        for (const Vec& g : enumerate_cone_generators(K.A)) push_unique(g);
      } else {
        for (int j = 0; j < K.dim; ++j) {
          for (double s : {1.0, -1.0}) {
            auto r = face_lp(K.A, s * Vec::Unit(K.dim, j), j, s);
            if (r && r->second.norm() > 1e-9) push_unique(r->second.normalized());
          }
        }
      }
      if (static_cast<int>(out.size()) < budget) {
        for (const Vec& d : sphere_directions(K.dim, budget, seed)) {
          if (cone_contains(K, d)) push_unique(d);
          if (static_cast<int>(out.size()) >= budget) break;
        }
      }
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Recession cones
// ---------------------------------------------------------------------------

namespace {

ConeRep epigraph_recession(const Catalog1D& phi) {
  const double R = phi.horizon(1.0);
  const double L = phi.horizon(-1.0);
  std::vector<Eigen::RowVector2d> rows;
  if (std::isfinite(R)) rows.push_back(Eigen::RowVector2d(R, -1.0));
  else rows.push_back(Eigen::RowVector2d(1.0, 0.0));        // v <= 0
  if (std::isfinite(L)) rows.push_back(Eigen::RowVector2d(-L, -1.0));
  else rows.push_back(Eigen::RowVector2d(-1.0, 0.0));       // v >= 0
  if (!std::isfinite(R) && !std::isfinite(L))
    rows.push_back(Eigen::RowVector2d(0.0, -1.0));          // w >= 0
  Mat A(static_cast<Eigen::Index>(rows.size()), 2);
  for (size_t i = 0; i < rows.size(); ++i) A.row(static_cast<Eigen::Index>(i)) = rows[i];
  return ConeRep::from_rows(A);
}

ConeRep sublevel_recession(const SublevelSystem& sys) {
  const int n = sys.dimension();
  std::vector<Mat> hparts;
  bool sampled = false;
  for (const CatalogFn& f : sys.constraints()) {
    ConeRep k = horizon_zero_cone(f);
    if (k.kind == ConeRep::Kind::PolyhedralH) {
      hparts.push_back(k.A);
    } else if (k.kind == ConeRep::Kind::PolyhedralV && k.generators.empty()) {
      return ConeRep::trivial(n);
    } else {
      sampled = true;
    }
  }
  if (!sampled) {
    Eigen::Index rows = 0;
    for (const Mat& h : hparts) rows += h.rows();
    Mat A(rows, n);
    Eigen::Index at = 0;
    for (const Mat& h : hparts) {
      A.middleRows(at, h.rows()) = h;
      at += h.rows();
    }
    return ConeRep::from_rows(A);
  }
  // Sampled fallback: keep directions certified by every horizon.
  std::vector<Vec> dirs;
  for (const Vec& d : sphere_directions(n, 512, 0)) {
    bool ok = true;
    for (const CatalogFn& f : sys.constraints())
      if (f.horizon(d) > 1e-12) ok = false;
    if (ok) dirs.push_back(d);
  }
  return ConeRep::sampled(std::move(dirs), n);
}

}  // namespace

ConeRep recession_cone(const ConvexSet& S) {
  return std::visit(
      [&](const auto& s) -> ConeRep {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) {
          return ConeRep::from_rows(s.A());
        } else if constexpr (std::is_same_v<T, VSet>) {
          return ConeRep::from_generators(s.rays(), s.dimension());
        } else if constexpr (std::is_same_v<T, Ball>) {
          return ConeRep::trivial(s.dimension());
        } else if constexpr (std::is_same_v<T, Epigraph1D>) {
          return epigraph_recession(s.phi());
        } else {
          return sublevel_recession(s);
        }
      },
      S.rep());
}

Tribool is_bounded_exact(const ConvexSet& S) {
  Tribool rep = is_bounded_rep(S);
  if (rep != Tribool::Unknown) return rep;
  ConeRep K = recession_cone(S);
  if (K.exact()) return cone_is_trivial(K) ? Tribool::True : Tribool::False;
  return K.directions.empty() ? Tribool::Unknown : Tribool::False;
}

Tribool int_barc_nonempty(const ConvexSet& S) { return cone_pointed(recession_cone(S)); }

// ---------------------------------------------------------------------------
// Barrier classification
// ---------------------------------------------------------------------------

namespace {

// Worst normalized pairing over a far shell; used to validate interior
// verdicts against the direct criterion <x*,c> <= -alpha|c|.
double shell_worst_pairing(const ConvexSet& S, const Vec& xstar, double R) {
  const int n = S.dimension();
  const Vec anchor = S.anchor();
  double worst = -kInf;
  auto consider = [&](const Vec& c) {
    double nc = c.norm();
    if (nc >= 0.5 * R) worst = std::max(worst, xstar.dot(c) / nc);
  };
  Vec c = project(S, anchor + R * (xstar.norm() > 0 ? Vec(xstar.normalized()) : Vec::Unit(n, 0)));
  consider(c);
  for (int j = 0; j < n; ++j) {
    consider(project(S, anchor + R * Vec::Unit(n, j)));
    consider(project(S, anchor - R * Vec::Unit(n, j)));
  }
  for (int it = 0; it < 40; ++it) {
    Vec cand = project(S, c + (0.15 * R) * xstar.normalized());
    double nc = cand.norm();
    if (nc > 1e-9) {
      Vec scaled = project(S, cand * (R / nc));
      consider(cand);
      consider(scaled);
      c = scaled.norm() > 0.4 * R ? scaled : cand;
    }
  }
  return worst;
}

}  // namespace

BarrierClassification classify_barrier(const ConvexSet& S, const Vec& xstar, double tol) {
  require_finite(xstar, "classify_barrier");
  require_dim(xstar, S.dimension(), "classify_barrier");
  const double xn = xstar.norm();
  if (xn == 0.0)
    throw std::invalid_argument("classify_barrier: x* = 0 is handled by boundedness");

  const Vec w = xstar / xn;
  ConeRep K = recession_cone(S);
  ConeMax cm = cone_linear_max(K, w);

  BarrierClassification out;
  if (!cm.exact) {
    if (cm.mu > tol && cm.argmax) {
      out.verdict = BarrierClassification::Verdict::Outside;
      out.ray = cm.argmax;
      out.mu = cm.mu;
      return out;
    }
    throw InconclusiveError("classify_barrier: sampled cone with inconclusive margin", cm.mu);
  }

  const bool trivial = !std::isfinite(cm.mu) || cone_is_trivial(K);
  double mu2;
  if (trivial) {
    mu2 = -1.0;  // any alpha works for a bounded set
  } else if (K.kind == ConeRep::Kind::PolyhedralH) {
    mu2 = cm.mu < 0 ? cm.mu / std::sqrt(static_cast<double>(K.dim)) : cm.mu;
  } else {
    mu2 = cm.mu;
  }
  out.mu = trivial ? -kInf : cm.mu;

  if (trivial || cm.mu < -tol) {
    out.verdict = BarrierClassification::Verdict::InteriorPoint;
    double alpha = 0.5 * (-mu2) * xn;
    double R = 10.0;
    for (int round = 0; round < 4; ++round) {
      bool ok = true;
      double worst_R = R;
      for (double r : {R, 10.0 * R, 100.0 * R}) {
        double worst = shell_worst_pairing(S, xstar, r);
        if (worst > -alpha) {
          ok = false;
          worst_R = r;
        }
      }
      if (ok) break;
      // widen the validated region, then relax alpha as a last resort
      if (round < 2) R = 10.0 * worst_R;
      else alpha *= 0.5;
    }
    out.alpha = alpha;
    out.R = R;
    return out;
  }

  if (cm.mu > tol) {
    out.verdict = BarrierClassification::Verdict::Outside;
    out.ray = cm.argmax;
    return out;
  }

  // |mu| <= tol: membership in barc decides boundary vs outside.
  bool in_barc = in_barrier_cone(S, xstar);  // may throw InconclusiveError
  if (in_barc) {
    out.verdict = BarrierClassification::Verdict::BoundaryPoint;
  } else {
    out.verdict = BarrierClassification::Verdict::Outside;
    if (cm.argmax && w.dot(*cm.argmax) > 0) out.ray = cm.argmax;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Affine hull rank
// ---------------------------------------------------------------------------

int affine_hull_rank(const ConvexSet& S, Vec* normal_out) {
  const int n = S.dimension();
  const Vec anchor = S.anchor();
  const double scale = 10.0 * (1.0 + anchor.norm());
  Mat diffs(n, 2 * n + 2);
  Eigen::Index col = 0;
  for (int j = 0; j < n; ++j) {
    diffs.col(col++) = project(S, anchor + scale * Vec::Unit(n, j)) - anchor;
    diffs.col(col++) = project(S, anchor - scale * Vec::Unit(n, j)) - anchor;
  }
  for (const Vec& d : sphere_directions(n, 2, 7)) {
    diffs.col(col++) = project(S, anchor + scale * d) - anchor;
  }
  Eigen::ColPivHouseholderQR<Mat> qr(diffs.transpose());
  qr.setThreshold(1e-9);
  int rank = static_cast<int>(qr.rank());
  if (normal_out && rank < n) {
    Eigen::JacobiSVD<Mat> svd(diffs.transpose(), Eigen::ComputeFullV);
    *normal_out = svd.matrixV().col(n - 1);
  }
  return rank;
}

// ---------------------------------------------------------------------------
// SSP verdict
// ---------------------------------------------------------------------------

const char* to_string(SspVerdict::Verdict v) {
  switch (v) {
    case SspVerdict::Verdict::HasSSP: return "has_ssp";
    case SspVerdict::Verdict::LacksSSP: return "lacks_ssp";
    default: return "inconclusive";
  }
}

const char* to_string(SspVerdict::Rationale r) {
  switch (r) {
    case SspVerdict::Rationale::Bounded: return "bounded";
    case SspVerdict::Rationale::OneDimensional: return "one_dimensional";
    case SspVerdict::Rationale::WholeSpace: return "whole_space";
    case SspVerdict::Rationale::AffineHullProper: return "affine_hull_proper";
    case SspVerdict::Rationale::PolyhedralBoundary: return "polyhedral_boundary";
    case SspVerdict::Rationale::EpigraphConjugate: return "epigraph_conjugate";
    case SspVerdict::Rationale::SublevelProbe: return "sublevel_probe";
    case SspVerdict::Rationale::ConstraintDescent: return "constraint_descent";
    default: return "sample_budget_exhausted";
  }
}

namespace {

SspVerdict has_ssp(SspVerdict::Rationale r) {
  SspVerdict v;
  v.verdict = SspVerdict::Verdict::HasSSP;
  v.rationale = r;
  return v;
}

SspVerdict lacks_ssp(SspVerdict::Rationale r, Vec witness) {
  SspVerdict v;
  v.verdict = SspVerdict::Verdict::LacksSSP;
  v.rationale = r;
  v.witness = std::move(witness);
  return v;
}

SspVerdict inconclusive(SspVerdict::Rationale r) {
  SspVerdict v;
  v.verdict = SspVerdict::Verdict::Inconclusive;
  v.rationale = r;
  return v;
}

SspVerdict ssp_polyhedral_rows(const ConvexSet& S, const Mat& rows, const ConeRep& K,
                               double tol) {
  // Every barrier direction is a conic combination of the rows; at least
  // one row must sit on the boundary of the barrier cone.
  for (int i = 0; i < rows.rows(); ++i) {
    Vec a = rows.row(i).transpose();
    double na = a.norm();
    if (na < 1e-14) continue;
    a /= na;
    ConeMax cm = cone_linear_max(K, a);
    double mu = std::isfinite(cm.mu) ? cm.mu : -1.0;
    if (std::abs(mu) <= tol) return lacks_ssp(SspVerdict::Rationale::PolyhedralBoundary, a);
  }
  return inconclusive(SspVerdict::Rationale::SampleBudgetExhausted);
}

SspVerdict ssp_vset(const VSet& V, const ConeRep& K, double tol) {
  if (cone_is_whole_space(K)) return has_ssp(SspVerdict::Rationale::WholeSpace);
  const int n = V.dimension();
  const auto& rays = V.rays();
  Mat G(static_cast<Eigen::Index>(rays.size()), n);
  for (size_t i = 0; i < rays.size(); ++i) G.row(static_cast<Eigen::Index>(i)) = rays[i].transpose();
  // For each ray, look for a nonzero barrier direction orthogonal to it:
  // max -sum_i <x, r_i> subject to Gx <= 0, <x, r_j> = 0, |x|_inf <= 1.
  for (size_t j = 0; j < rays.size(); ++j) {
    LinearProgram lp;
    lp.A_ub.resize(G.rows() + 2 * n, n);
    lp.b_ub.resize(G.rows() + 2 * n);
    lp.A_ub.topRows(G.rows()) = G;
    lp.b_ub.head(G.rows()).setZero();
    lp.A_ub.middleRows(G.rows(), n) = Mat::Identity(n, n);
    lp.A_ub.bottomRows(n) = -Mat::Identity(n, n);
    lp.b_ub.tail(2 * n).setOnes();
    lp.A_eq = rays[j].transpose();
    lp.b_eq = Vec::Zero(1);
    lp.c = (G.transpose() * Vec::Ones(G.rows()));  // minimize sum of pairings
    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::Optimal && sol.x.norm() > tol && -sol.objective > tol) {
      return lacks_ssp(SspVerdict::Rationale::PolyhedralBoundary, sol.x.normalized());
    }
  }
  return inconclusive(SspVerdict::Rationale::SampleBudgetExhausted);
}

SspVerdict ssp_epigraph(const Epigraph1D& E) {
  const Catalog1D& phi = E.phi();
  const Interval dom = phi.domain();
  const Interval cdom = phi.conjugate_domain();
  // The v = 0 slice of barc is {0} iff dom(phi) is unbounded both ways.
  if (dom.bounded_above()) {
    Vec w(2);
    w << 1.0, 0.0;
    return lacks_ssp(SspVerdict::Rationale::EpigraphConjugate, w);
  }
  if (dom.bounded_below()) {
    Vec w(2);
    w << -1.0, 0.0;
    return lacks_ssp(SspVerdict::Rationale::EpigraphConjugate, w);
  }
  if (!cdom.is_open()) {
    double s0 = (cdom.bounded_above() && cdom.hi_closed) ? cdom.hi : cdom.lo;
    Vec w(2);
    w << s0, -1.0;
    return lacks_ssp(SspVerdict::Rationale::EpigraphConjugate, w.normalized());
  }
  return has_ssp(SspVerdict::Rationale::EpigraphConjugate);
}

SspVerdict ssp_sublevel(const ConvexSet& S, const ConeRep& K, double tol, unsigned seed) {
  // Candidate barrier-boundary directions: polar generators (rows of the
  // H-form) first, then low-discrepancy directions with a vanishing margin.
  std::vector<Vec> candidates;
  if (K.kind == ConeRep::Kind::PolyhedralH) {
    for (int i = 0; i < K.A.rows(); ++i) candidates.push_back(K.A.row(i).transpose().normalized());
  }
  for (const Vec& d : sphere_directions(S.dimension(), 256, seed)) candidates.push_back(d);

  bool any_inconclusive = false;
  int probes = 0;
  for (const Vec& d : candidates) {
    ConeMax cm = cone_linear_max(K, d);
    double mu = std::isfinite(cm.mu) ? cm.mu : -1.0;
    if (!cm.exact || std::abs(mu) > tol) continue;
    if (++probes > 16) break;
    try {
      if (in_barrier_cone(S, d)) {
        return lacks_ssp(SspVerdict::Rationale::SublevelProbe, d);
      }
    } catch (const InconclusiveError&) {
      any_inconclusive = true;
    }
  }
  (void)any_inconclusive;
  return inconclusive(SspVerdict::Rationale::SampleBudgetExhausted);
}

}  // namespace

SspVerdict ssp_verdict(const ConvexSet& S, double tol, unsigned seed) {
  if (is_bounded_exact(S) == Tribool::True) return has_ssp(SspVerdict::Rationale::Bounded);
  // Every closed convex subset of the line has the property: its barrier
  // cone is {0}, a half-line, or R, all open off the origin.
  if (S.dimension() == 1) return has_ssp(SspVerdict::Rationale::OneDimensional);

  Vec normal;
  if (affine_hull_rank(S, &normal) < S.dimension()) {
    return lacks_ssp(SspVerdict::Rationale::AffineHullProper, normal.normalized());
  }

  ConeRep K = recession_cone(S);
  return std::visit(
      [&](const auto& s) -> SspVerdict {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) {
          return ssp_polyhedral_rows(S, s.A(), K, tol);
        } else if constexpr (std::is_same_v<T, VSet>) {
          return ssp_vset(s, K, tol);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return has_ssp(SspVerdict::Rationale::Bounded);
        } else if constexpr (std::is_same_v<T, Epigraph1D>) {
          return ssp_epigraph(s);
        } else {
          return ssp_sublevel(S, K, tol, seed);
        }
      },
      S.rep());
}

}  // namespace barricade
