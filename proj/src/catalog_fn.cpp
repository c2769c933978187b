#include "barricade/catalog_fn.hpp"

#include "barricade/sampling.hpp"

#include <Eigen/Eigenvalues>

namespace barricade {

namespace {

// sqrt(a/b) clamped for the geometric-mean partials; 0 when a vanishes.
double clamped_sqrt_ratio(double a, double b) {
  if (a <= 0.0) return 0.0;
  if (b <= a / (kSubgradientCap * kSubgradientCap)) return kSubgradientCap;
  return std::sqrt(a / b);
}

}  // namespace

CatalogFn CatalogFn::affine(Vec g, double c) {
  require_finite(g, "affine");
  if (g.size() == 0) throw ConstructionError("affine: empty gradient");
  return CatalogFn(AffineFn{std::move(g), c});
}

CatalogFn CatalogFn::quadratic(Mat Q, Vec b, double c) {
  if (!all_finite(Q) || !all_finite(b)) throw ConstructionError("quadratic: non-finite data");
  if (Q.rows() != Q.cols() || Q.rows() != b.size())
    throw DimensionError("quadratic: Q/b shape mismatch");
  Mat sym = 0.5 * (Q + Q.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  if (es.eigenvalues().minCoeff() < -1e-9 * (1.0 + sym.norm()))
    throw ConstructionError("quadratic: Q must be positive semidefinite");
  return CatalogFn(QuadraticFn{std::move(sym), std::move(b), c});
}

CatalogFn CatalogFn::norm_affine(Mat W, Vec w, Vec g, double c) {
  if (!all_finite(W) || !all_finite(w) || !all_finite(g))
    throw ConstructionError("norm_affine: non-finite data");
  if (W.rows() != w.size() || W.cols() != g.size())
    throw DimensionError("norm_affine: W/w/g shape mismatch");
  return CatalogFn(NormAffineFn{std::move(W), std::move(w), std::move(g), c});
}

CatalogFn CatalogFn::lift(int index, Catalog1D phi, int dim) {
  if (dim < 1 || index < 0 || index >= dim) throw ConstructionError("lift: bad index/dim");
  return CatalogFn(Lift1DFn{index, phi, dim});
}

CatalogFn CatalogFn::exp_geomean() { return CatalogFn(ExpGeomeanFn{}); }

int CatalogFn::dimension() const {
  return std::visit(
      [](const auto& f) -> int {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, AffineFn>) return static_cast<int>(f.g.size());
        else if constexpr (std::is_same_v<T, QuadraticFn>) return static_cast<int>(f.b.size());
        else if constexpr (std::is_same_v<T, NormAffineFn>) return static_cast<int>(f.g.size());
        else if constexpr (std::is_same_v<T, Lift1DFn>) return f.dim;
        else return 2;
      },
      rep_);
}

double CatalogFn::value(const Vec& x) const {
  require_dim(x, dimension(), "CatalogFn::value");
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, AffineFn>) {
          return f.g.dot(x) + f.c;
        } else if constexpr (std::is_same_v<T, QuadraticFn>) {
          return 0.5 * x.dot(f.Q * x) + f.b.dot(x) + f.c;
        } else if constexpr (std::is_same_v<T, NormAffineFn>) {
          return (f.W * x + f.w).norm() + f.g.dot(x) + f.c;
        } else if constexpr (std::is_same_v<T, Lift1DFn>) {
          return f.phi.value(x(f.index));
        } else {
          if (x(0) < 0.0 || x(1) < 0.0) return kInf;
          return std::exp(-x(0)) - std::sqrt(x(0) * x(1));
        }
      },
      rep_);
}

Vec CatalogFn::subgradient(const Vec& x) const {
  require_dim(x, dimension(), "CatalogFn::subgradient");
  return std::visit(
      [&](const auto& f) -> Vec {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, AffineFn>) {
          return f.g;
        } else if constexpr (std::is_same_v<T, QuadraticFn>) {
          return f.Q * x + f.b;
        } else if constexpr (std::is_same_v<T, NormAffineFn>) {
          Vec r = f.W * x + f.w;
          double nr = r.norm();
          if (nr > 1e-14) return f.W.transpose() * (r / nr) + f.g;
          return f.g;
        } else if constexpr (std::is_same_v<T, Lift1DFn>) {
          Vec g = Vec::Zero(f.dim);
          g(f.index) = f.phi.subgradient(x(f.index));
          return g;
        } else {
          Vec g(2);
          if (x(0) <= 1e-12 && x(1) <= 1e-12) {
            // at the origin the subdifferential is nonempty; (-5/4, -1)
            // satisfies g.d <= f'(0; d) = -u - sqrt(uv) on the quadrant
            g << -1.25, -1.0;
            return g;
          }
          g(0) = -std::exp(-std::max(x(0), 0.0)) - 0.5 * clamped_sqrt_ratio(x(1), x(0));
          g(1) = -0.5 * clamped_sqrt_ratio(x(0), x(1));
          return g;
        }
      },
      rep_);
}

double CatalogFn::horizon(const Vec& v) const {
  require_dim(v, dimension(), "CatalogFn::horizon");
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, AffineFn>) {
          return f.g.dot(v);
        } else if constexpr (std::is_same_v<T, QuadraticFn>) {
          double qn = (f.Q * v).norm();
          if (qn > 1e-10 * (1.0 + f.Q.norm() * v.norm())) return kInf;
          return f.b.dot(v);
        } else if constexpr (std::is_same_v<T, NormAffineFn>) {
          return (f.W * v).norm() + f.g.dot(v);
        } else if constexpr (std::is_same_v<T, Lift1DFn>) {
          return f.phi.horizon(v(f.index));
        } else {
          if (v(0) < 0.0 || v(1) < 0.0) return kInf;
          return -std::sqrt(v(0) * v(1));
        }
      },
      rep_);
}

bool CatalogFn::in_domain(const Vec& x, double tol) const {
  return (x - domain_project(x)).norm() <= tol;
}

Vec CatalogFn::domain_project(const Vec& x) const {
  return std::visit(
      [&](const auto& f) -> Vec {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Lift1DFn>) {
          Vec y = x;
          y(f.index) = f.phi.domain().clamp(y(f.index));
          return y;
        } else if constexpr (std::is_same_v<T, ExpGeomeanFn>) {
          return x.cwiseMax(0.0);
        } else {
          return x;
        }
      },
      rep_);
}

Vec CatalogFn::domain_interior_point() const {
  const int n = dimension();
  return std::visit(
      [&](const auto& f) -> Vec {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Lift1DFn>) {
          Vec y = Vec::Zero(n);
          y(f.index) = f.phi.interior_point();
          return y;
        } else if constexpr (std::is_same_v<T, ExpGeomeanFn>) {
          return Vec::Ones(2);
        } else {
          return Vec::Zero(n);
        }
      },
      rep_);
}

std::vector<Vec> CatalogFn::suggested_bases() const {
  std::vector<Vec> bases;
  bases.push_back(domain_interior_point());
  if (std::holds_alternative<ExpGeomeanFn>(rep_)) {
    Vec v(2);
    v << 2.0, 2.0;
    bases.push_back(v);
  }
  return bases;
}

std::vector<Vec> CatalogFn::domain_samples(int count) const {
  const int n = dimension();
  std::vector<Vec> out;
  out.reserve(count);
  out.push_back(domain_project(Vec::Zero(n)));
  if (static_cast<int>(out.size()) < count) out.push_back(domain_interior_point());
  unsigned long long idx = 1;
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13};
  while (static_cast<int>(out.size()) < count) {
    Vec x(n);
    for (int j = 0; j < n; ++j) x(j) = -3.0 + 6.0 * halton(idx, primes[j % 6]);
    ++idx;
    out.push_back(domain_project(x));
  }
  return out;
}

std::string CatalogFn::describe() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, AffineFn>) return "affine";
        else if constexpr (std::is_same_v<T, QuadraticFn>) return "quadratic";
        else if constexpr (std::is_same_v<T, NormAffineFn>) return "norm_affine";
        else if constexpr (std::is_same_v<T, Lift1DFn>) return "lift1d(" + f.phi.name() + ")";
        else return "exp_geomean";
      },
      rep_);
}

}  // namespace barricade
