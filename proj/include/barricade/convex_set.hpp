#pragma once

#include "barricade/catalog1d.hpp"
#include "barricade/catalog_fn.hpp"
#include "barricade/types.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace barricade {

/// {x : Ax <= b}. Zero rows are dropped at construction; nonemptiness is
/// verified by a feasibility solve and a feasible anchor is kept.
class HPolyhedron {
 public:
  HPolyhedron(Mat A, Vec b);

  const Mat& A() const { return A_; }
  const Vec& b() const { return b_; }
  const Vec& anchor() const { return anchor_; }
  int dimension() const { return static_cast<int>(A_.cols()); }
  bool bounded() const { return bounded_; }

 private:
  Mat A_;
  Vec b_;
  Vec anchor_;
  bool bounded_ = false;
};

/// conv(points) + cone(rays); rays stored unit length.
class VSet {
 public:
  VSet(std::vector<Vec> points, std::vector<Vec> rays);

  const std::vector<Vec>& points() const { return points_; }
  const std::vector<Vec>& rays() const { return rays_; }
  int dimension() const { return static_cast<int>(points_.front().size()); }
  bool bounded() const { return rays_.empty(); }

 private:
  std::vector<Vec> points_;
  std::vector<Vec> rays_;
};

class Ball {
 public:
  Ball(Vec center, double radius);

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  int dimension() const { return static_cast<int>(center_.size()); }

 private:
  Vec center_;
  double radius_;
};

/// {(x, y) : y >= phi(x)} restricted to dom(phi) x R; always lives in R^2.
class Epigraph1D {
 public:
  explicit Epigraph1D(Catalog1D phi) : phi_(phi) {}

  const Catalog1D& phi() const { return phi_; }
  int dimension() const { return 2; }
  Vec anchor() const;

 private:
  Catalog1D phi_;
};

/// {x : f_i(x) <= 0 for all i}; nonemptiness checked by a feasibility probe.
class SublevelSystem {
 public:
  explicit SublevelSystem(std::vector<CatalogFn> constraints);

  const std::vector<CatalogFn>& constraints() const { return constraints_; }
  const Vec& anchor() const { return anchor_; }
  int dimension() const { return constraints_.front().dimension(); }
  double max_violation(const Vec& x) const;

 private:
  std::vector<CatalogFn> constraints_;
  Vec anchor_;
};

class ConvexSet {
 public:
  using Rep = std::variant<HPolyhedron, VSet, Ball, Epigraph1D, SublevelSystem>;

  ConvexSet(HPolyhedron s) : rep_(std::make_shared<Rep>(std::move(s))) {}
  ConvexSet(VSet s) : rep_(std::make_shared<Rep>(std::move(s))) {}
  ConvexSet(Ball s) : rep_(std::make_shared<Rep>(std::move(s))) {}
  ConvexSet(Epigraph1D s) : rep_(std::make_shared<Rep>(std::move(s))) {}
  ConvexSet(SublevelSystem s) : rep_(std::make_shared<Rep>(std::move(s))) {}

  const Rep& rep() const { return *rep_; }
  int dimension() const;
  /// A point of the set, available for every representation.
  Vec anchor() const;
  std::string kind() const;

 private:
  std::shared_ptr<const Rep> rep_;  // immutable after construction
};

bool contains(const ConvexSet& S, const Vec& x, double tol = kMembershipTol);

Vec project(const ConvexSet& S, const Vec& x, double tol = kProjectionTol,
            int max_iter = kMaxIter);

int dimension(const ConvexSet& S);

/// Boundedness decidable from the representation alone; SublevelSystem is
/// Unknown here (cone analysis decides it exactly from the horizons).
Tribool is_bounded_rep(const ConvexSet& S);

}  // namespace barricade
