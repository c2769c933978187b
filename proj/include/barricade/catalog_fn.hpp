#pragma once

#include "barricade/catalog1d.hpp"
#include "barricade/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace barricade {

struct AffineFn {
  Vec g;
  double c = 0.0;
};

/// 0.5 x'Qx + b'x + c with Q symmetric PSD.
struct QuadraticFn {
  Mat Q;
  Vec b;
  double c = 0.0;
};

/// ||Wx + w||_2 + g'x + c.
struct NormAffineFn {
  Mat W;
  Vec w;
  Vec g;
  double c = 0.0;
};

/// phi applied to one coordinate: f(x) = phi(x_i).
struct Lift1DFn {
  int index = 0;
  Catalog1D phi = Catalog1D::square();
  int dim = 1;
};

/// exp(-x) - sqrt(x*y) on the nonnegative quadrant, +inf elsewhere.
struct ExpGeomeanFn {};

/// Proper convex lsc functions on R^n with closed-form horizon functions.
class CatalogFn {
 public:
  using Rep = std::variant<AffineFn, QuadraticFn, NormAffineFn, Lift1DFn, ExpGeomeanFn>;

  static CatalogFn affine(Vec g, double c);
  static CatalogFn quadratic(Mat Q, Vec b, double c);
  static CatalogFn norm_affine(Mat W, Vec w, Vec g, double c);
  static CatalogFn lift(int index, Catalog1D phi, int dim);
  static CatalogFn exp_geomean();

  int dimension() const;
  double value(const Vec& x) const;  // +inf outside dom
  /// Clamped subgradient: valid on int dom; at dom boundaries where the
  /// subdifferential is empty a capped descent direction is returned.
  Vec subgradient(const Vec& x) const;
  double horizon(const Vec& v) const;

  bool in_domain(const Vec& x, double tol = kMembershipTol) const;
  Vec domain_project(const Vec& x) const;  // dom is box-like for every entry
  Vec domain_interior_point() const;
  std::vector<Vec> suggested_bases() const;
  std::vector<Vec> domain_samples(int count) const;

  const Rep& rep() const { return rep_; }
  std::string describe() const;

 private:
  explicit CatalogFn(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

}  // namespace barricade
