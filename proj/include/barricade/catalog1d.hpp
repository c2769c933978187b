#pragma once

#include "barricade/types.hpp"

#include <optional>
#include <string>

namespace barricade {

/// Magnitude cap used when a classical subgradient does not exist at a
/// domain boundary (e.g. -sqrt at 0). Clamped directions are descent
/// directions only, never certificates.
inline constexpr double kSubgradientCap = 1e6;

enum class Tag1D { Square, Exp, Abs, Linear, NegSqrtDom };

/// Closed-form scalar convex functions. Each entry carries its value,
/// subgradient, Legendre conjugate with domain, recession (horizon)
/// function and an interior point of its domain.
class Catalog1D {
 public:
  static Catalog1D square() { return Catalog1D(Tag1D::Square, 0.0); }
  static Catalog1D exponential() { return Catalog1D(Tag1D::Exp, 0.0); }
  static Catalog1D absolute() { return Catalog1D(Tag1D::Abs, 0.0); }
  static Catalog1D linear(double slope) { return Catalog1D(Tag1D::Linear, slope); }
  static Catalog1D neg_sqrt() { return Catalog1D(Tag1D::NegSqrtDom, 0.0); }

  Tag1D tag() const { return tag_; }
  double slope() const { return slope_; }

  double value(double x) const;
  Interval domain() const;
  double subgradient(double x) const;

  double conjugate(double s) const;
  Interval conjugate_domain() const;
  /// Maximizer of s*x - value(x) when the sup is attained.
  std::optional<double> conjugate_argmax(double s) const;

  double horizon(double v) const;
  double interior_point() const;

  std::string name() const;

 private:
  Catalog1D(Tag1D tag, double slope) : tag_(tag), slope_(slope) {}

  Tag1D tag_;
  double slope_;
};

}  // namespace barricade
