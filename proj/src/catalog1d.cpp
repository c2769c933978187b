#include "barricade/catalog1d.hpp"

namespace barricade {

double Catalog1D::value(double x) const {
  switch (tag_) {
    case Tag1D::Square: return x * x;
    case Tag1D::Exp: return std::exp(x);
    case Tag1D::Abs: return std::abs(x);
    case Tag1D::Linear: return slope_ * x;
    case Tag1D::NegSqrtDom: return x >= 0.0 ? -std::sqrt(x) : kInf;
  }
  return kInf;
}

Interval Catalog1D::domain() const {
  if (tag_ == Tag1D::NegSqrtDom) return {0.0, kInf, true, true};
  return {};
}

double Catalog1D::subgradient(double x) const {
  switch (tag_) {
    case Tag1D::Square: return 2.0 * x;
    case Tag1D::Exp: return std::exp(x);
    case Tag1D::Abs: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    case Tag1D::Linear: return slope_;
    case Tag1D::NegSqrtDom: {
      if (x <= 0.0) return -kSubgradientCap;  // subdifferential empty at 0
      return std::max(-0.5 / std::sqrt(x), -kSubgradientCap);
    }
  }
  return 0.0;
}

double Catalog1D::conjugate(double s) const {
  if (!conjugate_domain().contains(s)) return kInf;
  switch (tag_) {
    case Tag1D::Square: return 0.25 * s * s;
    case Tag1D::Exp: return s > 0.0 ? s * std::log(s) - s : 0.0;
    case Tag1D::Abs: return 0.0;
    case Tag1D::Linear: return 0.0;
    case Tag1D::NegSqrtDom: return -0.25 / s;
  }
  return kInf;
}

Interval Catalog1D::conjugate_domain() const {
  switch (tag_) {
    case Tag1D::Square: return {};
    case Tag1D::Exp: return {0.0, kInf, true, true};
    case Tag1D::Abs: return {-1.0, 1.0, true, true};
    case Tag1D::Linear: return {slope_, slope_, true, true};
    case Tag1D::NegSqrtDom: return {-kInf, 0.0, true, false};
  }
  return {};
}

std::optional<double> Catalog1D::conjugate_argmax(double s) const {
  if (!conjugate_domain().contains(s)) return std::nullopt;
  switch (tag_) {
    case Tag1D::Square: return 0.5 * s;
    case Tag1D::Exp:
      if (s > 0.0) return std::log(s);
      return std::nullopt;  // sup over x of -e^x is 0, not attained
    case Tag1D::Abs: return 0.0;
    case Tag1D::Linear: return 0.0;
    case Tag1D::NegSqrtDom: return 0.25 / (s * s);
  }
  return std::nullopt;
}

double Catalog1D::horizon(double v) const {
  switch (tag_) {
    case Tag1D::Square: return v == 0.0 ? 0.0 : kInf;
    case Tag1D::Exp: return v <= 0.0 ? 0.0 : kInf;
    case Tag1D::Abs: return std::abs(v);
    case Tag1D::Linear: return slope_ * v;
    case Tag1D::NegSqrtDom: return v >= 0.0 ? 0.0 : kInf;
  }
  return kInf;
}

double Catalog1D::interior_point() const {
  return tag_ == Tag1D::NegSqrtDom ? 1.0 : 0.0;
}

std::string Catalog1D::name() const {
  switch (tag_) {
    case Tag1D::Square: return "square";
    case Tag1D::Exp: return "exp";
    case Tag1D::Abs: return "abs";
    case Tag1D::Linear: return "linear";
    case Tag1D::NegSqrtDom: return "negsqrt";
  }
  return "?";
}

}  // namespace barricade
