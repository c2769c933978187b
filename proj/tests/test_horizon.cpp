#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barricade/horizon.hpp"

#include <random>

using namespace barricade;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

CatalogFn f52() {
  Mat Q(2, 2);
  Q << 2, 0, 0, 0;
  return CatalogFn::quadratic(Q, vec2(0, 1), 0.0);  // y + x^2
}

std::vector<CatalogFn> standard_catalog() {
  std::vector<CatalogFn> fns;
  fns.push_back(CatalogFn::quadratic(2.0 * Mat::Identity(2, 2), Vec::Zero(2), 0.0));  // |x|^2
  fns.push_back(f52());
  fns.push_back(CatalogFn::affine(vec2(1, 0), 0.0));
  fns.push_back(CatalogFn::affine(Vec::Zero(2), 3.0));
  fns.push_back(CatalogFn::lift(0, Catalog1D::neg_sqrt(), 1));
  fns.push_back(CatalogFn::lift(0, Catalog1D::square(), 1));
  fns.push_back(CatalogFn::lift(0, Catalog1D::exponential(), 1));
  fns.push_back(CatalogFn::lift(0, Catalog1D::absolute(), 1));
  fns.push_back(CatalogFn::lift(0, Catalog1D::linear(2.0), 1));
  fns.push_back(CatalogFn::exp_geomean());
  {
    const double s = 1.0 / std::sqrt(2.0);
    Mat W(2, 2);
    W << s, -s, 0, 0;
    Vec w(2);
    w << 0, std::sqrt(2.0);
    fns.push_back(CatalogFn::norm_affine(W, w, vec2(-s, -s), 0.0));  // hyperbola gauge
  }
  fns.push_back(CatalogFn::norm_affine(Mat::Identity(2, 2), Vec::Zero(2), Vec::Zero(2), 0.0));
  return fns;
}

}  // namespace

TEST_CASE("horizon closed forms on the worked examples") {
  CHECK(horizon(f52(), vec2(0, -1)).value == doctest::Approx(-1.0));
  CHECK(horizon(f52(), vec2(1, 0)).value == kInf);
  CHECK(horizon(CatalogFn::exp_geomean(), vec2(1, 1)).value == doctest::Approx(-1.0));
  CHECK(horizon(CatalogFn::exp_geomean(), vec2(-1, 0)).value == kInf);
  CHECK(horizon(CatalogFn::lift(0, Catalog1D::neg_sqrt(), 1), vec1(1)).value ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(horizon(f52(), Vec::Zero(2)), std::invalid_argument);
}

TEST_CASE("positive homogeneity of the horizon") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const CatalogFn& f : standard_catalog()) {
    const int n = f.dimension();
    for (int t = 0; t < 30; ++t) {
      Vec v(n);
      for (int j = 0; j < n; ++j) v(j) = g(rng);
      if (v.norm() < 1e-9) continue;
      double lambda = 3.0;
      double h1 = f.horizon(v);
      double h3 = f.horizon(lambda * v);
      if (std::isfinite(h1)) {
        CHECK(h3 == doctest::Approx(lambda * h1).epsilon(1e-9));
      } else {
        CHECK(h3 == kInf);
      }
    }
  }
}

TEST_CASE("numeric difference quotients are nondecreasing and match closed forms") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const CatalogFn& f : standard_catalog()) {
    const int n = f.dimension();
    for (int t = 0; t < 10; ++t) {
      Vec v(n);
      for (int j = 0; j < n; ++j) v(j) = g(rng);
      if (v.norm() < 1e-9) continue;
      HorizonValue num = horizon_numeric(f, v);
      for (size_t i = 1; i < num.estimates.size(); ++i)
        CHECK(num.estimates[i] >= num.estimates[i - 1] - 1e-7 * (1.0 + std::abs(num.estimates[i])));
      double closed = f.horizon(v);
      if (std::isfinite(closed) && std::isfinite(num.value)) {
        CHECK(num.value <= closed + 1e-6);
        // sqrt-like entries approach the limit at O(1/sqrt(lambda))
        CHECK(num.value >= closed - std::max(3e-3, 2e-2 * std::abs(closed)) - 2e-6);
      }
    }
  }
}

TEST_CASE("horizon zero cones of the named functions") {
  // y + x^2: the closed negative vertical ray
  ConeRep k52 = horizon_zero_cone(f52());
  CHECK(cone_contains(k52, vec2(0, -1)));
  CHECK_FALSE(cone_contains(k52, vec2(0, 1)));
  CHECK_FALSE(cone_contains(k52, vec2(1e-2, -1)));

  // exp(-x) - sqrt(xy): the nonnegative quadrant
  ConeRep ke = horizon_zero_cone(CatalogFn::exp_geomean());
  CHECK(cone_contains(ke, vec2(1, 0)));
  CHECK(cone_contains(ke, vec2(0.3, 2)));
  CHECK_FALSE(cone_contains(ke, vec2(-0.1, 1)));

  // coercive quadratic: trivial
  CHECK(cone_is_trivial(
      horizon_zero_cone(CatalogFn::quadratic(2.0 * Mat::Identity(2, 2), Vec::Zero(2), 0.0))));

  // hyperbola gauge: the nonnegative quadrant through the rank-1 route
  const double s = 1.0 / std::sqrt(2.0);
  Mat W(2, 2);
  W << s, -s, 0, 0;
  Vec w(2);
  w << 0, std::sqrt(2.0);
  ConeRep kh = horizon_zero_cone(CatalogFn::norm_affine(W, w, vec2(-s, -s), 0.0));
  REQUIRE(kh.exact());
  CHECK(cone_contains(kh, vec2(1, 0)));
  CHECK(cone_contains(kh, vec2(0, 1)));
  CHECK_FALSE(cone_contains(kh, vec2(-1, 0)));
}

TEST_CASE("coercivity checks") {
  CHECK(check_coercive(CatalogFn::quadratic(2.0 * Mat::Identity(2, 2), Vec::Zero(2), 0.0)).holds ==
        Tribool::True);
  auto ns = check_coercive(CatalogFn::lift(0, Catalog1D::neg_sqrt(), 1));
  CHECK(ns.holds == Tribool::False);
  REQUIRE(!ns.witnesses.empty());
  CHECK(ns.witnesses.front().v(0) == doctest::Approx(1.0));

  auto c52 = check_coercive(f52());
  CHECK(c52.holds == Tribool::False);
  REQUIRE(!c52.witnesses.empty());
  CHECK(c52.witnesses.front().v(0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(c52.witnesses.front().v(1) < 0);
}

TEST_CASE("witnessed-descent (exists a diverging base) checks") {
  auto r52 = check_witnessed_descent(f52());
  CHECK(r52.holds == Tribool::True);

  auto re = check_witnessed_descent(CatalogFn::exp_geomean());
  CHECK(re.holds == Tribool::True);

  // coercive: vacuous
  CHECK(check_witnessed_descent(CatalogFn::quadratic(2.0 * Mat::Identity(2, 2), Vec::Zero(2), 0.0))
            .holds == Tribool::True);

  // nonzero affine: direction orthogonal to the gradient never diverges
  CHECK(check_witnessed_descent(CatalogFn::affine(vec2(1, 0), 0.0)).holds == Tribool::False);
}

TEST_CASE("uniform-descent (every base diverges) checks") {
  CHECK(check_uniform_descent(CatalogFn::lift(0, Catalog1D::neg_sqrt(), 1)).holds ==
        Tribool::True);

  auto re = check_uniform_descent(CatalogFn::exp_geomean());
  CHECK(re.holds == Tribool::False);
  REQUIRE(!re.witnesses.empty());
  // the recorded witness pair: direction (1,0) from the origin, values -> 0
  const DirectionProbe& p = re.witnesses.front();
  CHECK((p.v - vec2(1, 0)).norm() < 1e-9);
  REQUIRE(p.base.has_value());
  CHECK(p.base->norm() < 1e-9);
  CHECK(std::abs(p.values.back()) < 1e-3);

  // constant function: never diverges, cone is the whole space
  CHECK(check_uniform_descent(CatalogFn::affine(Vec::Zero(2), 3.0)).holds == Tribool::False);

  // 1-d linear with nonzero slope: every zero-cone direction diverges
  CHECK(check_uniform_descent(CatalogFn::lift(0, Catalog1D::linear(2.0), 1)).holds ==
        Tribool::True);
}

TEST_CASE("implication chain across the catalog") {
  for (const CatalogFn& f : standard_catalog()) {
    auto c8 = check_coercive(f);
    auto c9 = check_uniform_descent(f);
    auto c10 = check_witnessed_descent(f);
    INFO("catalog entry: " << f.describe());
    if (c8.holds == Tribool::True) CHECK(c9.holds == Tribool::True);
    if (c9.holds == Tribool::True) CHECK(c10.holds == Tribool::True);
  }
  // strictness witnesses: descent-everywhere without coercivity, and
  // witnessed descent without uniform descent
  CHECK(check_uniform_descent(CatalogFn::lift(0, Catalog1D::neg_sqrt(), 1)).holds ==
        Tribool::True);
  CHECK(check_coercive(CatalogFn::lift(0, Catalog1D::neg_sqrt(), 1)).holds == Tribool::False);
  CHECK(check_witnessed_descent(CatalogFn::exp_geomean()).holds == Tribool::True);
  CHECK(check_uniform_descent(CatalogFn::exp_geomean()).holds == Tribool::False);
}

TEST_CASE("subgradient inequality and finite differences") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const CatalogFn& f : standard_catalog()) {
    const int n = f.dimension();
    for (int t = 0; t < 40; ++t) {
      Vec x(n), y(n);
      for (int j = 0; j < n; ++j) {
        x(j) = g(rng);
        y(j) = g(rng);
      }
      x = f.domain_project(x);
      y = f.domain_project(y);
      double fx = f.value(x), fy = f.value(y);
      if (!std::isfinite(fx) || !std::isfinite(fy)) continue;
      Vec gr = f.subgradient(x);
      if (gr.lpNorm<Eigen::Infinity>() >= 0.5 * kSubgradientCap) continue;  // clamped boundary
      CHECK(fy >= fx + gr.dot(y - x) - 1e-9);
      // central differences at clearly interior smooth points
      Vec xi = x;
      bool interior = std::isfinite(f.value(xi + Vec::Constant(n, 1e-4))) &&
                      std::isfinite(f.value(xi - Vec::Constant(n, 1e-4)));
      bool smooth_here = true;
      if (f.describe().find("abs") != std::string::npos && std::abs(xi(0)) < 1e-2)
        smooth_here = false;
      if (interior && smooth_here) {
        for (int j = 0; j < n; ++j) {
          double h = 1e-6 * (1.0 + std::abs(xi(j)));
          Vec e = Vec::Zero(n);
          e(j) = h;
          double fd = (f.value(xi + e) - f.value(xi - e)) / (2 * h);
          CHECK(std::abs(fd - gr(j)) < 1e-4 * (1.0 + std::abs(fd)));
        }
      }
    }
  }
}

TEST_CASE("certify_and_solve: compact solution at the parabola origin") {
  ConvexSet M(Epigraph1D(Catalog1D::square()));
  ExistenceReport rep = certify_and_solve(M, f52());
  CHECK(rep.conclusion == ExistenceReport::Conclusion::NonemptyCompact);
  REQUIRE(rep.solution.has_value());
  CHECK(rep.solution->norm() <= 1e-5);
  CHECK(std::abs(rep.best_value) <= 1e-6);
  CHECK(rep.kkt_residual <= kKktTol);
  CHECK_FALSE(rep.nonattainment);
}

TEST_CASE("certify_and_solve: unattained infimum over the axis") {
  Mat A(2, 2);
  A << 0, 1, 0, -1;
  ConvexSet M(HPolyhedron(A, Vec::Zero(2)));
  ExistenceReport rep = certify_and_solve(M, CatalogFn::exp_geomean());
  CHECK(rep.conclusion == ExistenceReport::Conclusion::HypothesesFailed);
  REQUIRE(rep.failed.size() == 1);
  CHECK(rep.failed[0] == "ssp");
  CHECK(rep.nonattainment);
  CHECK(rep.best_value > 0.0);
  CHECK(rep.best_value < 1e-3);
  CHECK(rep.witnessed_descent.holds == Tribool::True);
  CHECK(rep.bounded_below == Tribool::True);
}

TEST_CASE("certify_and_solve: linear objective over the ball") {
  ConvexSet M(Ball(Vec::Zero(2), 1.0));
  ExistenceReport rep = certify_and_solve(M, CatalogFn::affine(vec2(1, 0), 0.0));
  CHECK(rep.conclusion == ExistenceReport::Conclusion::NonemptyCompact);
  REQUIRE(rep.solution.has_value());
  CHECK((*rep.solution - vec2(-1, 0)).norm() < 1e-5);
  CHECK(rep.best_value == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("certify_and_solve: unbounded below on the half-line") {
  Mat A(1, 1);
  A << -1;
  ConvexSet M(HPolyhedron(A, Vec::Zero(1)));
  ExistenceReport rep = certify_and_solve(M, CatalogFn::lift(0, Catalog1D::neg_sqrt(), 1));
  CHECK(rep.conclusion == ExistenceReport::Conclusion::HypothesesFailed);
  REQUIRE(!rep.failed.empty());
  CHECK(rep.failed[0] == "bounded_below");
  CHECK(rep.bounded_below == Tribool::False);
  // descent-everywhere holds for this entry, so the SSP route is intact
  CHECK(rep.ssp.verdict == SspVerdict::Verdict::HasSSP);
}

TEST_CASE("solver value matches a dense grid oracle") {
  ConvexSet M(Epigraph1D(Catalog1D::square()));
  CatalogFn f = f52();
  ExistenceReport rep = certify_and_solve(M, f);
  double best = kInf;
  for (int i = -100; i <= 100; ++i) {
    for (int j = -100; j <= 100; ++j) {
      Vec x = vec2(0.1 * i, 0.1 * j);
      if (x.norm() > 10.0 || !contains(M, x, 1e-9)) continue;
      best = std::min(best, f.value(x));
    }
  }
  CHECK(std::abs(rep.best_value - best) < 1e-3);
}
