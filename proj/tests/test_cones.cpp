#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barricade/cones.hpp"
#include "barricade/separation.hpp"
#include "barricade/support.hpp"

#include <random>

using namespace barricade;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

ConvexSet axis_line() {
  Mat A(2, 2);
  A << 0, 1, 0, -1;
  return ConvexSet(HPolyhedron(A, Vec::Zero(2)));
}

}  // namespace

TEST_CASE("recession cones of the fixtures") {
  // hyperbola region: nonnegative quadrant
  auto pair = counterexample_pair("hyperbola_line", 2);
  ConeRep KC = recession_cone(pair.C);
  REQUIRE(KC.exact());
  CHECK(cone_contains(KC, vec2(1, 0)));
  CHECK(cone_contains(KC, vec2(0, 1)));
  CHECK(cone_contains(KC, vec2(1, 1)));
  CHECK_FALSE(cone_contains(KC, vec2(-1, 0)));

  // paired with the axis line the common part is the positive x-ray
  ConeRep KD = recession_cone(pair.D);
  CHECK(cone_contains(KD, vec2(1, 0)));
  CHECK(cone_contains(KD, vec2(-1, 0)));
  CHECK_FALSE(cone_contains(KD, vec2(0, 1)));

  // epigraph of the square: the vertical ray
  ConeRep KE = recession_cone(ConvexSet(Epigraph1D(Catalog1D::square())));
  CHECK(cone_contains(KE, vec2(0, 1)));
  CHECK_FALSE(cone_contains(KE, vec2(1, 1e-3)));
  CHECK_FALSE(cone_contains(KE, vec2(0, -1)));

  CHECK(cone_is_trivial(recession_cone(ConvexSet(Ball(Vec::Zero(2), 1.0)))));
}

TEST_CASE("cone soundness: emitted directions are recession directions") {
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet(Epigraph1D(Catalog1D::exponential())));
  sets.push_back(ConvexSet(Epigraph1D(Catalog1D::absolute())));
  sets.push_back(axis_line());
  sets.push_back(ConvexSet(VSet({vec2(1, 1)}, {vec2(1, 0), vec2(1, 1)})));
  auto pair = counterexample_pair("hyperbola_line", 2);
  sets.push_back(pair.C);
  for (const ConvexSet& S : sets) {
    ConeRep K = recession_cone(S);
    Vec c0 = S.anchor();
    for (const Vec& v : cone_sample_directions(K, 16, 0)) {
      for (double lam : {1.0, 10.0, 100.0}) CHECK(contains(S, c0 + lam * v, 1e-5 * lam));
    }
  }
}

TEST_CASE("classify_barrier on the worked examples") {
  ConvexSet sq(Epigraph1D(Catalog1D::square()));
  auto b1 = classify_barrier(sq, vec2(0, -1));
  CHECK(b1.verdict == BarrierClassification::Verdict::InteriorPoint);
  CHECK(b1.alpha > 0);
  CHECK(b1.R > 0);

  ConvexSet ex(Epigraph1D(Catalog1D::exponential()));
  auto b2 = classify_barrier(ex, vec2(0, -1));
  CHECK(b2.verdict == BarrierClassification::Verdict::BoundaryPoint);
  auto b3 = classify_barrier(ex, vec2(1, -1));
  CHECK(b3.verdict == BarrierClassification::Verdict::InteriorPoint);

  auto line = axis_line();
  auto b4 = classify_barrier(line, vec2(1, 0));
  CHECK(b4.verdict == BarrierClassification::Verdict::Outside);
  REQUIRE(b4.ray.has_value());
  CHECK(std::abs((*b4.ray)(0)) == doctest::Approx(1.0).epsilon(1e-9));
  auto b5 = classify_barrier(line, vec2(0, 1));
  CHECK(b5.verdict == BarrierClassification::Verdict::BoundaryPoint);

  CHECK_THROWS_AS(classify_barrier(sq, Vec::Zero(2)), std::invalid_argument);
}

TEST_CASE("interior verdicts honor the far-shell criterion") {
  ConvexSet sq(Epigraph1D(Catalog1D::square()));
  auto b = classify_barrier(sq, vec2(0.3, -1));
  REQUIRE(b.verdict == BarrierClassification::Verdict::InteriorPoint);
  // direct scan: project far shells and check <x*, c> <= -alpha |c|
  Vec w = vec2(0.3, -1);
  for (double R : {10.0, 100.0, 1000.0}) {
    for (double x : {-std::sqrt(R), std::sqrt(R), 0.3 * std::sqrt(R)}) {
      Vec c = vec2(x, std::max(x * x, R));
      CHECK(w.dot(c) <= -b.alpha * c.norm() + 1e-7);
    }
  }
}

TEST_CASE("polar consistency against generator enumeration") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    int m = 2 + static_cast<int>(rng() % 7);
    Mat A(m, n);
    Vec x0(n);
    for (int j = 0; j < n; ++j) x0(j) = g(rng);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = g(rng);
    Vec b = A * x0 + Vec::Constant(m, 0.4);
    ConvexSet S{HPolyhedron(A, b)};
    std::vector<Vec> gens = enumerate_cone_generators(A);
    for (int k = 0; k < 6; ++k) {
      Vec w(n);
      for (int j = 0; j < n; ++j) w(j) = g(rng);
      w.normalize();
      bool strict_negative = true;
      for (const Vec& gen : gens)
        if (w.dot(gen) >= -kConeTol) strict_negative = false;
      auto cls = classify_barrier(S, w);
      bool interior = cls.verdict == BarrierClassification::Verdict::InteriorPoint;
      CHECK(interior == strict_negative);
      if (cls.verdict == BarrierClassification::Verdict::Outside) {
        CHECK_FALSE(support(S, w).is_finite());
      }
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("bounded iff every direction classifies interior") {
  ConvexSet ball(Ball(vec2(0.3, -0.7), 2.0));
  ConvexSet tri(VSet({vec2(0, 0), vec2(1, 0), vec2(0, 1)}, {}));
  ConvexSet wedge(VSet({vec2(0, 0)}, {vec2(1, 0.2)}));
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  int outside_wedge = 0;
  for (int t = 0; t < 64; ++t) {
    Vec w = vec2(g(rng), g(rng)).normalized();
    CHECK(classify_barrier(ball, w).verdict == BarrierClassification::Verdict::InteriorPoint);
    CHECK(classify_barrier(tri, w).verdict == BarrierClassification::Verdict::InteriorPoint);
    if (classify_barrier(wedge, w).verdict != BarrierClassification::Verdict::InteriorPoint)
      ++outside_wedge;
  }
  CHECK(outside_wedge > 0);
}

TEST_CASE("ssp verdicts on the worked examples") {
  CHECK(ssp_verdict(ConvexSet(Epigraph1D(Catalog1D::square()))).verdict ==
        SspVerdict::Verdict::HasSSP);

  auto ex = ssp_verdict(ConvexSet(Epigraph1D(Catalog1D::exponential())));
  CHECK(ex.verdict == SspVerdict::Verdict::LacksSSP);
  REQUIRE(ex.witness.has_value());
  CHECK((*ex.witness - vec2(0, -1)).norm() < 1e-9);
  // the witness really is a boundary point of the barrier cone
  CHECK(classify_barrier(ConvexSet(Epigraph1D(Catalog1D::exponential())), *ex.witness).verdict ==
        BarrierClassification::Verdict::BoundaryPoint);

  auto line = ssp_verdict(axis_line());
  CHECK(line.verdict == SspVerdict::Verdict::LacksSSP);
  CHECK(line.rationale == SspVerdict::Rationale::AffineHullProper);
  REQUIRE(line.witness.has_value());
  CHECK(std::abs((*line.witness)(1)) == doctest::Approx(1.0));

  CHECK(ssp_verdict(ConvexSet(Ball(Vec::Zero(2), 1.0))).verdict == SspVerdict::Verdict::HasSSP);

  // halfplane: unbounded, full-dimensional, boundary row witness
  Mat A(1, 2);
  A << 0, 1;
  auto hp = ssp_verdict(ConvexSet(HPolyhedron(A, Vec::Zero(1))));
  CHECK(hp.verdict == SspVerdict::Verdict::LacksSSP);
  CHECK(hp.rationale == SspVerdict::Rationale::PolyhedralBoundary);

  // whole plane as a vset: vacuously has the property
  auto whole = ssp_verdict(
      ConvexSet(VSet({vec2(0, 0)}, {vec2(1, 0), vec2(-1, 0), vec2(0, 1), vec2(0, -1)})));
  CHECK(whole.verdict == SspVerdict::Verdict::HasSSP);

  // half-lines in R^1 have the property
  Mat A1(1, 1);
  A1 << -1;
  CHECK(ssp_verdict(ConvexSet(HPolyhedron(A1, Vec::Zero(1)))).verdict ==
        SspVerdict::Verdict::HasSSP);

  // negsqrt epigraph: conjugate domain is open but the v = 0 slice is fat
  auto ns = ssp_verdict(ConvexSet(Epigraph1D(Catalog1D::neg_sqrt())));
  CHECK(ns.verdict == SspVerdict::Verdict::LacksSSP);

  // hyperbola region: honest inconclusive
  auto pair = counterexample_pair("hyperbola_line", 2);
  CHECK(ssp_verdict(pair.C).verdict == SspVerdict::Verdict::Inconclusive);
}

TEST_CASE("lacks-ssp witnesses are finite-support boundary directions") {
  std::vector<ConvexSet> sets;
  {
    Mat A(1, 2);
    A << 0, 1;
    sets.push_back(ConvexSet(HPolyhedron(A, Vec::Zero(1 * 1))));
  }
  sets.push_back(ConvexSet(Epigraph1D(Catalog1D::exponential())));
  sets.push_back(ConvexSet(Epigraph1D(Catalog1D::absolute())));
  sets.push_back(ConvexSet(VSet({vec2(0, 0)}, {vec2(1, 0)})));
  for (const ConvexSet& S : sets) {
    auto v = ssp_verdict(S);
    REQUIRE(v.verdict == SspVerdict::Verdict::LacksSSP);
    REQUIRE(v.witness.has_value());
    CHECK(in_barrier_cone(S, *v.witness));
    CHECK(classify_barrier(S, *v.witness).verdict !=
          BarrierClassification::Verdict::InteriorPoint);
  }
}

TEST_CASE("pointedness and affine hull detection") {
  CHECK(int_barc_nonempty(ConvexSet(Epigraph1D(Catalog1D::square()))) == Tribool::True);
  CHECK(int_barc_nonempty(axis_line()) == Tribool::False);
  CHECK(affine_hull_rank(axis_line()) == 1);
  CHECK(affine_hull_rank(ConvexSet(Ball(Vec::Zero(3), 1.0))) == 3);
  Vec normal;
  affine_hull_rank(axis_line(), &normal);
  CHECK(std::abs(normal(1)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bounded via exact cones for sublevel systems") {
  Mat Q = 2.0 * Mat::Identity(2, 2);
  ConvexSet disc(SublevelSystem({CatalogFn::quadratic(Q, Vec::Zero(2), -1.0)}));
  CHECK(is_bounded_exact(disc) == Tribool::True);
  auto pair = counterexample_pair("hyperbola_line", 2);
  CHECK(is_bounded_exact(pair.C) == Tribool::False);
}
