#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barricade/convex_set.hpp"

#include <random>

using namespace barricade;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

ConvexSet axis_strip() {
  Mat A(2, 2);
  A << 0, 1, 0, -1;  // y <= 0 and -y <= 0: the x-axis
  return ConvexSet(HPolyhedron(A, Vec::Zero(2)));
}

// All subsets of <= n active rows, equality-constrained least squares,
// feasible minimizer wins; oracle for small H-polyhedra.
Vec brute_force_projection(const HPolyhedron& P, const Vec& z) {
  const Mat& A = P.A();
  const Vec& b = P.b();
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  Vec best = z;
  double best_d = kInf;
  if (((A * z - b).array() <= 1e-10).all()) return z;
  for (int mask = 0; mask < (1 << m); ++mask) {
    int cnt = __builtin_popcount(static_cast<unsigned>(mask));
    if (cnt == 0 || cnt > n) continue;
    Mat As(cnt, n);
    Vec bs(cnt);
    int r = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) {
        As.row(r) = A.row(i);
        bs(r) = b(i);
        ++r;
      }
    // minimize |x - z|^2 s.t. As x = bs via the KKT system
    Mat K(n + cnt, n + cnt);
    K.setZero();
    K.topLeftCorner(n, n) = Mat::Identity(n, n);
    K.topRightCorner(n, cnt) = As.transpose();
    K.bottomLeftCorner(cnt, n) = As;
    Vec rhs(n + cnt);
    rhs.head(n) = z;
    rhs.tail(cnt) = bs;
    Eigen::FullPivLU<Mat> lu(K);
    if (!lu.isInvertible()) continue;
    Vec sol = lu.solve(rhs);
    Vec x = sol.head(n);
    if (((A * x - b).array() <= 1e-8).all()) {
      double d = (x - z).norm();
      if (d < best_d) {
        best_d = d;
        best = x;
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("membership on the catalog fixtures") {
  ConvexSet ball(Ball(Vec::Zero(2), 1.0));
  CHECK(contains(ball, vec2(1, 0), 1e-12));
  CHECK_FALSE(contains(ball, vec2(1.1, 0), 1e-9));

  ConvexSet epi(Epigraph1D(Catalog1D::square()));
  CHECK_FALSE(contains(epi, vec2(2, 3), 1e-12));  // 3 < 4
  CHECK(contains(epi, vec2(2, 4), 1e-12));

  ConvexSet line = axis_strip();
  CHECK(contains(line, vec2(5, 0), 1e-12));
  CHECK_FALSE(contains(line, vec2(5, 1e-3), 1e-9));
}

TEST_CASE("construction rejects bad inputs") {
  CHECK_THROWS_AS(Ball(Vec::Zero(2), 0.0), ConstructionError);
  CHECK_THROWS_AS(VSet({}, {}), ConstructionError);
  Vec nanv(2);
  nanv << std::numeric_limits<double>::quiet_NaN(), 0.0;
  CHECK_THROWS(Ball(nanv, 1.0));
  // x <= -1 and x >= 1: empty
  Mat A(2, 1);
  A << 1, -1;
  Vec b(2);
  b << -1, -1;
  CHECK_THROWS_AS(HPolyhedron(A, b), ConstructionError);
  // empty sublevel: e^x <= 0 has no solution
  CHECK_THROWS_AS(SublevelSystem({CatalogFn::lift(0, Catalog1D::exponential(), 1)}),
                  ConstructionError);
}

TEST_CASE("closed-form projections") {
  ConvexSet ball(Ball(vec2(3, 0), 1.0));
  CHECK((project(ball, vec2(0, 0)) - vec2(2, 0)).norm() < 1e-12);

  Mat A(1, 2);
  A << -1, 0;  // x >= 1
  ConvexSet half(HPolyhedron(A, Vec::Constant(1, -1.0)));
  CHECK((project(half, vec2(0, 0.5)) - vec2(1, 0.5)).norm() < 1e-12);

  ConvexSet epi(Epigraph1D(Catalog1D::square()));
  CHECK((project(epi, vec2(0, -1)) - vec2(0, 0)).norm() < 1e-7);
}

TEST_CASE("projection onto sublevel and vset agrees with geometry") {
  // {x : |x|^2 <= 1} as a quadratic sublevel set (Q = 2I, c = -1)
  Mat Q = 2.0 * Mat::Identity(2, 2);
  ConvexSet disc(SublevelSystem({CatalogFn::quadratic(Q, Vec::Zero(2), -1.0)}));
  Vec p = project(disc, vec2(3, 4));
  CHECK((p - vec2(0.6, 0.8)).norm() < 1e-6);

  ConvexSet seg(VSet({vec2(0, 0), vec2(2, 0)}, {}));
  CHECK((project(seg, vec2(1, 5)) - vec2(1, 0)).norm() < 1e-6);
  CHECK((project(seg, vec2(-3, 1)) - vec2(0, 0)).norm() < 1e-6);
}

TEST_CASE("boundedness flags per representation") {
  CHECK(is_bounded_rep(ConvexSet(Ball(Vec::Zero(3), 2.0))) == Tribool::True);
  CHECK(is_bounded_rep(ConvexSet(VSet({vec2(1, 1)}, {}))) == Tribool::True);
  CHECK(is_bounded_rep(ConvexSet(VSet({vec2(1, 1)}, {vec2(1, 0)}))) == Tribool::False);
  CHECK(is_bounded_rep(ConvexSet(Epigraph1D(Catalog1D::square()))) == Tribool::False);
  // unit box
  Mat A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  CHECK(is_bounded_rep(ConvexSet(HPolyhedron(A, Vec::Ones(4)))) == Tribool::True);
  CHECK(is_bounded_rep(axis_strip()) == Tribool::False);
  Mat Q = 2.0 * Mat::Identity(2, 2);
  CHECK(is_bounded_rep(ConvexSet(SublevelSystem({CatalogFn::quadratic(Q, Vec::Zero(2), -1.0)}))) ==
        Tribool::Unknown);
}

TEST_CASE("dimension mismatches raise DimensionError") {
  ConvexSet ball(Ball(Vec::Zero(3), 1.0));
  CHECK_THROWS_AS(contains(ball, vec2(0, 0), 1e-9), DimensionError);
  CHECK_THROWS_AS(project(ball, vec2(0, 0)), DimensionError);
}

TEST_CASE("hpoly projection matches brute-force active-set enumeration") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.3, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);  // 2..4
    int m = 3 + static_cast<int>(rng() % 6);  // 3..8
    Mat A(m, n);
    Vec b(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
      b(i) = unif(rng);
    }
    HPolyhedron P(A, b);
    ConvexSet S(P);
    Vec z(n);
    for (int j = 0; j < n; ++j) z(j) = 3.0 * gauss(rng);
    Vec got = project(S, z);
    Vec want = brute_force_projection(P, z);
    CHECK((got - want).norm() < 1e-6);
  }
}

TEST_CASE("projection properties over random sets and points") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rand_vec = [&](int n) {
    Vec v(n);
    for (int j = 0; j < n; ++j) v(j) = 2.0 * gauss(rng);
    return v;
  };
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet(Ball(vec2(0.5, -1), 1.5)));
  sets.push_back(ConvexSet(Epigraph1D(Catalog1D::absolute())));
  sets.push_back(ConvexSet(Epigraph1D(Catalog1D::exponential())));
  sets.push_back(ConvexSet(VSet({vec2(0, 0), vec2(1, 0), vec2(0, 1)}, {vec2(1, 1)})));
  {
    Mat A(3, 2);
    A << 1, 1, -1, 0, 0, -1;
    sets.push_back(ConvexSet(HPolyhedron(A, Vec::Ones(3))));
  }

  const double tol = kProjectionTol;
  for (const ConvexSet& S : sets) {
    for (int t = 0; t < 40; ++t) {
      Vec x = rand_vec(2), y = rand_vec(2);
      Vec px = project(S, x), py = project(S, y);
      CHECK(contains(S, px, 1e-6));
      // idempotence
      CHECK((project(S, px) - px).norm() <= 2 * tol + 1e-9);
      // nonexpansiveness
      CHECK((px - py).norm() <= (x - y).norm() + 4 * tol);
    }
  }
}
