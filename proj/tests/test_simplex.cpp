#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barricade/simplex.hpp"

#include <random>

using namespace barricade;

TEST_CASE("bounded maximization over a box") {
  // max x + 2y s.t. 0 <= x,y <= 1  ->  3 at (1, 1)
  LinearProgram lp;
  lp.A_ub.resize(4, 2);
  lp.A_ub << 1, 0, 0, 1, -1, 0, 0, -1;
  lp.b_ub.resize(4);
  lp.b_ub << 1, 1, 0, 0;
  lp.c.resize(2);
  lp.c << -1, -2;
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-3.0));
  CHECK(sol.x(0) == doctest::Approx(1.0));
  CHECK(sol.x(1) == doctest::Approx(1.0));
}

TEST_CASE("infeasible system detected") {
  LinearProgram lp;
  lp.A_ub.resize(2, 1);
  lp.A_ub << 1, -1;
  lp.b_ub.resize(2);
  lp.b_ub << -1, -1;  // x <= -1 and x >= 1
  lp.c = Vec::Ones(1);
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded problem returns an improving ray") {
  // min -x s.t. y <= 1, -y <= 1 (x free, unconstrained upward)
  LinearProgram lp;
  lp.A_ub.resize(2, 2);
  lp.A_ub << 0, 1, 0, -1;
  lp.b_ub = Vec::Ones(2);
  lp.c.resize(2);
  lp.c << -1, 0;
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Unbounded);
  REQUIRE(sol.ray.size() == 2);
  CHECK(lp.c.dot(sol.ray) < 0);
  CHECK((lp.A_ub * sol.ray).maxCoeff() <= 1e-9);
}

TEST_CASE("equality constraints with sign-restricted variables") {
  // min y1 + y2 s.t. y1 + 2 y2 = 3, y >= 0  ->  1.5 at (0, 1.5)
  LinearProgram lp;
  lp.A_eq.resize(1, 2);
  lp.A_eq << 1, 2;
  lp.b_eq = Vec::Constant(1, 3.0);
  lp.c = Vec::Ones(2);
  lp.nonneg = {true, true};
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.5));
}

TEST_CASE("random bounded LPs agree with vertex enumeration") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.2, 1.2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2, m = 5;
    Mat A(m + 4, n);
    Vec b(m + 4);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
      b(i) = unif(rng);  // contains the origin
    }
    // box to keep it bounded
    A.row(m) << 1, 0;
    A.row(m + 1) << -1, 0;
    A.row(m + 2) << 0, 1;
    A.row(m + 3) << 0, -1;
    b.tail(4).setConstant(5.0);
    Vec c(n);
    c << gauss(rng), gauss(rng);

    LinearProgram lp;
    lp.A_ub = A;
    lp.b_ub = b;
    lp.c = c;
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);

    // brute force: all row pairs
    double best = kInf;
    for (int i = 0; i < A.rows(); ++i) {
      for (int j = i + 1; j < A.rows(); ++j) {
        Mat B(2, 2);
        B.row(0) = A.row(i);
        B.row(1) = A.row(j);
        if (std::abs(B.determinant()) < 1e-9) continue;
        Vec rhs(2);
        rhs << b(i), b(j);
        Vec x = B.fullPivLu().solve(rhs);
        if (((A * x - b).array() <= 1e-8).all()) best = std::min(best, c.dot(x));
      }
    }
    CHECK(sol.objective == doctest::Approx(best).epsilon(1e-7));
  }
}
