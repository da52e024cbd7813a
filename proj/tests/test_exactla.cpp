#include "coxder/exactla.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace coxder;
using namespace testing_helpers;

TEST_CASE("determinants") {
  Poly x = X(2, 0), y = X(2, 1);
  PolyMatrix m(2, 2);
  m(0, 0) = x; m(0, 1) = y; m(1, 0) = y; m(1, 1) = x;
  CHECK(determinant(m) == x * x - y * y);
  PolyMatrix id(3, 3, Poly(2));
  for (int i = 0; i < 3; ++i) id(i, i) = C(2, 1);
  CHECK(determinant(id) == C(2, 1));
  // Jacobian of x^2+y^2, x^4+y^4; the hand cofactor expansion gives
  // 2x*4y^3 - 2y*4x^3.
  PolyMatrix j(2, 2);
  j(0, 0) = Scalar(2) * x; j(0, 1) = Scalar(4) * x.pow(3);
  j(1, 0) = Scalar(2) * y; j(1, 1) = Scalar(4) * y.pow(3);
  CHECK(determinant(j) == Scalar(8) * (x * y.pow(3) - x.pow(3) * y));
}

TEST_CASE("det multiplicative on random matrices") {
  std::mt19937 rng(5);
  for (int k = 0; k < 6; ++k) {
    PolyMatrix a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int jj = 0; jj < 3; ++jj) {
        a(i, jj) = random_poly(rng, 2, 2, 3);
        b(i, jj) = random_poly(rng, 2, 2, 3);
      }
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
}

TEST_CASE("solve over fractions") {
  Poly x = X(2, 0), y = X(2, 1);
  LinearForm fx({Scalar(1), Scalar(0)}), fy({Scalar(0), Scalar(1)}), fm({Scalar(1), Scalar(-1)}),
      fp({Scalar(1), Scalar(1)});
  std::vector<LinearForm> pool{fx, fy, fm, fp};
  LogMatrix m(2, 2), n(2, 1);
  m(0, 0) = LogRational(x); m(0, 1) = LogRational(Poly(2));
  m(1, 0) = LogRational(Poly(2)); m(1, 1) = LogRational(y);
  n(0, 0) = LogRational(x); n(1, 0) = LogRational(y);
  auto s = solve_over_fractions(m, n, pool);
  REQUIRE(s);
  CHECK((*s)(0, 0) == LogRational(C(2, 1)));
  CHECK((*s)(1, 0) == LogRational(C(2, 1)));

  // J^T v = e1 for the B2 power sums; Cramer by hand gives
  // v = (y^2/(2x(y^2-x^2)), -x^2/(2y(y^2-x^2))).
  LogMatrix jt(2, 2), e1(2, 1);
  jt(0, 0) = LogRational(Scalar(2) * x); jt(0, 1) = LogRational(Scalar(2) * y);
  jt(1, 0) = LogRational(Scalar(4) * x.pow(3)); jt(1, 1) = LogRational(Scalar(4) * y.pow(3));
  e1(0, 0) = LogRational(C(2, 1)); e1(1, 0) = LogRational(Poly(2));
  auto v = solve_over_fractions(jt, e1, pool);
  REQUIRE(v);
  LogRational y2mx2(y * y - x * x);
  CHECK((*v)(0, 0) * y2mx2 == LogRational(y * y, {{fx, 1}}) * Scalar(1, 2));
  CHECK((*v)(1, 0) * y2mx2 == LogRational(-(x * x), {{fy, 1}}) * Scalar(1, 2));
  CHECK(multiply(jt, *v) == e1);
}

TEST_CASE("nullspace") {
  ScalarMatrix a(1, 2);
  a(0, 0) = Scalar(1); a(0, 1) = Scalar(1);
  auto ns = rational_nullspace(a);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == std::vector<Scalar>{Scalar(-1), Scalar(1)});
  CHECK(rational_nullspace(ScalarMatrix(2, 2, Scalar(0))).size() == 2);
  CHECK(rational_nullspace(identity_matrix(3)).empty());
}
