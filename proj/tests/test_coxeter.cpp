#include "coxder/coxeter.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace coxder;
using namespace testing_helpers;

namespace {

long product(const std::vector<int>& v) {
  long p = 1;
  for (int x : v) p *= x;
  return p;
}

int sum_minus_one(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x - 1;
  return s;
}

}  // namespace

TEST_CASE("arrangement catalog sizes") {
  auto b2 = build_arrangement(Family::B, 2);
  CHECK(b2.hyperplanes.size() == 4);
  CHECK(b2.orbit_forms(1).size() == 2);
  CHECK(b2.orbit_forms(1)[0] == LinearForm({Scalar(1), Scalar(0)}));
  auto b3 = build_arrangement(Family::B, 3);
  CHECK(b3.hyperplanes.size() == 9);
  auto f4 = build_arrangement(Family::F4);
  CHECK(f4.hyperplanes.size() == 24);
  CHECK(f4.orbit_forms(1).size() == 12);
  CHECK(f4.orbit_forms(2).size() == 12);
  auto g2 = build_arrangement(Family::G2);
  CHECK(g2.hyperplanes.size() == 6);
  CHECK(g2.orbit_forms(1).size() == 3);
  auto i8 = build_arrangement(Family::I2, 4);
  CHECK(i8.hyperplanes.size() == 8);
  CHECK(hyperplane_orbits(i8).size() == 2);
  CHECK(hyperplane_orbits(f4).size() == 2);
  CHECK(hyperplane_orbits(b3).size() == 2);
}

TEST_CASE("group orders") {
  // Oracle: dihedral of order 8 has 4 rotations and 4 reflections.
  CHECK(group_elements(build_arrangement(Family::B, 2), GroupTag::W).size() == 8);
  CHECK(group_elements(build_arrangement(Family::B, 3), GroupTag::W).size() == 48);
  CHECK(group_elements(build_arrangement(Family::G2), GroupTag::W).size() == 12);
  CHECK(group_elements(build_arrangement(Family::I2, 4), GroupTag::W).size() == 16);
  auto f4 = build_arrangement(Family::F4);
  auto elems = group_elements(f4, GroupTag::W);
  CHECK(elems.size() == 1152);
  CHECK(elems.size() == 128 * 9);
  CHECK(elems[0] == identity_matrix(4));
  CHECK(group_elements(f4, GroupTag::W1).size() == 192);
  CHECK(group_elements(f4, GroupTag::W2).size() == 192);
}

TEST_CASE("generators permute hyperplanes preserving orbits") {
  for (auto arr : {build_arrangement(Family::B, 3), build_arrangement(Family::F4), build_arrangement(Family::G2),
                   build_arrangement(Family::I2, 5)}) {
    for (const auto& w : arr.simple) {
      auto p = arr.permutation(w);
      for (size_t i = 0; i < p.size(); ++i) CHECK(arr.hyperplanes[i].orbit == arr.hyperplanes[p[i]].orbit);
      CHECK(std::abs(invariance_sign(arr.Q1, w)) == 1);
      CHECK(std::abs(invariance_sign(arr.Q2, w)) == 1);
      CHECK(std::abs(invariance_sign(arr.Q, w)) == 1);
    }
  }
}

TEST_CASE("reynolds") {
  auto b2 = build_arrangement(Family::B, 2);
  Poly x = X(2, 0), y = X(2, 1);
  CHECK(reynolds(x * x, b2, GroupTag::W) == Scalar(1, 2) * (x * x + y * y));
  CHECK(reynolds(x, b2, GroupTag::W).is_zero());
  Poly inv = x.pow(4) + y.pow(4);
  CHECK(reynolds(inv, b2, GroupTag::W) == inv);
  Poly r = reynolds(x.pow(3) * y + x * x, b2, GroupTag::W);
  CHECK(reynolds(r, b2, GroupTag::W) == r);
}

TEST_CASE("basic invariants B") {
  auto b2 = build_arrangement(Family::B, 2);
  auto w = basic_invariants(b2, GroupTag::W);
  Poly x = X(2, 0), y = X(2, 1);
  CHECK(w.P[0] == x * x + y * y);
  CHECK(w.P[1] == x.pow(4) + y.pow(4));
  CHECK(w.degrees == std::vector<int>{2, 4});
  CHECK(w.h == 4);
  // G11 = I*(dP1, dP1) = (2x)^2 + (2y)^2 = 4 P1 by hand.
  PolyMatrix g = saito_matrix_G(w);
  CHECK(g(0, 0) == Scalar(4) * w.P[0]);
  CHECK(g(0, 1) == g(1, 0));
  auto b3 = build_arrangement(Family::B, 3);
  auto w2 = basic_invariants(b3, GroupTag::W2);
  CHECK(w2.degrees == std::vector<int>{2, 3, 4});
  CHECK(w2.h == 4);
  CHECK(w2.P[1] == X(3, 0) * X(3, 1) * X(3, 2));
}

TEST_CASE("invariant systems are invariant, independent and basic") {
  std::vector<ArrangementData> arrs{build_arrangement(Family::B, 2), build_arrangement(Family::B, 3),
                                    build_arrangement(Family::F4), build_arrangement(Family::G2),
                                    build_arrangement(Family::I2, 4)};
  for (const auto& arr : arrs) {
    for (GroupTag g : {GroupTag::W, GroupTag::W1, GroupTag::W2}) {
      auto sys = basic_invariants(arr, g);
      CAPTURE(arr.name());
      CAPTURE(group_name(g));
      for (const auto& p : sys.P) CHECK(is_invariant(p, arr.generators(g)));
      CHECK(product(sys.degrees) == static_cast<long>(group_elements(arr, g).size()));
      int count = g == GroupTag::W ? static_cast<int>(arr.hyperplanes.size())
                                   : static_cast<int>(arr.orbit_forms(g == GroupTag::W1 ? 1 : 2).size());
      CHECK(sum_minus_one(sys.degrees) == count);
    }
  }
}

TEST_CASE("F4 data") {
  auto f4 = build_arrangement(Family::F4);
  auto w1 = basic_invariants(f4, GroupTag::W1);
  Poly p1 = w1.P[0], p2 = w1.P[1], p4 = w1.P[3];
  Poly s6(4);
  for (int i = 0; i < 4; ++i) s6 += X(4, i).pow(6);
  CHECK(p4 == Scalar(-4) * s6 + Scalar(5) * p1 * p2);
  CHECK(w1.P[2] == X(4, 0) * X(4, 1) * X(4, 2) * X(4, 3));
  CHECK(w1.degrees == std::vector<int>{2, 4, 4, 6});
  ScalarMatrix tau(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) tau(i, j) = Scalar(i == j ? 1 : 0) - Scalar(1, 2);
  CHECK(p4.substitute_linear(tau) == p4);
  CHECK(tau == reflection_matrix(LinearForm({Scalar(1), Scalar(1), Scalar(1), Scalar(1)})));
  // The coordinate change carries Q1 to a multiple of Q2.
  Poly moved = f4.Q1.substitute_linear(f4_orbit_switch());
  Scalar c = moved.leading_term().coeff / f4.Q2.coefficient(moved.leading_term().mono);
  CHECK(moved == c * f4.Q2);
  auto w = basic_invariants(f4, GroupTag::W);
  CHECK(w.degrees == std::vector<int>{2, 6, 8, 12});
  auto w_alt = basic_invariants(f4, GroupTag::W, 1);
  CHECK(w_alt.degrees == std::vector<int>{2, 6, 8, 12});
  CHECK(w_alt.P[3] != w.P[3]);
}
