#pragma once

#include <string>
#include <vector>

#include "coxder/exactla.hpp"
#include "coxder/log_rational.hpp"

namespace coxder {

enum class Family { B, F4, G2, I2 };
enum class GroupTag { W, W1, W2 };

std::string group_name(GroupTag g);

struct Hyperplane {
  LinearForm alpha;
  int orbit = 0;  // 1 or 2
};

ScalarMatrix reflection_matrix(const LinearForm& alpha);

struct ArrangementData {
  Family family = Family::B;
  int rank = 0;
  int n = 0;  // I2(2n) parameter; 3 for G2
  FieldPtr field;
  std::vector<Hyperplane> hyperplanes;
  Poly Q, Q1, Q2;
  std::vector<ScalarMatrix> simple;       // simple reflections generating W
  std::vector<ScalarMatrix> reflections;  // parallel to hyperplanes

  std::string name() const;
  std::vector<LinearForm> forms() const;
  std::vector<LinearForm> orbit_forms(int orbit) const;
  // Generators of W, W1 or W2 (W_i is generated by the reflections of orbit i).
  std::vector<ScalarMatrix> generators(GroupTag g) const;
  int index_of(const LinearForm& alpha) const;
  // Permutation of hyperplane indices induced by w.
  std::vector<int> permutation(const ScalarMatrix& w) const;
};

// family "B" (rank >= 2), "F4", "G2", "I2" (param n >= 4 gives I2(2n)).
ArrangementData build_arrangement(Family family, int param = 0);
Family parse_family(const std::string& s);

// Full group, identity first. Throws when the closure exceeds the bound.
std::vector<ScalarMatrix> group_elements(const std::vector<ScalarMatrix>& gens, size_t bound = 5000);
std::vector<ScalarMatrix> group_elements(const ArrangementData& arr, GroupTag g, size_t bound = 5000);

Poly reynolds(const Poly& f, const std::vector<ScalarMatrix>& elements);
Poly reynolds(const Poly& f, const ArrangementData& arr, GroupTag g);

struct InvariantSystem {
  GroupTag group = GroupTag::W;
  std::vector<Poly> P;
  std::vector<int> degrees;
  int h = 0;
  PolyMatrix J;  // J(i, j) = dP_j / dx_i
  std::vector<std::string> seeds;  // provenance of each invariant
  int size() const { return static_cast<int>(P.size()); }
};

// seed_set selects among alternative Reynolds seeds where invariants are
// generated rather than given in closed form.
InvariantSystem basic_invariants(const ArrangementData& arr, GroupTag g, int seed_set = 0);
PolyMatrix jacobian(const std::vector<Poly>& P);
// G = J^T J.
PolyMatrix saito_matrix_G(const InvariantSystem& sys);

// The orthonormal change of coordinates exchanging the two F4 orbits.
ScalarMatrix f4_orbit_switch();

bool is_invariant(const Poly& f, const std::vector<ScalarMatrix>& gens);
// +1 invariant, -1 anti-invariant, 0 otherwise.
int invariance_sign(const Poly& f, const ScalarMatrix& w);

ScalarMatrix inverse(const ScalarMatrix& m);

struct Multiplicity {
  std::vector<int> m;  // parallel to arr.hyperplanes

  static Multiplicity from_orbits(const ArrangementData& arr, int m1, int m2);
  int operator[](size_t i) const { return m[i]; }
  bool is_equivariant(const ArrangementData& arr) const;
  bool is_odd() const;
  int total() const;
  FormExponents spec(const ArrangementData& arr) const;
  friend bool operator==(const Multiplicity& a, const Multiplicity& b) { return a.m == b.m; }
};

// W-orbits of hyperplane indices computed from the group action.
std::vector<std::vector<int>> hyperplane_orbits(const ArrangementData& arr);

}  // namespace coxder
