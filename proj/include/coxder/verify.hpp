#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxder/engine.hpp"

namespace coxder {

struct SaitoResult {
  bool ok = false;
  Scalar c;
  std::string witness;
};

// Sorts by degree, then by rendering, so that checks are order-insensitive.
std::vector<Derivation> canonical_order(std::vector<Derivation> basis);

// Membership of every element, then det = c * prod alpha_H^m(H). The
// determinant is taken in canonical order.
SaitoResult saito_check(const ArrangementData& arr, const Multiplicity& m, const std::vector<Derivation>& basis);

// invariance[i][g] = invariance_flag(gens[g], basis[i]).
std::vector<std::vector<int>> invariance_check(const std::vector<Derivation>& basis,
                                               const std::vector<ScalarMatrix>& gens);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
  Scalar saito_c;
  void fail(std::string s) {
    ok = false;
    failures.push_back(std::move(s));
  }
};

// Re-runs every check on a certificate from scratch: length, Saito,
// exponents against actual degrees, sum of exponents, invariance flags.
CheckReport check_certificate(const BasisCertificate& cert);

// Brute-force graded pieces of D(A, m), independent of the connection:
// theta = Q1^-a Q2^-b N with N polynomial, subject to the order and
// tangential conditions of each hyperplane, and optionally to
// W-invariance under the simple reflections.
class Oracle {
 public:
  Oracle(const ArrangementData& arr, Multiplicity m, bool invariant = false);

  int a() const { return a_; }
  int b() const { return b_; }
  // Lowest degree that can be nonzero.
  int min_degree() const { return -pole_degree_; }
  size_t dimension(int d);
  // Basis of the degree-d piece as derivations.
  std::vector<Derivation> basis(int d);
  // Same, as numerator vectors (component-major coefficient lists are
  // avoided; each entry is the numerator of one component).
  std::vector<std::vector<Poly>> numerator_basis(int d);
  Derivation from_numerators(const std::vector<Poly>& n) const;

 private:
  struct Piece {
    std::vector<std::vector<Poly>> basis;
  };
  const Piece& piece(int d);

  ArrangementData arr_;
  Multiplicity m_;
  bool invariant_;
  int a_ = 0, b_ = 0, pole_degree_ = 0;
  FormExponents den_;
  std::vector<FormChart> charts_;
  std::map<int, Piece> pieces_;
};

size_t oracle_module_dimension(const ArrangementData& arr, const Multiplicity& m, int d);

struct HilbertRow {
  int degree = 0;
  long predicted = 0;
  long observed = 0;
};
struct HilbertReport {
  bool ok = true;
  std::vector<HilbertRow> rows;
  std::optional<int> first_mismatch;
};

// Free-module prediction sum_i binom(d - e_i + l - 1, l - 1) against the oracle
// for d from the oracle's minimum degree to d_max.
HilbertReport hilbert_compare(const std::vector<int>& exponents, int rank, Oracle& oracle, int d_max);
long free_dimension(const std::vector<int>& exponents, int rank, int d);

// Laurent series truncated at d_max, stored from a minimum degree.
struct Series {
  int min_degree = 0;
  std::vector<long> coeffs;
  long at(int d) const;
};

struct PoincareReport {
  bool ok = true;
  Series blocks, closed_form;
  std::optional<Series> oracle;  // Poincare series of D(A,(2p-1,2q-1))^W by brute force
  std::string detail;
};

// Compares the T-graded series of the blocks theta^(p+k,q+k), k <= k_max, with
// prod 1/(1-t^d_i) * sum_j t^(deg zeta - d_j) through d_max, and optionally with
// the invariant oracle.
PoincareReport poincare_check(const EpqContext& ctx, int p, int q, int k_max, int d_max, bool with_oracle);

struct MstarReport {
  bool ok = true;
  Multiplicity m, m_star;
  std::vector<std::pair<size_t, size_t>> dims;  // per degree from min_degree
  int min_degree = 0;
};
// Dimensions of D(A,m)^W and D(A,m*)^W per degree through d_max.
MstarReport mstar_experiment(const ArrangementData& arr, const Multiplicity& m, int d_max);

// Whether S * M^W = M in every degree from the minimum through d_max, with
// M = D(A, m); for a free M and d_max the top exponent this says M has a
// W-invariant basis.
bool generated_by_invariants(const ArrangementData& arr, const Multiplicity& m, int d_max);

// Rank-2 route: exponents from the oracle, one element of the lowest degree,
// a second one outside its span, certified by Saito.
BasisCertificate rank2_basis(const ArrangementData& arr, const Multiplicity& m);

}  // namespace coxder
