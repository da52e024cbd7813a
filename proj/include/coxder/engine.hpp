#pragma once

#include <array>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "coxder/certificate.hpp"

namespace coxder {

struct EngineOptions {
  int pole_cap = 4;   // escalation steps allowed beyond the starting pole bound
  int seed_set = 0;   // choice of Reynolds seeds for generated invariants
};

// Everything needed to build E^(p,q) for one arrangement. Immutable apart
// from caches, which are thread safe.
class EpqContext {
 public:
  explicit EpqContext(ArrangementData arr, EngineOptions opt = {});

  const ArrangementData& arrangement() const { return arr_; }
  const EngineOptions& options() const { return opt_; }
  const InvariantSystem& system(GroupTag g) const { return sys_[static_cast<int>(g)]; }
  // d/dP_i of the given system, computed on first use.
  const std::vector<Derivation>& fields(GroupTag g) const;
  const std::vector<ScalarMatrix>& generators() const { return arr_.simple; }

  const Derivation& D() const { return d_; }
  const Derivation& D1() const { return d1_; }
  const Derivation& D2() const { return d2_; }
  int h() const { return system(GroupTag::W).h; }
  int h1() const { return system(GroupTag::W1).h; }
  int h2() const { return system(GroupTag::W2).h; }
  int rank() const { return arr_.rank; }

  // E^(p,q) is built for B and F4, where D1 is W-invariant.
  bool has_epq() const { return arr_.family == Family::B || arr_.family == Family::F4; }
  Derivation e_pq(int p, int q) const;

 private:
  ArrangementData arr_;
  EngineOptions opt_;
  std::array<InvariantSystem, 3> sys_;
  mutable std::array<std::once_flag, 3> fields_once_;
  mutable std::array<std::vector<Derivation>, 3> fields_;
  Derivation d_, d1_, d2_;
  mutable std::mutex memo_mu_;
  mutable std::map<std::pair<int, int>, std::shared_future<Derivation>> memo_;

  Derivation compute_epq(int p, int q) const;
};

// The primitive derivation D (W), D1 (W1) or D2 (W2).
const Derivation& primitive_derivation(const EpqContext& ctx, GroupTag which);

// nabla_delta^k theta.
Derivation forward_power(const Derivation& delta, int k, Derivation theta);

struct InvertResult {
  Derivation eta;
  int a = 0, b = 0;        // eta has denominator dividing Q1^(2a) Q2^(2b)
  size_t unknowns = 0;
};

// The unique W-invariant eta with nabla_delta eta = zeta, delta = D for
// which = W and delta = D1 for which = W1. The ansatz is
// eta = Q1^(-2a) Q2^(-2b) sum_i f_i grad P_i with f_i in the W-invariant ring;
// (a, b) starts at (a0, b0) and grows until the linear system has a unique
// solution or the pole cap is reached.
InvertResult invert_covariant(const EpqContext& ctx, GroupTag which, const Derivation& zeta, int a0, int b0);

// Parity classes: m1 = 2p-1 or 2p, m2 = 2q-1 or 2q, case 1..4 in the order
// (odd, odd), (odd, even), (even, odd), (even, even).
struct CaseSpec {
  int p = 0, q = 0, case_tag = 1;
};
CaseSpec case_for(int m1, int m2);
std::pair<int, int> multiplicity_for(int p, int q, int case_tag);

std::vector<int> predicted_exponents(const EpqContext& ctx, int p, int q, int case_tag);

// nabla_{X_i} E^(p,q) for the coordinate fields X_i of the case.
std::vector<Derivation> case_basis(const EpqContext& ctx, int p, int q, int case_tag);

// Builds and self-verifies the basis; throws VerificationError on failure.
BasisCertificate theta_basis(const EpqContext& ctx, int p, int q, int case_tag);

struct RecursionStep {
  PolyMatrix B;
  std::vector<Derivation> next;
};

// From Theta = [nabla_{dP_i} zeta] computes B with nabla_D(Theta G) = Theta B
// and Theta' = Theta G B^-1, asserting the structural facts about B.
RecursionStep recursion_step(const EpqContext& ctx, const std::vector<Derivation>& theta);

struct RecursionRoute {
  std::vector<Derivation> theta;  // case-1 tuple at (p, q)
  std::vector<PolyMatrix> B;      // B^(0), ..., B^(q-1)
};
// Starts from zeta = E^(p-q, 0) and applies q recursion steps (q >= 0).
RecursionRoute recursion_route(const EpqContext& ctx, int p, int q);

// zeta = (1/m) sum_i d_i P_i theta_i, the derivation with nabla_{dP_i} zeta = theta_i.
Derivation recover_zeta(const std::vector<Derivation>& theta, const InvariantSystem& sys, int m);

// Blocks theta^(p+k, q+k) for k = 0..k_max.
std::vector<std::vector<Derivation>> primitive_decomposition(const EpqContext& ctx, int p, int q, int k_max);

// m*(H) = max over the orbit of H of 2 floor(m/2) + 1.
Multiplicity m_star(const ArrangementData& arr, const Multiplicity& m);

// Floor division.
inline int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

}  // namespace coxder
