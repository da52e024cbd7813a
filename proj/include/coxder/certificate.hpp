#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "coxder/derivation.hpp"

namespace coxder {

// Raised when a construction cannot be carried out (CLI exit code 3).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a constructed object fails a check (CLI exit code 4).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A claimed free basis of D(A, m) together with the data needed to re-check it.
struct BasisCertificate {
  Family family = Family::B;
  int param = 0;  // rank for B, n for I2(2n), unused otherwise
  Multiplicity m;
  int m1 = 0, m2 = 0;  // orbit values when m is equivariant
  int case_tag = 0;    // 1..4 for the E^(p,q) families, 0 for the rank-2 route
  std::string route;   // "epq", "recursion" or "oracle"
  int p = 0, q = 0;
  std::vector<Derivation> basis;
  std::vector<int> exponents;
  Scalar saito_c;
  // invariance[i][g]: +1, -1 or 0 for basis element i and simple reflection g.
  std::vector<std::vector<int>> invariance;
  std::vector<std::string> seeds;
};

}  // namespace coxder
