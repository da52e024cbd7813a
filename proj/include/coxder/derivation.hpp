#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxder/coxeter.hpp"

namespace coxder {

// theta = sum_i c_i d/dx_i with coefficients in LogRational.
class Derivation {
 public:
  explicit Derivation(int nvars = 0) : c_(nvars, LogRational(nvars)) {}
  explicit Derivation(std::vector<LogRational> c) : c_(std::move(c)) {}
  static Derivation euler(int n);
  static Derivation coordinate(int n, int i);
  static Derivation from_polys(const std::vector<Poly>& c);

  int nvars() const { return static_cast<int>(c_.size()); }
  const std::vector<LogRational>& coeffs() const { return c_; }
  const LogRational& operator[](int i) const { return c_[i]; }
  LogRational& operator[](int i) { return c_[i]; }
  bool is_zero() const;
  bool is_polynomial() const;
  // Common degree of theta(alpha) for linear alpha, i.e. of the nonzero
  // coefficients; nullopt when zero or inhomogeneous.
  std::optional<int> degree() const;

  LogRational apply(const LogRational& f) const;
  LogRational apply(const Poly& f) const { return apply(LogRational(f)); }
  // theta(alpha) for a linear form.
  LogRational on_form(const LinearForm& alpha) const;

  Derivation& operator+=(const Derivation& o);
  Derivation& operator-=(const Derivation& o);
  Derivation& operator*=(const LogRational& f);
  Derivation& operator*=(const Scalar& c);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const LogRational& f, Derivation a) { return a *= f; }
  friend Derivation operator*(const Scalar& c, Derivation a) { return a *= c; }
  Derivation operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const Derivation& a, const Derivation& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Derivation& a, const Derivation& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::vector<LogRational> c_;
};

// nabla_theta delta = sum_j theta(delta_j) d/dx_j in orthonormal coordinates.
Derivation covariant_derivative(const Derivation& theta, const Derivation& delta);
// (w theta)(f) = w(theta(w^{-1} f)) with (w f)(x) = f(w^{-1} x).
Derivation group_action(const ScalarMatrix& w, const Derivation& theta);
Derivation group_action(const ScalarMatrix& w, const ScalarMatrix& w_inv, const Derivation& theta);
// +1 fixed, -1 negated, 0 neither.
int invariance_flag(const ScalarMatrix& w, const Derivation& theta);

// d/dP_i for every i, solving J^T v = e_i.
std::vector<Derivation> coordinate_fields(const InvariantSystem& sys, const ArrangementData& arr);

struct MembershipResult {
  bool ok = true;
  int hyperplane = -1;
  std::string reason;
};

// theta in D(A, m): order of theta(alpha_H) along H at least m(H), and the
// part of theta orthogonal to alpha_H is regular along H. Throws when theta
// has a pole outside the arrangement.
MembershipResult log_membership_detail(const Derivation& theta, const ArrangementData& arr, const Multiplicity& m);
bool log_membership(const Derivation& theta, const ArrangementData& arr, const Multiplicity& m);

}  // namespace coxder
