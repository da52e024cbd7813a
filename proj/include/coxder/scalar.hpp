#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "coxder/number_field.hpp"

namespace coxder {

// Exact scalar: a rational number, or an element of a real number field
// Q(g) stored in the power basis of g. Elements whose g-part vanishes are
// demoted to plain rationals, so equal values have equal representations.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }  // NOLINT
  Scalar(long num, long den);

  static Scalar in_field(FieldPtr field, UPoly coeffs);
  static Scalar generator(FieldPtr field);

  bool is_zero() const { return field_ == nullptr && sgn(q_) == 0; }
  bool is_one() const { return field_ == nullptr && q_ == 1; }
  bool is_rational() const { return field_ == nullptr; }
  const mpq_class& rational() const { return q_; }
  const FieldPtr& field() const { return field_; }
  // Power-basis coefficients (rational elements give a single coefficient).
  UPoly coeffs() const;

  int sign() const;
  Scalar inverse() const;
  Scalar pow(int e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  // *this += a * b
  void add_product(const Scalar& a, const Scalar& b);
  void negate();

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const {
    Scalar r = *this;
    r.negate();
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Structural total order (rationals first); used for canonical sorting,
  // not numeric comparison.
  static int compare_structural(const Scalar& a, const Scalar& b);

  std::string to_string(const std::string& gen = "g") const;
  double to_double() const;

 private:
  static FieldPtr common_field(const Scalar& a, const Scalar& b);
  void set_field_value(FieldPtr f, UPoly c);

  mpq_class q_;
  FieldPtr field_;
  UPoly c_;  // used only when field_ is set
};

}  // namespace coxder
