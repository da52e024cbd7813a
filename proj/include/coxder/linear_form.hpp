#pragma once

#include <string>
#include <vector>

#include "coxder/poly.hpp"

namespace coxder {

// A nonzero linear form sum_i c_i x_i in normalized position: the first
// nonzero coordinate is positive, and the vector is integer-primitive when all
// coordinates are rational; otherwise the first nonzero coordinate is 1.
class LinearForm {
 public:
  LinearForm() = default;
  // Normalizes c. If scale is given, it receives s with c = s * normalized.
  explicit LinearForm(std::vector<Scalar> c, Scalar* scale = nullptr);

  int nvars() const { return static_cast<int>(c_.size()); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& operator[](int i) const { return c_[i]; }
  int lead_index() const { return lead_; }
  bool is_rational() const;
  Scalar norm2() const;
  Poly to_poly() const;
  Scalar evaluate(const std::vector<Scalar>& point) const;
  // The form alpha(Mx), renormalized.
  LinearForm transformed(const Matrix<Scalar>& m, Scalar* scale = nullptr) const;

  std::string to_string() const;

  friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LinearForm& a, const LinearForm& b) { return !(a == b); }
  friend bool operator<(const LinearForm& a, const LinearForm& b);

 private:
  std::vector<Scalar> c_;
  int lead_ = -1;
};

}  // namespace coxder
