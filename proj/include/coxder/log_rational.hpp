#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxder/linear_form.hpp"
#include "coxder/poly.hpp"

namespace coxder {

using FormExponents = std::map<LinearForm, int>;

// Order of the zero function along any hyperplane.
inline constexpr int kPlusInfinity = INT_MAX;

// A rational function N / prod alpha^e whose denominator is a product of
// powers of pairwise non-proportional linear forms. Kept reduced: N is not
// divisible by any denominator form.
class LogRational {
 public:
  explicit LogRational(int nvars = 0) : num_(nvars) {}
  LogRational(Poly num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
  LogRational(Poly num, FormExponents den);
  // c * prod alpha^k over the spec; k may be negative.
  static LogRational product_of_forms(int nvars, const FormExponents& spec, const Scalar& c = Scalar(1));

  int nvars() const { return num_.nvars(); }
  const Poly& numerator() const { return num_; }
  const FormExponents& denominator() const { return den_; }
  Poly den_poly() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  int degree() const;
  bool is_homogeneous() const { return num_.is_homogeneous(); }

  LogRational& operator+=(const LogRational& o);
  LogRational& operator-=(const LogRational& o);
  LogRational& operator*=(const LogRational& o);
  LogRational& operator*=(const Scalar& c);
  friend LogRational operator+(LogRational a, const LogRational& b) { return a += b; }
  friend LogRational operator-(LogRational a, const LogRational& b) { return a -= b; }
  friend LogRational operator*(LogRational a, const LogRational& b) { return a *= b; }
  friend LogRational operator*(LogRational a, const Scalar& c) { return a *= c; }
  friend LogRational operator*(const Scalar& c, LogRational a) { return a *= c; }
  LogRational operator-() const;
  LogRational pow(int e) const;
  // Exact quotient by a product of forms times a scalar.
  LogRational divided_by_forms(const FormExponents& spec, const Scalar& c = Scalar(1)) const;

  friend bool operator==(const LogRational& a, const LogRational& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const LogRational& a, const LogRational& b) { return !(a == b); }

  LogRational derivative(int i) const;
  // f(Mx).
  LogRational substitute_linear(const Matrix<Scalar>& m) const;
  // Valuation along alpha = 0; kPlusInfinity for zero.
  int order_along(const LinearForm& alpha) const;

  std::string to_string() const;

 private:
  void reduce();
  void reduce_form(const LinearForm& alpha);

  Poly num_;
  FormExponents den_;
};

// Number of times alpha divides f (f nonzero).
int form_multiplicity(const Poly& f, const LinearForm& alpha);
// f / alpha if exact.
std::optional<Poly> divide_by_form(const Poly& f, const LinearForm& alpha);

// Coordinates in which a form alpha becomes the variable s = x_r, r being the
// lead index of alpha. Divisibility of f by alpha^e is then the vanishing of
// every term of the transformed f with s-degree below e. Caches monomial
// images, so one chart should not be shared across threads.
class FormChart {
 public:
  explicit FormChart(const LinearForm& alpha);
  int variable() const { return r_; }
  Poly transform(const Poly& f);
  // Terms of the transformed f of s-degree < e.
  std::vector<Term> low_order_terms(const Poly& f, int e);

 private:
  Poly image(Monomial m);

  int r_ = 0;
  int n_ = 0;
  std::vector<Poly> var_images_;
  std::map<std::uint64_t, Poly> cache_;
};

// c when f = c * prod alpha^spec(alpha) with c a nonzero scalar.
std::optional<Scalar> match_product_of_forms(const LogRational& f, const FormExponents& spec);

}  // namespace coxder
