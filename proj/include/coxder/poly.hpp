#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxder/scalar.hpp"

namespace coxder {

// Packed exponent vector. The top byte holds the total degree and the next
// seven bytes hold the exponents of x1..x7, so unsigned comparison of the
// packed words is the graded-lexicographic order with x1 > x2 > ... and
// multiplication of monomials is addition of words.
class Monomial {
 public:
  static constexpr int kMaxVars = 7;
  static constexpr int kMaxDegree = 255;

  constexpr Monomial() = default;
  static Monomial from_exponents(const std::vector<int>& e);
  static Monomial variable(int i);
  static constexpr Monomial from_bits(std::uint64_t b) { return Monomial(b); }

  int exponent(int i) const { return static_cast<int>((bits_ >> shift(i)) & 0xff); }
  int total_degree() const { return static_cast<int>(bits_ >> 56); }
  std::vector<int> exponents(int nvars) const;

  Monomial operator*(Monomial o) const;
  bool divides(Monomial o) const;
  // Caller guarantees divisibility.
  Monomial operator/(Monomial o) const { return Monomial(bits_ - o.bits_); }
  Monomial without(int i) const;

  std::uint64_t bits() const { return bits_; }
  friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
  friend bool operator!=(Monomial a, Monomial b) { return a.bits_ != b.bits_; }
  friend bool operator<(Monomial a, Monomial b) { return a.bits_ < b.bits_; }
  friend bool operator>(Monomial a, Monomial b) { return a.bits_ > b.bits_; }

 private:
  explicit constexpr Monomial(std::uint64_t b) : bits_(b) {}
  static constexpr int shift(int i) { return 48 - 8 * i; }
  std::uint64_t bits_ = 0;
};

struct Term {
  Monomial mono;
  Scalar coeff;
};

// Degree of the zero polynomial.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

template <class T>
class Matrix;

// Sparse polynomial in a fixed number of variables with Scalar coefficients.
// Terms are kept sorted by decreasing grlex monomial with no zero
// coefficients, so the representation is canonical.
class Poly {
 public:
  explicit Poly(int nvars = 0) : nvars_(nvars) {}
  static Poly constant(int nvars, const Scalar& c);
  static Poly variable(int nvars, int i);
  static Poly monomial(int nvars, Monomial m, const Scalar& c);
  // Builds from unsorted terms, merging duplicates.
  static Poly from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  // Scalar value of a constant polynomial; throws otherwise.
  Scalar as_constant() const;
  Scalar coefficient(Monomial m) const;
  int degree() const { return terms_.empty() ? kMinusInfinity : terms_.front().mono.total_degree(); }
  bool is_homogeneous() const;
  const Term& leading_term() const { return terms_.front(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  Poly operator-() const;
  Poly pow(int e) const;
  // Multiply by x^m.
  Poly shifted(Monomial m) const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative(int i) const;
  // f(Mx): variable x_i is replaced by sum_j M(i,j) x_j.
  Poly substitute_linear(const Matrix<Scalar>& m) const;
  // Replace each variable by the given polynomial.
  Poly compose(const std::vector<Poly>& images) const;

  // Exact division; nullopt when the divisor does not divide.
  std::optional<Poly> divide_exact(const Poly& divisor) const;
  // Cheap necessary test for divisibility by a rational linear form: false
  // means certainly not divisible. Always true for irrational forms.
  bool may_vanish_on(const std::vector<Scalar>& form) const;

  Scalar evaluate(const std::vector<Scalar>& point) const;

  std::string to_string() const;

 private:
  void check_compatible(const Poly& o) const;

  int nvars_ = 0;
  std::vector<Term> terms_;
};

std::string variable_name(int i);

// All monomials of the given total degree in nvars variables, in
// decreasing grlex order.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

}  // namespace coxder
