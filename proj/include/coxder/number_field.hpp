#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace coxder {

// Dense univariate polynomial over Q, coefficients low to high degree.
// Zero is the empty vector.
using UPoly = std::vector<mpq_class>;

namespace upoly {

void trim(UPoly& p);
int degree(const UPoly& p);
UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly derivative(const UPoly& p);
// Quotient and remainder; b must be nonzero.
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly monic(const UPoly& p);
mpq_class eval(const UPoly& p, const mpq_class& x);
int sign_at(const UPoly& p, const mpq_class& x);
// Number of distinct real roots in the half-open interval (lo, hi].
int sturm_count(const UPoly& p, const mpq_class& lo, const mpq_class& hi);
// True iff p (squarefree, rational) has no nontrivial factor over Q.
bool is_irreducible(const UPoly& p);

}  // namespace upoly

// A real number field Q(g) with g a fixed real root of an irreducible
// polynomial, pinned by an isolating interval.
class NumberField {
 public:
  // Validates the minimal polynomial (squarefree, irreducible) and that
  // (lo, hi) isolates exactly one root. Throws std::invalid_argument.
  static std::shared_ptr<const NumberField> create(UPoly minpoly,
                                                   mpq_class lo,
                                                   mpq_class hi,
                                                   std::string name);

  // Q(sqrt(n)) for a positive squarefree integer n > 1.
  static std::shared_ptr<const NumberField> sqrt(long n);

  // Q(cos(pi/m)), minimal polynomial from the cyclotomic polynomial of
  // order 2m rewritten in t = z + 1/z.
  static std::shared_ptr<const NumberField> cos_pi_over(long m);

  const UPoly& minpoly() const { return minpoly_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  const std::string& name() const { return name_; }
  const mpq_class& lo() const { return lo_; }
  const mpq_class& hi() const { return hi_; }

  // Reduce an arbitrary polynomial in g to the power basis.
  UPoly reduce(const UPoly& p) const;
  UPoly multiply(const UPoly& a, const UPoly& b) const;
  UPoly inverse(const UPoly& a) const;

  // Sign of a(g); refines a local copy of the isolating interval until the
  // interval image excludes zero.
  int sign(const UPoly& a) const;

  // Rational approximation of g with |error| < 2^-bits.
  mpq_class approximate(int bits) const;

  bool same_as(const NumberField& other) const;

 private:
  NumberField() = default;

  UPoly minpoly_;  // monic
  mpq_class lo_, hi_;
  std::string name_;
  // t^k reduced mod minpoly for k < 2*degree - 1.
  std::vector<UPoly> power_table_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// The n-th cyclotomic polynomial.
UPoly cyclotomic(long n);

}  // namespace coxder
