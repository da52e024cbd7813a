#include "coxder/linear_form.hpp"

#include <sstream>
#include <stdexcept>

#include "coxder/matrix.hpp"

namespace coxder {

LinearForm::LinearForm(std::vector<Scalar> c, Scalar* scale) : c_(std::move(c)) {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) {
      lead_ = static_cast<int>(i);
      break;
    }
  if (lead_ < 0) throw std::invalid_argument("LinearForm: zero form");
  Scalar s = c_[lead_];
  if (!is_rational()) {
    for (auto& x : c_) x /= s;
  } else {
    s = Scalar(1);
  }
  if (is_rational()) {
    mpz_class l = 1, g = 0;
    for (const auto& x : c_) {
      l = lcm(l, x.rational().get_den());
      g = gcd(g, x.rational().get_num());
    }
    mpq_class f(l, g);
    f.canonicalize();
    if (sgn(c_[lead_].rational()) < 0) f = -f;
    for (auto& x : c_) x *= Scalar(f);
    s *= Scalar(mpq_class(1 / f));
  }
  if (scale) *scale = s;
}

bool LinearForm::is_rational() const {
  for (const auto& x : c_)
    if (!x.is_rational()) return false;
  return true;
}

Scalar LinearForm::norm2() const {
  Scalar r(0);
  for (const auto& x : c_) r.add_product(x, x);
  return r;
}

Poly LinearForm::to_poly() const {
  std::vector<Term> t;
  for (int i = 0; i < nvars(); ++i)
    if (!c_[i].is_zero()) t.push_back({Monomial::variable(i), c_[i]});
  return Poly::from_terms(nvars(), std::move(t));
}

Scalar LinearForm::evaluate(const std::vector<Scalar>& point) const {
  Scalar r(0);
  for (int i = 0; i < nvars(); ++i) r.add_product(c_[i], point[i]);
  return r;
}

LinearForm LinearForm::transformed(const Matrix<Scalar>& m, Scalar* scale) const {
  std::vector<Scalar> out(m.cols(), Scalar(0));
  for (size_t j = 0; j < m.cols(); ++j)
    for (int i = 0; i < nvars(); ++i)
      if (!c_[i].is_zero()) out[j].add_product(c_[i], m(i, j));
  return LinearForm(std::move(out), scale);
}

std::string LinearForm::to_string() const { return to_poly().to_string(); }

bool operator<(const LinearForm& a, const LinearForm& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (size_t i = 0; i < a.c_.size(); ++i) {
    int c = Scalar::compare_structural(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace coxder
