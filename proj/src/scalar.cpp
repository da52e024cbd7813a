#include "coxder/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace coxder {

Scalar::Scalar(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("Scalar: zero denominator");
  q_.canonicalize();
}

Scalar Scalar::in_field(FieldPtr field, UPoly coeffs) {
  Scalar s;
  s.set_field_value(std::move(field), std::move(coeffs));
  return s;
}

Scalar Scalar::generator(FieldPtr field) {
  if (field->degree() == 1) return Scalar(-field->minpoly()[0]);
  return in_field(std::move(field), UPoly{0, 1});
}

void Scalar::set_field_value(FieldPtr f, UPoly c) {
  c = f->reduce(c);
  if (c.size() <= 1) {
    field_.reset();
    c_.clear();
    q_ = c.empty() ? mpq_class(0) : c[0];
    return;
  }
  field_ = std::move(f);
  c_ = std::move(c);
  q_ = 0;
}

UPoly Scalar::coeffs() const {
  if (field_) return c_;
  if (sgn(q_) == 0) return {};
  return UPoly{q_};
}

FieldPtr Scalar::common_field(const Scalar& a, const Scalar& b) {
  if (!a.field_) return b.field_;
  if (!b.field_) return a.field_;
  if (a.field_ != b.field_ && !a.field_->same_as(*b.field_))
    throw std::invalid_argument("Scalar: operands live in different number fields");
  return a.field_;
}

int Scalar::sign() const {
  if (!field_) return sgn(q_);
  return field_->sign(c_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
  if (!field_) return Scalar(1 / q_);
  return in_field(field_, field_->inverse(c_));
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!field_ && !o.field_) {
    q_ += o.q_;
    return *this;
  }
  FieldPtr f = common_field(*this, o);
  set_field_value(f, upoly::add(coeffs(), o.coeffs()));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (!field_ && !o.field_) {
    q_ -= o.q_;
    return *this;
  }
  FieldPtr f = common_field(*this, o);
  set_field_value(f, upoly::sub(coeffs(), o.coeffs()));
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!field_ && !o.field_) {
    q_ *= o.q_;
    return *this;
  }
  FieldPtr f = common_field(*this, o);
  if (!o.field_) {
    for (auto& c : c_) c *= o.q_;
    set_field_value(f, std::move(c_));
    return *this;
  }
  set_field_value(f, f->multiply(coeffs(), o.coeffs()));
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (!field_ && !o.field_) {
    if (sgn(o.q_) == 0) throw std::domain_error("Scalar: division by zero");
    q_ /= o.q_;
    return *this;
  }
  return *this *= o.inverse();
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  if (!field_ && !a.field_ && !b.field_) {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    q_ += tmp;
    return;
  }
  *this += a * b;
}

void Scalar::negate() {
  if (!field_) {
    q_ = -q_;
    return;
  }
  for (auto& c : c_) c = -c;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.field_ && !b.field_) return a.q_ == b.q_;
  if (!a.field_ || !b.field_) return false;  // demotion keeps these distinct
  return a.c_ == b.c_ && a.field_->same_as(*b.field_);
}

int Scalar::compare_structural(const Scalar& a, const Scalar& b) {
  if (!a.field_ && !b.field_) return cmp(a.q_, b.q_) < 0 ? -1 : (a.q_ == b.q_ ? 0 : 1);
  if (!a.field_) return -1;
  if (!b.field_) return 1;
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size() ? -1 : 1;
  for (size_t i = 0; i < a.c_.size(); ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::string Scalar::to_string(const std::string& gen) const {
  if (!field_) return q_.get_str();
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class c = c_[i];
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    mpq_class a = abs(c);
    if (i == 0) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << "*";
      os << gen;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  os << ")";
  return os.str();
}

double Scalar::to_double() const {
  if (!field_) return q_.get_d();
  mpq_class g = field_->approximate(80);
  return upoly::eval(c_, g).get_d();
}

}  // namespace coxder
