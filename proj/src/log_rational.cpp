#include "coxder/log_rational.hpp"

#include <sstream>
#include <stdexcept>

#include "coxder/matrix.hpp"

namespace coxder {

std::optional<Poly> divide_by_form(const Poly& f, const LinearForm& alpha) {
  if (f.is_zero()) return f;
  if (!f.may_vanish_on(alpha.coeffs())) return std::nullopt;
  return f.divide_exact(alpha.to_poly());
}

int form_multiplicity(const Poly& f, const LinearForm& alpha) {
  if (f.is_zero()) return kPlusInfinity;
  int k = 0;
  Poly g = f;
  while (auto q = divide_by_form(g, alpha)) {
    g = std::move(*q);
    ++k;
  }
  return k;
}

LogRational::LogRational(Poly num, FormExponents den) : num_(std::move(num)), den_(std::move(den)) {
  for (auto it = den_.begin(); it != den_.end();) {
    if (it->second < 0) throw std::invalid_argument("LogRational: negative denominator exponent");
    if (it->second == 0) it = den_.erase(it);
    else ++it;
  }
  reduce();
}

LogRational LogRational::product_of_forms(int nvars, const FormExponents& spec, const Scalar& c) {
  Poly num = Poly::constant(nvars, c);
  FormExponents den;
  for (const auto& [a, k] : spec) {
    if (k > 0) num *= a.to_poly().pow(k);
    else if (k < 0) den[a] = -k;
  }
  LogRational r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

void LogRational::reduce_form(const LinearForm& alpha) {
  auto it = den_.find(alpha);
  if (it == den_.end()) return;
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  while (it->second > 0) {
    auto q = divide_by_form(num_, alpha);
    if (!q) break;
    num_ = std::move(*q);
    --it->second;
  }
  if (it->second == 0) den_.erase(it);
}

void LogRational::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  std::vector<LinearForm> forms;
  for (const auto& [a, e] : den_) forms.push_back(a);
  for (const auto& a : forms) reduce_form(a);
}

Poly LogRational::den_poly() const {
  Poly d = Poly::constant(nvars(), Scalar(1));
  for (const auto& [a, e] : den_) d *= a.to_poly().pow(e);
  return d;
}

int LogRational::degree() const {
  if (num_.is_zero()) return kMinusInfinity;
  int d = num_.degree();
  for (const auto& [a, e] : den_) d -= e;
  return d;
}

namespace {

// Multiplies num by prod alpha^(target - have) over target's forms.
Poly lift(const Poly& num, const FormExponents& have, const FormExponents& target) {
  Poly r = num;
  for (const auto& [a, e] : target) {
    auto it = have.find(a);
    int k = e - (it == have.end() ? 0 : it->second);
    if (k > 0) r *= a.to_poly().pow(k);
  }
  return r;
}

FormExponents max_exponents(const FormExponents& a, const FormExponents& b) {
  FormExponents r = a;
  for (const auto& [f, e] : b) {
    auto& slot = r[f];
    slot = std::max(slot, e);
  }
  return r;
}

}  // namespace

LogRational& LogRational::operator+=(const LogRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    FormExponents d = max_exponents(den_, o.den_);
    num_ = lift(num_, den_, d) + lift(o.num_, o.den_, d);
    den_ = std::move(d);
  }
  reduce();
  return *this;
}

LogRational& LogRational::operator-=(const LogRational& o) { return *this += -o; }

LogRational& LogRational::operator*=(const LogRational& o) {
  if (is_zero() || o.is_zero()) {
    num_ = Poly(std::max(nvars(), o.nvars()));
    den_.clear();
    return *this;
  }
  num_ *= o.num_;
  std::vector<LinearForm> touched;
  for (const auto& [a, e] : o.den_) {
    den_[a] += e;
    touched.push_back(a);
  }
  // Only cancellations between one side's numerator and the other's
  // denominator are possible.
  if (!o.num_.is_constant() || !touched.empty()) reduce();
  return *this;
}

LogRational& LogRational::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    num_ = Poly(nvars());
    den_.clear();
    return *this;
  }
  num_ *= c;
  return *this;
}

LogRational LogRational::operator-() const {
  LogRational r = *this;
  r.num_ = -r.num_;
  return r;
}

LogRational LogRational::pow(int e) const {
  if (e < 0) {
    if (!num_.is_constant() || num_.is_zero())
      throw std::domain_error("LogRational::pow: negative power needs a constant numerator");
    FormExponents inv;
    for (const auto& [a, k] : den_) inv[a] = k * (-e);
    return product_of_forms(nvars(), inv, num_.as_constant().pow(e));
  }
  LogRational r(Poly::constant(nvars(), Scalar(1)));
  LogRational base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return r;
}

LogRational LogRational::divided_by_forms(const FormExponents& spec, const Scalar& c) const {
  FormExponents inv;
  for (const auto& [a, k] : spec) inv[a] = -k;
  return *this * product_of_forms(nvars(), inv, c.inverse());
}

LogRational LogRational::derivative(int i) const {
  if (num_.is_zero()) return *this;
  if (den_.empty()) return LogRational(num_.derivative(i));
  // d(N / prod a^e) = [dN prod a - N sum e_a a_i prod_{b != a} b] / prod a^(e+1)
  std::vector<std::pair<LinearForm, Poly>> forms;
  for (const auto& [a, e] : den_) forms.push_back({a, a.to_poly()});
  Poly all = Poly::constant(nvars(), Scalar(1));
  for (const auto& f : forms) all *= f.second;
  Poly top = num_.derivative(i) * all;
  for (size_t k = 0; k < forms.size(); ++k) {
    const LinearForm& a = forms[k].first;
    const Scalar& ai = a[i];
    if (ai.is_zero()) continue;
    Poly others = Poly::constant(nvars(), Scalar(den_.at(a)) * ai);
    for (size_t j = 0; j < forms.size(); ++j)
      if (j != k) others *= forms[j].second;
    top -= num_ * others;
  }
  FormExponents d;
  for (const auto& [a, e] : den_) d[a] = e + 1;
  return LogRational(std::move(top), std::move(d));
}

LogRational LogRational::substitute_linear(const Matrix<Scalar>& m) const {
  Poly n = num_.substitute_linear(m);
  FormExponents d;
  Scalar c(1);
  for (const auto& [a, e] : den_) {
    Scalar s;
    LinearForm b = a.transformed(m, &s);
    d[b] += e;
    c *= s.pow(e);
  }
  n *= c.inverse();
  return LogRational(std::move(n), std::move(d));
}

int LogRational::order_along(const LinearForm& alpha) const {
  if (num_.is_zero()) return kPlusInfinity;
  auto it = den_.find(alpha);
  if (it != den_.end()) return -it->second;
  return form_multiplicity(num_, alpha);
}

std::string LogRational::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ")/(";
  bool first = true;
  for (const auto& [a, e] : den_) {
    if (!first) os << "*";
    first = false;
    os << "(" << a.to_string() << ")";
    if (e > 1) os << "^" << e;
  }
  os << ")";
  return os.str();
}

std::optional<Scalar> match_product_of_forms(const LogRational& f, const FormExponents& spec) {
  if (f.is_zero()) return std::nullopt;
  // Every denominator form must be demanded with exactly that negative power.
  for (const auto& [a, e] : f.denominator()) {
    auto it = spec.find(a);
    if (it == spec.end() || it->second != -e) return std::nullopt;
  }
  Poly rest = f.numerator();
  for (const auto& [a, k] : spec) {
    if (k < 0) {
      auto it = f.denominator().find(a);
      if (it == f.denominator().end() || it->second != -k) return std::nullopt;
      continue;
    }
    for (int j = 0; j < k; ++j) {
      auto q = divide_by_form(rest, a);
      if (!q) return std::nullopt;
      rest = std::move(*q);
    }
  }
  if (!rest.is_constant() || rest.is_zero()) return std::nullopt;
  return rest.as_constant();
}

}  // namespace coxder

namespace coxder {

FormChart::FormChart(const LinearForm& alpha) : r_(alpha.lead_index()), n_(alpha.nvars()) {
  Scalar inv = alpha[r_].inverse();
  for (int i = 0; i < n_; ++i) {
    if (i != r_) {
      var_images_.push_back(Poly::variable(n_, i));
      continue;
    }
    Poly v = Poly::variable(n_, r_) * inv;
    for (int j = 0; j < n_; ++j)
      if (j != r_ && !alpha[j].is_zero()) v -= Poly::variable(n_, j) * (alpha[j] * inv);
    var_images_.push_back(std::move(v));
  }
}

Poly FormChart::image(Monomial m) {
  if (m.total_degree() == 0) return Poly::constant(n_, Scalar(1));
  auto it = cache_.find(m.bits());
  if (it != cache_.end()) return it->second;
  int i = n_ - 1;
  while (m.exponent(i) == 0) --i;
  Poly r = image(m / Monomial::variable(i)) * var_images_[i];
  cache_.emplace(m.bits(), r);
  return r;
}

Poly FormChart::transform(const Poly& f) {
  std::vector<Term> acc;
  for (const auto& t : f.terms()) {
    const Poly img = image(t.mono);
    for (const auto& u : img.terms()) acc.push_back({u.mono, u.coeff * t.coeff});
  }
  return Poly::from_terms(n_, std::move(acc));
}

std::vector<Term> FormChart::low_order_terms(const Poly& f, int e) {
  std::vector<Term> out;
  if (e <= 0) return out;
  const Poly g = transform(f);
  for (const auto& t : g.terms())
    if (t.mono.exponent(r_) < e) out.push_back(t);
  return out;
}

}  // namespace coxder
