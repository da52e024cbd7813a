#include "coxder/derivation.hpp"

#include <sstream>
#include <stdexcept>

namespace coxder {

Derivation Derivation::euler(int n) {
  Derivation d(n);
  for (int i = 0; i < n; ++i) d.c_[i] = LogRational(Poly::variable(n, i));
  return d;
}

Derivation Derivation::coordinate(int n, int i) {
  Derivation d(n);
  d.c_[i] = LogRational(Poly::constant(n, Scalar(1)));
  return d;
}

Derivation Derivation::from_polys(const std::vector<Poly>& c) {
  std::vector<LogRational> v;
  for (const auto& p : c) v.emplace_back(p);
  return Derivation(std::move(v));
}

bool Derivation::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool Derivation::is_polynomial() const {
  for (const auto& c : c_)
    if (!c.is_polynomial()) return false;
  return true;
}

std::optional<int> Derivation::degree() const {
  std::optional<int> d;
  for (const auto& c : c_) {
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) return std::nullopt;
    if (d && *d != c.degree()) return std::nullopt;
    d = c.degree();
  }
  return d;
}

LogRational Derivation::apply(const LogRational& f) const {
  LogRational r(nvars());
  for (int i = 0; i < nvars(); ++i)
    if (!c_[i].is_zero()) {
      LogRational di = f.derivative(i);
      if (!di.is_zero()) r += c_[i] * di;
    }
  return r;
}

LogRational Derivation::on_form(const LinearForm& alpha) const {
  LogRational r(nvars());
  for (int i = 0; i < nvars(); ++i)
    if (!alpha[i].is_zero() && !c_[i].is_zero()) r += c_[i] * alpha[i];
  return r;
}

Derivation& Derivation::operator+=(const Derivation& o) {
  if (c_.empty()) return *this = o;
  for (int i = 0; i < nvars(); ++i) c_[i] += o.c_[i];
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) {
  if (c_.empty()) return *this = -o;
  for (int i = 0; i < nvars(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Derivation& Derivation::operator*=(const LogRational& f) {
  for (auto& c : c_) c *= f;
  return *this;
}

Derivation& Derivation::operator*=(const Scalar& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

std::string Derivation::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < nvars(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")*d" << variable_name(i);
  }
  if (first) os << "0";
  return os.str();
}

Derivation covariant_derivative(const Derivation& theta, const Derivation& delta) {
  Derivation r(delta.nvars());
  for (int j = 0; j < delta.nvars(); ++j) r[j] = theta.apply(delta[j]);
  return r;
}

Derivation group_action(const ScalarMatrix& w, const ScalarMatrix& w_inv, const Derivation& theta) {
  const int n = theta.nvars();
  std::vector<LogRational> moved;
  for (int i = 0; i < n; ++i) moved.push_back(theta[i].substitute_linear(w_inv));
  Derivation r(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (!w(k, i).is_zero() && !moved[i].is_zero()) r[k] += moved[i] * w(k, i);
  return r;
}

Derivation group_action(const ScalarMatrix& w, const Derivation& theta) {
  return group_action(w, inverse(w), theta);
}

int invariance_flag(const ScalarMatrix& w, const Derivation& theta) {
  Derivation t = group_action(w, theta);
  if (t == theta) return 1;
  if (t == -theta) return -1;
  return 0;
}

std::vector<Derivation> coordinate_fields(const InvariantSystem& sys, const ArrangementData& arr) {
  const int n = sys.size();
  LogMatrix jt(n, n), id(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      jt(i, k) = LogRational(sys.J(k, i));
      id(i, k) = LogRational(Poly::constant(n, Scalar(i == k ? 1 : 0)));
    }
  auto v = solve_over_fractions(jt, id, arr.forms());
  if (!v) throw std::logic_error("coordinate_fields: Jacobian solve failed");
  std::vector<Derivation> out;
  for (int i = 0; i < n; ++i) {
    Derivation d(n);
    for (int k = 0; k < n; ++k) d[k] = (*v)(k, i);
    out.push_back(std::move(d));
  }
  return out;
}

MembershipResult log_membership_detail(const Derivation& theta, const ArrangementData& arr, const Multiplicity& m) {
  for (const auto& c : theta.coeffs())
    for (const auto& [a, e] : c.denominator())
      if (arr.index_of(a) < 0) throw std::invalid_argument("log_membership: pole along " + a.to_string() + " outside the arrangement");
  for (size_t h = 0; h < arr.hyperplanes.size(); ++h) {
    const LinearForm& alpha = arr.hyperplanes[h].alpha;
    int min_order = kPlusInfinity;
    for (const auto& c : theta.coeffs()) min_order = std::min(min_order, c.order_along(alpha));
    if (min_order >= 0 && m[h] <= 0) continue;
    LogRational normal = theta.on_form(alpha);
    int ord = normal.order_along(alpha);
    if (ord < m[h]) {
      return {false, static_cast<int>(h),
              "order " + std::to_string(ord) + " of theta(alpha) along " + alpha.to_string() + " is below " +
                  std::to_string(m[h])};
    }
    if (min_order >= 0) continue;
    LogRational scaled = normal * alpha.norm2().inverse();
    for (int k = 0; k < theta.nvars(); ++k) {
      LogRational t = theta[k] - scaled * alpha[k];
      if (t.order_along(alpha) < 0)
        return {false, static_cast<int>(h), "tangential part has a pole along " + alpha.to_string()};
    }
  }
  return {};
}

bool log_membership(const Derivation& theta, const ArrangementData& arr, const Multiplicity& m) {
  return log_membership_detail(theta, arr, m).ok;
}

}  // namespace coxder
