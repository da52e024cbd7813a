#include "coxder/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "coxder/matrix.hpp"

namespace coxder {

Monomial Monomial::from_exponents(const std::vector<int>& e) {
  if (static_cast<int>(e.size()) > kMaxVars) throw std::invalid_argument("Monomial: too many variables");
  std::uint64_t bits = 0;
  int total = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] > kMaxDegree) throw std::invalid_argument("Monomial: exponent out of range");
    bits |= static_cast<std::uint64_t>(e[i]) << shift(static_cast<int>(i));
    total += e[i];
  }
  if (total > kMaxDegree) throw std::invalid_argument("Monomial: total degree out of range");
  return Monomial(bits | (static_cast<std::uint64_t>(total) << 56));
}

Monomial Monomial::variable(int i) {
  return Monomial((std::uint64_t{1} << shift(i)) | (std::uint64_t{1} << 56));
}

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = exponent(i);
  return e;
}

Monomial Monomial::operator*(Monomial o) const {
  if (total_degree() + o.total_degree() > kMaxDegree)
    throw std::overflow_error("Monomial: total degree exceeds 255");
  return Monomial(bits_ + o.bits_);
}

bool Monomial::divides(Monomial o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (exponent(i) > o.exponent(i)) return false;
  return true;
}

Monomial Monomial::without(int i) const {
  std::uint64_t e = static_cast<std::uint64_t>(exponent(i));
  return Monomial(bits_ - (e << shift(i)) - (e << 56));
}

std::string variable_name(int i) { return "x" + std::to_string(i + 1); }

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.push_back(Monomial());
    return out;
  }
  std::vector<int> e(nvars, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, degree);
  return out;
}

Poly Poly::constant(int nvars, const Scalar& c) {
  Poly p(nvars);
  if (!c.is_zero()) p.terms_.push_back({Monomial(), c});
  return p;
}

Poly Poly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::out_of_range("Poly::variable: index out of range");
  Poly p(nvars);
  p.terms_.push_back({Monomial::variable(i), Scalar(1)});
  return p;
}

Poly Poly::monomial(int nvars, Monomial m, const Scalar& c) {
  Poly p(nvars);
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(int nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  Poly p(nvars);
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      continue;
    }
    if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    p.terms_.push_back(std::move(t));
  }
  if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.total_degree() == 0);
}

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.total_degree() == 0) return terms_.back().coeff;
  return Scalar(0);
}

Scalar Poly::as_constant() const {
  if (!is_constant()) throw std::logic_error("Poly::as_constant: not a constant: " + to_string());
  return constant_term();
}

Scalar Poly::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial v) { return t.mono > v; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return Scalar(0);
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.front().mono.total_degree() == terms_.back().mono.total_degree();
}

void Poly::check_compatible(const Poly& o) const {
  if (nvars_ != o.nvars_ && !terms_.empty() && !o.terms_.empty())
    throw std::invalid_argument("Poly: mismatched number of variables");
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff.negate();
    } else {
      Scalar c = a[i].coeff;
      if (subtract) c -= b[j].coeff;
      else c += b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  check_compatible(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    nvars_ = std::max(nvars_, o.nvars_);
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_compatible(o);
  if (o.terms_.empty()) return *this;
  nvars_ = std::max(nvars_, o.nvars_);
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly operator*(const Poly& a_in, const Poly& b_in) {
  a_in.check_compatible(b_in);
  const int nvars = std::max(a_in.nvars_, b_in.nvars_);
  if (a_in.terms_.empty() || b_in.terms_.empty()) return Poly(nvars);
  const Poly& a = a_in.size() <= b_in.size() ? a_in : b_in;
  const Poly& b = a_in.size() <= b_in.size() ? b_in : a_in;
  Poly out(nvars);
  if (a.size() == 1) {
    out.terms_.reserve(b.size());
    for (const auto& t : b.terms_) out.terms_.push_back({t.mono * a.terms_[0].mono, t.coeff * a.terms_[0].coeff});
    return out;
  }
  // Johnson's heap merge of the |a| sorted streams a_i * b.
  struct Entry {
    std::uint64_t key;
    std::uint32_t i, j;
    bool operator<(const Entry& o) const { return key < o.key; }
  };
  std::priority_queue<Entry> heap;
  for (std::uint32_t i = 0; i < a.size(); ++i)
    heap.push({(a.terms_[i].mono * b.terms_[0].mono).bits(), i, 0});
  out.terms_.reserve(a.size() + b.size());
  while (!heap.empty()) {
    const std::uint64_t key = heap.top().key;
    Scalar acc;
    while (!heap.empty() && heap.top().key == key) {
      Entry e = heap.top();
      heap.pop();
      acc.add_product(a.terms_[e.i].coeff, b.terms_[e.j].coeff);
      if (e.j + 1 < b.size()) heap.push({(a.terms_[e.i].mono * b.terms_[e.j + 1].mono).bits(), e.i, e.j + 1});
    }
    if (!acc.is_zero()) out.terms_.push_back({Monomial::from_bits(key), std::move(acc)});
  }
  return out;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff.negate();
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
  Poly result = constant(nvars_, Scalar(1)), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Poly Poly::shifted(Monomial m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Poly Poly::derivative(int i) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  const Monomial xi = Monomial::variable(i);
  for (const auto& t : terms_) {
    int e = t.mono.exponent(i);
    if (e == 0) continue;
    out.push_back({t.mono / xi, t.coeff * Scalar(e)});
  }
  // Dividing by x_i preserves grlex order among terms that contain x_i.
  Poly r(nvars_);
  r.terms_ = std::move(out);
  return r;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) < nvars_) throw std::invalid_argument("Poly::compose: too few images");
  const int out_vars = images.empty() ? 0 : images[0].nvars();
  // Cache powers of each image.
  std::vector<std::vector<Poly>> powers(nvars_);
  auto power = [&](int i, int e) -> const Poly& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(constant(out_vars, Scalar(1)));
    while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * images[i]);
    return v[e];
  };
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    Poly m = constant(out_vars, t.coeff);
    for (int i = 0; i < nvars_; ++i) {
      int e = t.mono.exponent(i);
      if (e > 0) m *= power(i, e);
    }
    acc.insert(acc.end(), m.terms_.begin(), m.terms_.end());
  }
  return from_terms(out_vars, std::move(acc));
}

Poly Poly::substitute_linear(const Matrix<Scalar>& m) const {
  if (static_cast<int>(m.rows()) != nvars_) throw std::invalid_argument("Poly::substitute_linear: size mismatch");
  const int out_vars = static_cast<int>(m.cols());
  std::vector<Poly> images;
  images.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    std::vector<Term> t;
    for (int j = 0; j < out_vars; ++j)
      if (!m(i, j).is_zero()) t.push_back({Monomial::variable(j), m(i, j)});
    images.push_back(from_terms(out_vars, std::move(t)));
  }
  return compose(images);
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("Poly::divide_exact: division by zero");
  const int nv = std::max(nvars_, divisor.nvars_);
  if (is_zero()) return Poly(nv);
  if (divisor.is_constant()) {
    Poly r = *this;
    r *= divisor.as_constant().inverse();
    r.nvars_ = nv;
    return r;
  }
  const Term& lt = divisor.leading_term();
  const Scalar lc_inv = lt.coeff.inverse();
  // Remainder kept as a map ordered by decreasing monomial.
  std::map<std::uint64_t, Scalar, std::greater<>> rem;
  for (const auto& t : terms_) rem.emplace(t.mono.bits(), t.coeff);
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto it = rem.begin();
    Monomial m = Monomial::from_bits(it->first);
    if (!lt.mono.divides(m)) return std::nullopt;
    Monomial qm = m / lt.mono;
    Scalar qc = it->second * lc_inv;
    for (const auto& d : divisor.terms_) {
      Monomial pm = d.mono * qm;
      auto [pos, inserted] = rem.try_emplace(pm.bits());
      if (inserted) pos->second = -(qc * d.coeff);
      else {
        pos->second -= qc * d.coeff;
        if (pos->second.is_zero()) rem.erase(pos);
      }
    }
    quot.push_back({qm, std::move(qc)});
  }
  Poly q(nv);
  q.terms_ = std::move(quot);
  return q;
}

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  while (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_mpz(const mpz_class& z) {
  mpz_class r = z % mpz_class(std::to_string(kPrime));
  if (sgn(r) < 0) r += mpz_class(std::to_string(kPrime));
  return std::stoull(r.get_str());
}

// Returns false when the denominator vanishes mod p.
bool reduce_mpq(const mpq_class& q, std::uint64_t& out) {
  std::uint64_t d = reduce_mpz(q.get_den());
  if (d == 0) return false;
  out = mulmod(reduce_mpz(q.get_num()), powmod(d, kPrime - 2));
  return true;
}

}  // namespace

bool Poly::may_vanish_on(const std::vector<Scalar>& form) const {
  if (is_zero()) return true;
  for (const auto& c : form)
    if (!c.is_rational()) return true;
  for (const auto& t : terms_)
    if (!t.coeff.is_rational()) return true;
  int r = -1;
  for (size_t i = 0; i < form.size(); ++i)
    if (!form[i].is_zero()) {
      r = static_cast<int>(i);
      break;
    }
  if (r < 0) return true;
  // Deterministic point on the hyperplane: x_j = 3^(j+7) for j != r, x_r solved.
  std::vector<std::uint64_t> pt(nvars_, 0);
  std::uint64_t s = 0;
  for (int j = 0; j < nvars_; ++j) {
    if (j == r) continue;
    pt[j] = powmod(3, j + 7);
    if (j < static_cast<int>(form.size())) {
      std::uint64_t a;
      if (!reduce_mpq(form[j].rational(), a)) return true;
      s = (s + mulmod(a, pt[j])) % kPrime;
    }
  }
  std::uint64_t ar;
  if (!reduce_mpq(form[r].rational(), ar) || ar == 0) return true;
  pt[r] = mulmod(kPrime - s == kPrime ? 0 : kPrime - s, powmod(ar, kPrime - 2));
  std::uint64_t val = 0;
  for (const auto& t : terms_) {
    std::uint64_t c;
    if (!reduce_mpq(t.coeff.rational(), c)) return true;
    for (int j = 0; j < nvars_; ++j) {
      int e = t.mono.exponent(j);
      if (e) c = mulmod(c, powmod(pt[j], e));
    }
    val = (val + c) % kPrime;
  }
  return val == 0;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) < nvars_) throw std::invalid_argument("Poly::evaluate: point too short");
  Scalar acc(0);
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (int j = 0; j < nvars_; ++j) {
      int e = t.mono.exponent(j);
      if (e) v *= point[j].pow(e);
    }
    acc += v;
  }
  return acc;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool neg = c.is_rational() && sgn(c.rational()) < 0;
    if (neg) c.negate();
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool unit = c.is_one();
    if (!unit || t.mono.total_degree() == 0) {
      os << c.to_string();
      if (t.mono.total_degree() > 0) os << "*";
    }
    bool firstvar = true;
    for (int j = 0; j < nvars_; ++j) {
      int e = t.mono.exponent(j);
      if (!e) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << variable_name(j);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace coxder
