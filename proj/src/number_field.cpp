#include "coxder/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace coxder {

namespace upoly {

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly add(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

UPoly derivative(const UPoly& p) {
  if (p.size() <= 1) return {};
  UPoly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
  trim(r);
  return r;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.empty()) throw std::domain_error("upoly::divmod: division by zero");
  r = a;
  trim(r);
  const int db = degree(b);
  q.assign(std::max(0, degree(r) - db + 1), mpq_class(0));
  while (!r.empty() && degree(r) >= db) {
    const int shift = degree(r) - db;
    mpq_class c = r.back() / b.back();
    q[shift] = c;
    for (int i = 0; i <= db; ++i) r[shift + i] -= c * b[i];
    trim(r);
  }
  trim(q);
}

UPoly monic(const UPoly& p) {
  if (p.empty()) return p;
  UPoly r = p;
  mpq_class lead = p.back();
  for (auto& c : r) c /= lead;
  return r;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    UPoly q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

mpq_class eval(const UPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const UPoly& p, const mpq_class& x) { return sgn(eval(p, x)); }

namespace {

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    UPoly q, r;
    divmod(seq[seq.size() - 2], seq.back(), q, r);
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().empty()) seq.pop_back();
  return seq;
}

int variations(const std::vector<UPoly>& seq, const mpq_class& x) {
  int count = 0, last = 0;
  for (const auto& s : seq) {
    int v = sign_at(s, x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

using cplx = std::complex<long double>;

// Durand-Kerner iteration on a monic polynomial.
std::vector<cplx> numeric_roots(const std::vector<long double>& monic_coeffs) {
  const int n = static_cast<int>(monic_coeffs.size()) - 1;
  std::vector<cplx> z(n);
  const cplx seed(0.4L, 0.9L);
  z[0] = 1;
  for (int i = 1; i < n; ++i) z[i] = z[i - 1] * seed;
  long double scale = 1;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(monic_coeffs[i]));
  for (auto& v : z) v *= scale;
  auto eval_at = [&](cplx x) {
    cplx acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * x + monic_coeffs[i];
    return acc;
  };
  for (int iter = 0; iter < 5000; ++iter) {
    long double delta = 0;
    for (int i = 0; i < n; ++i) {
      cplx den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      cplx step = eval_at(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-30L) break;
  }
  return z;
}

}  // namespace

int sturm_count(const UPoly& p, const mpq_class& lo, const mpq_class& hi) {
  auto seq = sturm_sequence(p);
  return variations(seq, lo) - variations(seq, hi);
}

bool is_irreducible(const UPoly& p_in) {
  UPoly p = monic(p_in);
  const int n = degree(p);
  if (n <= 0) return false;
  if (n == 1) return true;
  // Scale to a monic integer polynomial g(t) = L^n p(t/L); its monic
  // rational factors have integer coefficients.
  mpz_class lcm = 1;
  for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  UPoly g(n + 1);
  mpz_class pw = 1;
  for (int k = n; k >= 0; --k) {
    g[k] = p[k] * mpq_class(pw);
    pw *= lcm;
  }
  std::vector<long double> gd(n + 1);
  for (int k = 0; k <= n; ++k) gd[k] = static_cast<long double>(g[k].get_d());
  auto roots = numeric_roots(gd);
  // Candidate monic factors from subsets of roots of size <= n/2; any
  // candidate with near-integer coefficients is confirmed by exact division.
  for (int k = 1; k <= n / 2; ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<cplx> prod{1};
      for (int i : idx) {
        std::vector<cplx> next(prod.size() + 1, 0);
        for (size_t j = 0; j < prod.size(); ++j) {
          next[j + 1] += prod[j];
          next[j] -= prod[j] * roots[i];
        }
        prod = std::move(next);
      }
      bool integral = true;
      UPoly cand(k + 1);
      for (int j = 0; j <= k && integral; ++j) {
        long double re = prod[j].real(), im = prod[j].imag();
        long double rr = std::round(re);
        long double tol = 1e-6L * std::max<long double>(1, std::fabs(re));
        if (std::fabs(im) > tol || std::fabs(re - rr) > tol) integral = false;
        else cand[j] = mpq_class(static_cast<double>(rr));
      }
      if (integral) {
        UPoly q, r;
        divmod(g, cand, q, r);
        if (r.empty()) return false;
      }
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

}  // namespace upoly

UPoly cyclotomic(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: n must be positive");
  UPoly num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    UPoly q, r;
    upoly::divmod(num, cyclotomic(d), q, r);
    num = std::move(q);
  }
  return num;
}

namespace {

// [a,b] * [c,d]
void interval_mul(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                  const mpq_class& d, mpq_class& lo, mpq_class& hi) {
  mpq_class p[4] = {a * c, a * d, b * c, b * d};
  lo = *std::min_element(p, p + 4);
  hi = *std::max_element(p, p + 4);
}

int interval_sign(const UPoly& a, const mpq_class& glo, const mpq_class& ghi) {
  mpq_class lo = 0, hi = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    mpq_class nlo, nhi;
    interval_mul(lo, hi, glo, ghi, nlo, nhi);
    lo = nlo + *it;
    hi = nhi + *it;
  }
  if (lo > 0) return 1;
  if (hi < 0) return -1;
  return 0;
}

void bisect(const UPoly& minpoly, mpq_class& lo, mpq_class& hi) {
  mpq_class mid = (lo + hi) / 2;
  int s_lo = upoly::sign_at(minpoly, lo);
  int s_mid = upoly::sign_at(minpoly, mid);
  if (s_mid == 0) {
    lo = hi = mid;
    return;
  }
  if (s_lo * s_mid < 0) hi = mid;
  else lo = mid;
}

}  // namespace

std::shared_ptr<const NumberField> NumberField::create(UPoly minpoly,
                                                       mpq_class lo,
                                                       mpq_class hi,
                                                       std::string name) {
  upoly::trim(minpoly);
  if (upoly::degree(minpoly) < 1)
    throw std::invalid_argument("NumberField: minimal polynomial must have degree >= 1");
  minpoly = upoly::monic(minpoly);
  if (upoly::degree(upoly::gcd(minpoly, upoly::derivative(minpoly))) != 0)
    throw std::invalid_argument("NumberField: minimal polynomial is not squarefree");
  if (!upoly::is_irreducible(minpoly))
    throw std::invalid_argument("NumberField: minimal polynomial is reducible over Q");
  if (!(lo < hi)) throw std::invalid_argument("NumberField: empty isolating interval");
  if (upoly::sturm_count(minpoly, lo, hi) != 1 || upoly::sign_at(minpoly, hi) == 0)
    throw std::invalid_argument("NumberField: interval does not isolate exactly one root");

  std::shared_ptr<NumberField> f(new NumberField());
  f->minpoly_ = std::move(minpoly);
  f->name_ = std::move(name);
  const mpq_class eps = mpq_class(1, 1) / mpq_class(mpz_class(1) << 64);
  while (hi - lo > eps && lo != hi) bisect(f->minpoly_, lo, hi);
  f->lo_ = lo;
  f->hi_ = hi;

  const int n = f->degree();
  f->power_table_.resize(std::max(1, 2 * n - 1));
  for (int k = 0; k < 2 * n - 1; ++k) {
    UPoly mono(k + 1);
    mono[k] = 1;
    UPoly q, r;
    upoly::divmod(mono, f->minpoly_, q, r);
    f->power_table_[k] = std::move(r);
  }
  return f;
}

std::shared_ptr<const NumberField> NumberField::sqrt(long n) {
  if (n < 2) throw std::invalid_argument("NumberField::sqrt: n must be >= 2");
  double approx = std::sqrt(static_cast<double>(n));
  mpq_class lo(approx - 1e-9), hi(approx + 1e-9);
  return create(UPoly{mpq_class(-n), 0, 1}, lo, hi, "sqrt(" + std::to_string(n) + ")");
}

std::shared_ptr<const NumberField> NumberField::cos_pi_over(long m) {
  if (m < 4) throw std::invalid_argument("NumberField::cos_pi_over: m must be >= 4");
  UPoly phi = cyclotomic(2 * m);
  const int k = upoly::degree(phi) / 2;
  // z^-k Phi(z) = a_k + sum_j a_{k+j} (z^j + z^-j); V_j = t V_{j-1} - V_{j-2}.
  std::vector<UPoly> v{UPoly{2}, UPoly{0, 1}};
  for (int j = 2; j <= k; ++j)
    v.push_back(upoly::sub(upoly::mul(UPoly{0, 1}, v[j - 1]), v[j - 2]));
  UPoly psi{phi[k]};
  for (int j = 1; j <= k; ++j) psi = upoly::add(psi, upoly::mul(UPoly{phi[k + j]}, v[j]));
  // Root 2cos(pi/m) of psi; substitute t = 2c.
  UPoly minpoly(psi.size());
  mpq_class pw = 1;
  for (size_t i = 0; i < psi.size(); ++i) {
    minpoly[i] = psi[i] * pw;
    pw *= 2;
  }
  double approx = std::cos(M_PI / static_cast<double>(m));
  mpq_class lo(approx - 1e-10), hi(approx + 1e-10);
  return create(minpoly, lo, hi, "cos(pi/" + std::to_string(m) + ")");
}

UPoly NumberField::reduce(const UPoly& p) const {
  const int n = degree();
  if (upoly::degree(p) < n) {
    UPoly r = p;
    upoly::trim(r);
    return r;
  }
  if (upoly::degree(p) < 2 * n - 1) {
    UPoly r(n);
    for (size_t k = 0; k < p.size(); ++k) {
      if (p[k] == 0) continue;
      const UPoly& t = power_table_[k];
      for (size_t i = 0; i < t.size(); ++i) r[i] += p[k] * t[i];
    }
    upoly::trim(r);
    return r;
  }
  UPoly q, r;
  upoly::divmod(p, minpoly_, q, r);
  return r;
}

UPoly NumberField::multiply(const UPoly& a, const UPoly& b) const {
  return reduce(upoly::mul(a, b));
}

UPoly NumberField::inverse(const UPoly& a) const {
  // Extended Euclid: s*a + t*minpoly = 1.
  UPoly r0 = minpoly_, r1 = a;
  UPoly s0{}, s1{1};
  upoly::trim(r1);
  if (r1.empty()) throw std::domain_error("NumberField::inverse: zero element");
  while (!r1.empty()) {
    UPoly q, r;
    upoly::divmod(r0, r1, q, r);
    UPoly s = upoly::sub(s0, upoly::mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant since minpoly is irreducible.
  mpq_class c = r0[0];
  for (auto& x : s0) x /= c;
  return reduce(s0);
}

int NumberField::sign(const UPoly& a) const {
  UPoly r = a;
  upoly::trim(r);
  if (r.empty()) return 0;
  if (r.size() == 1) return sgn(r[0]);
  mpq_class lo = lo_, hi = hi_;
  int steps = 8;
  while (true) {
    int s = interval_sign(r, lo, hi);
    if (s != 0) return s;
    if (lo == hi) return sgn(upoly::eval(r, lo));
    for (int i = 0; i < steps && lo != hi; ++i) bisect(minpoly_, lo, hi);
    steps *= 2;
  }
}

mpq_class NumberField::approximate(int bits) const {
  mpq_class lo = lo_, hi = hi_;
  const mpq_class eps = mpq_class(1) / mpq_class(mpz_class(1) << bits);
  while (hi - lo > eps && lo != hi) bisect(minpoly_, lo, hi);
  return (lo + hi) / 2;
}

bool NumberField::same_as(const NumberField& other) const {
  if (this == &other) return true;
  return minpoly_ == other.minpoly_ && lo_ < other.hi_ && other.lo_ < hi_;
}

}  // namespace coxder
