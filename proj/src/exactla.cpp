#include "coxder/exactla.hpp"

#include <stdexcept>

namespace coxder {

Scalar determinant(const ScalarMatrix& m_in) {
  if (!m_in.is_square()) throw std::invalid_argument("determinant: matrix not square");
  ScalarMatrix m = m_in;
  const size_t n = m.rows();
  Scalar det(1);
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != k) {
      m.swap_rows(p, k);
      det.negate();
    }
    det *= m(k, k);
    Scalar inv = m(k, k).inverse();
    for (size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      Scalar f = m(i, k) * inv;
      for (size_t j = k; j < n; ++j)
        if (!m(k, j).is_zero()) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

namespace {

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw std::logic_error("fraction-free elimination: inexact division");
  return std::move(*q);
}

size_t pick_pivot(const PolyMatrix& m, size_t k, size_t col) {
  size_t best = m.rows();
  for (size_t i = k; i < m.rows(); ++i) {
    if (m(i, col).is_zero()) continue;
    if (best == m.rows() || m(i, col).size() < m(best, col).size()) best = i;
  }
  return best;
}

}  // namespace

Poly determinant(const PolyMatrix& m_in) {
  if (!m_in.is_square()) throw std::invalid_argument("determinant: matrix not square");
  const size_t n = m_in.rows();
  int nv = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) nv = std::max(nv, m_in(i, j).nvars());
  if (n == 0) return Poly::constant(nv, Scalar(1));
  PolyMatrix m = m_in;
  Poly prev = Poly::constant(nv, Scalar(1));
  bool negate = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t p = pick_pivot(m, k, k);
    if (p == n) return Poly(nv);
    if (p != k) {
      m.swap_rows(p, k);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Poly t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = k == 0 ? std::move(t) : exact_quotient(t, prev);
      }
    prev = m(k, k);
  }
  Poly d = m(n - 1, n - 1);
  return negate ? -d : d;
}

namespace {

// Clears each row's denominators; returns the polynomial rows and the
// denominator used for each row.
PolyMatrix clear_rows(const LogMatrix& m, const LogMatrix* extra, std::vector<FormExponents>& dens) {
  const size_t cols = m.cols() + (extra ? extra->cols() : 0);
  PolyMatrix out(m.rows(), cols);
  dens.assign(m.rows(), {});
  for (size_t i = 0; i < m.rows(); ++i) {
    FormExponents& d = dens[i];
    auto take = [&](const LogRational& f) {
      for (const auto& [a, e] : f.denominator()) d[a] = std::max(d[a], e);
    };
    for (size_t j = 0; j < m.cols(); ++j) take(m(i, j));
    if (extra)
      for (size_t j = 0; j < extra->cols(); ++j) take((*extra)(i, j));
    for (size_t j = 0; j < cols; ++j) {
      const LogRational& f = j < m.cols() ? m(i, j) : (*extra)(i, j - m.cols());
      Poly p = f.numerator();
      if (!p.is_zero())
        for (const auto& [a, e] : d) {
          auto it = f.denominator().find(a);
          int k = e - (it == f.denominator().end() ? 0 : it->second);
          if (k > 0) p *= a.to_poly().pow(k);
        }
      out(i, j) = std::move(p);
    }
  }
  return out;
}

}  // namespace

LogRational determinant(const LogMatrix& m) {
  std::vector<FormExponents> dens;
  PolyMatrix p = clear_rows(m, nullptr, dens);
  FormExponents total;
  for (const auto& d : dens)
    for (const auto& [a, e] : d) total[a] += e;
  return LogRational(determinant(p), std::move(total));
}

std::optional<LogMatrix> solve_over_fractions(const LogMatrix& m, const LogMatrix& n,
                                              const std::vector<LinearForm>& pool) {
  if (!m.is_square() || m.rows() != n.rows()) throw std::invalid_argument("solve_over_fractions: bad shapes");
  const size_t dim = m.rows();
  const size_t cols = dim + n.cols();
  std::vector<FormExponents> dens;
  PolyMatrix a = clear_rows(m, &n, dens);
  int nv = 0;
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < cols; ++j) nv = std::max(nv, a(i, j).nvars());
  // Fraction-free Gauss-Jordan: the left block ends as d*I, the right block
  // as d*M^{-1}N.
  Poly prev = Poly::constant(nv, Scalar(1));
  for (size_t k = 0; k < dim; ++k) {
    size_t p = pick_pivot(a, k, k);
    if (p == dim) return std::nullopt;
    a.swap_rows(p, k);
    for (size_t i = 0; i < dim; ++i) {
      if (i == k) continue;
      for (size_t j = 0; j < cols; ++j) {
        if (j == k) continue;
        if (a(i, j).is_zero() && (a(k, j).is_zero() || a(i, k).is_zero())) continue;
        Poly t = a(k, k) * a(i, j);
        if (!a(i, k).is_zero() && !a(k, j).is_zero()) t -= a(i, k) * a(k, j);
        a(i, j) = k == 0 ? std::move(t) : exact_quotient(t, prev);
      }
      a(i, k) = Poly(nv);
    }
    prev = a(k, k);
  }
  const Poly& d = prev;
  // Factor d over the pool.
  FormExponents dspec;
  Poly rest = d;
  for (const auto& f : pool) {
    int e = 0;
    while (auto q = divide_by_form(rest, f)) {
      rest = std::move(*q);
      ++e;
    }
    if (e > 0) dspec[f] = e;
  }
  LogMatrix x(dim, n.cols());
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < n.cols(); ++j) {
      const Poly& y = a(i, dim + j);
      if (y.is_zero()) {
        x(i, j) = LogRational(Poly(nv));
        continue;
      }
      Poly num;
      if (rest.is_constant()) {
        num = y * rest.as_constant().inverse();
      } else {
        auto q = y.divide_exact(rest);
        if (!q) return std::nullopt;
        num = std::move(*q);
      }
      x(i, j) = LogRational(std::move(num), dspec);
    }
  return x;
}

std::vector<Scalar> RowEchelon::reduce(std::vector<Scalar> v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const size_t pc = pivots_[r];
    if (v[pc].is_zero()) continue;
    Scalar f = v[pc];
    const auto& row = rows_[r];
    for (size_t j = pc; j < ncols_; ++j)
      if (!row[j].is_zero()) v[j] -= f * row[j];
  }
  return v;
}

bool RowEchelon::add_row(std::vector<Scalar> row) {
  if (row.size() != ncols_) throw std::invalid_argument("RowEchelon: row length mismatch");
  row = reduce(std::move(row));
  size_t pc = 0;
  while (pc < ncols_ && row[pc].is_zero()) ++pc;
  if (pc == ncols_) return false;
  Scalar inv = row[pc].inverse();
  for (size_t j = pc; j < ncols_; ++j)
    if (!row[j].is_zero()) row[j] *= inv;
  // Keep the form reduced: clear the new pivot column from existing rows.
  for (auto& r : rows_) {
    if (r[pc].is_zero()) continue;
    Scalar f = r[pc];
    for (size_t j = pc; j < ncols_; ++j)
      if (!row[j].is_zero()) r[j] -= f * row[j];
  }
  // Insert sorted by pivot column.
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pc) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pc);
  return true;
}

std::vector<std::vector<Scalar>> RowEchelon::nullspace() const {
  std::vector<bool> is_pivot(ncols_, false);
  for (size_t p : pivots_) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (size_t f = 0; f < ncols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(ncols_, Scalar(0));
    v[f] = Scalar(1);
    for (size_t r = 0; r < rows_.size(); ++r)
      if (!rows_[r][f].is_zero()) v[pivots_[r]] = -rows_[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Scalar>> rational_nullspace(const ScalarMatrix& m) {
  RowEchelon e(m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    std::vector<Scalar> row(m.cols());
    for (size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    e.add_row(std::move(row));
  }
  return e.nullspace();
}

LogMatrix to_log_matrix(const PolyMatrix& m) {
  LogMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = LogRational(m(i, j));
  return r;
}

LogMatrix multiply(const LogMatrix& a, const LogMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  LogMatrix r(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) {
      LogRational acc;
      for (size_t k = 0; k < a.cols(); ++k)
        if (!a(i, k).is_zero() && !b(k, j).is_zero()) acc += a(i, k) * b(k, j);
      r(i, j) = std::move(acc);
    }
  return r;
}

}  // namespace coxder

namespace coxder {

void LinearCollector::add(size_t unknown, int block, const Poly& p, const Scalar& c) {
  for (const auto& t : p.terms()) add_term(unknown, block, t.mono, c.is_one() ? t.coeff : t.coeff * c);
}

void LinearCollector::add_term(size_t unknown, int block, Monomial m, const Scalar& c) {
  if (unknown >= n_) throw std::out_of_range("LinearCollector: unknown index");
  auto [it, fresh] = rows_.try_emplace({block, m.bits()});
  if (fresh) it->second.assign(n_, Scalar(0));
  it->second[unknown] += c;
}

void LinearCollector::feed(RowEchelon& e) const {
  for (const auto& [key, row] : rows_) e.add_row(row);
}

RowEchelon LinearCollector::echelon() const {
  RowEchelon e(n_);
  feed(e);
  return e;
}

}  // namespace coxder
