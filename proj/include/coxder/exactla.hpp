#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "coxder/log_rational.hpp"
#include "coxder/matrix.hpp"

namespace coxder {

using PolyMatrix = Matrix<Poly>;
using LogMatrix = Matrix<LogRational>;

Scalar determinant(const ScalarMatrix& m);
// Fraction-free Bareiss elimination; pivots chosen by fewest terms.
Poly determinant(const PolyMatrix& m);
LogRational determinant(const LogMatrix& m);

// X with M X = N. The pool lists the linear forms allowed in denominators of
// X; nullopt when M is singular or X has a pole outside the pool.
std::optional<LogMatrix> solve_over_fractions(const LogMatrix& m, const LogMatrix& n,
                                              const std::vector<LinearForm>& pool);

// Incrementally maintained reduced row echelon form over Scalar.
class RowEchelon {
 public:
  explicit RowEchelon(size_t ncols) : ncols_(ncols) {}
  // Adds a row; returns false when it was dependent on the rows so far.
  bool add_row(std::vector<Scalar> row);
  size_t rank() const { return rows_.size(); }
  size_t ncols() const { return ncols_; }
  // Reduced-echelon basis of the nullspace.
  std::vector<std::vector<Scalar>> nullspace() const;
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  // Reduces v against the current rows.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const;

 private:
  size_t ncols_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<size_t> pivots_;
};

// Linear equations read off as monomial coefficients of polynomials that
// depend linearly on a fixed set of unknowns. Each (block, monomial) pair is
// one equation.
class LinearCollector {
 public:
  explicit LinearCollector(size_t nunknowns) : n_(nunknowns) {}
  size_t unknowns() const { return n_; }
  void add(size_t unknown, int block, const Poly& p, const Scalar& c = Scalar(1));
  void add_term(size_t unknown, int block, Monomial m, const Scalar& c);
  size_t equations() const { return rows_.size(); }
  RowEchelon echelon() const;
  void feed(RowEchelon& e) const;

 private:
  size_t n_;
  std::map<std::pair<int, std::uint64_t>, std::vector<Scalar>> rows_;
};

std::vector<std::vector<Scalar>> rational_nullspace(const ScalarMatrix& m);

LogMatrix to_log_matrix(const PolyMatrix& m);
LogMatrix multiply(const LogMatrix& a, const LogMatrix& b);

}  // namespace coxder
