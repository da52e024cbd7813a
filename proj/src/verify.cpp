#include "coxder/verify.hpp"

#include <algorithm>
#include <sstream>

namespace coxder {

std::vector<Derivation> canonical_order(std::vector<Derivation> basis) {
  std::vector<std::pair<std::pair<int, std::string>, size_t>> keys;
  for (size_t i = 0; i < basis.size(); ++i)
    keys.push_back({{basis[i].degree().value_or(INT_MAX), basis[i].to_string()}, i});
  std::sort(keys.begin(), keys.end());
  std::vector<Derivation> out;
  for (const auto& k : keys) out.push_back(std::move(basis[k.second]));
  return out;
}

SaitoResult saito_check(const ArrangementData& arr, const Multiplicity& m, const std::vector<Derivation>& basis) {
  SaitoResult r;
  const int n = arr.rank;
  if (static_cast<int>(basis.size()) != n) {
    r.witness = "basis has " + std::to_string(basis.size()) + " elements, expected " + std::to_string(n);
    return r;
  }
  for (size_t i = 0; i < basis.size(); ++i) {
    MembershipResult mr;
    try {
      mr = log_membership_detail(basis[i], arr, m);
    } catch (const std::exception& e) {
      r.witness = "element " + std::to_string(i) + ": " + e.what();
      return r;
    }
    if (!mr.ok) {
      r.witness = "element " + std::to_string(i) + " fails at hyperplane " +
                  arr.hyperplanes[mr.hyperplane].alpha.to_string() + ": " + mr.reason;
      return r;
    }
  }
  auto sorted = canonical_order(basis);
  LogMatrix M(n, n, LogRational(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) M(k, i) = sorted[i][k];
  LogRational det = determinant(M);
  auto c = match_product_of_forms(det, m.spec(arr));
  if (!c) {
    r.witness = det.is_zero() ? "determinant vanishes" : "determinant is not c * prod alpha_H^m(H)";
    return r;
  }
  r.ok = true;
  r.c = *c;
  return r;
}

std::vector<std::vector<int>> invariance_check(const std::vector<Derivation>& basis,
                                               const std::vector<ScalarMatrix>& gens) {
  std::vector<std::vector<int>> out;
  for (const auto& t : basis) {
    std::vector<int> row;
    for (const auto& w : gens) row.push_back(invariance_flag(w, t));
    out.push_back(std::move(row));
  }
  return out;
}

CheckReport check_certificate(const BasisCertificate& cert) {
  CheckReport r;
  ArrangementData arr = build_arrangement(cert.family, cert.param);
  const int n = arr.rank;
  if (cert.m.m.size() != arr.hyperplanes.size()) {
    r.fail("multiplicity has the wrong length");
    return r;
  }
  if (static_cast<int>(cert.basis.size()) != n) {
    r.fail("basis length " + std::to_string(cert.basis.size()) + " differs from rank " + std::to_string(n));
    return r;
  }
  for (size_t i = 0; i < cert.basis.size(); ++i)
    if (cert.basis[i].nvars() != n) {
      r.fail("element " + std::to_string(i) + " has the wrong number of coordinates");
      return r;
    }
  SaitoResult s = saito_check(arr, cert.m, cert.basis);
  if (!s.ok) r.fail("saito: " + s.witness);
  r.saito_c = s.c;
  if (s.ok && !cert.saito_c.is_zero()) {
    if (cert.saito_c != s.c) r.fail("saito: recorded constant differs from the recomputed one");
  }

  std::vector<int> actual;
  for (size_t i = 0; i < cert.basis.size(); ++i) {
    auto d = cert.basis[i].degree();
    if (!d) {
      r.fail("element " + std::to_string(i) + " is not homogeneous");
      return r;
    }
    actual.push_back(*d);
  }
  std::vector<int> claimed = cert.exponents;
  std::sort(actual.begin(), actual.end());
  std::sort(claimed.begin(), claimed.end());
  if (actual != claimed) r.fail("exponents: claimed degrees differ from actual degrees");
  long sum = 0;
  for (int e : claimed) sum += e;
  if (sum != cert.m.total()) r.fail("exponents: sum differs from |m|");

  auto flags = invariance_check(cert.basis, arr.simple);
  if (!cert.invariance.empty()) {
    // Compare as multisets of rows so that the basis order does not matter.
    auto a = flags, b = cert.invariance;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) r.fail("invariance: recorded flags differ from recomputed ones");
  }
  if (cert.case_tag == 1)
    for (size_t i = 0; i < flags.size(); ++i)
      for (size_t g = 0; g < flags[i].size(); ++g)
        if (flags[i][g] != 1)
          r.fail("invariance: element " + std::to_string(i) + " is not fixed by generator " + std::to_string(g));
  return r;
}

// ---------------------------------------------------------------------------

Oracle::Oracle(const ArrangementData& arr, Multiplicity m, bool invariant)
    : arr_(arr), m_(std::move(m)), invariant_(invariant) {
  for (size_t h = 0; h < arr_.hyperplanes.size(); ++h) {
    int need = std::max(0, -m_[h]);
    if (arr_.hyperplanes[h].orbit == 1) a_ = std::max(a_, need);
    else b_ = std::max(b_, need);
  }
  for (const auto& hp : arr_.hyperplanes) {
    int e = hp.orbit == 1 ? a_ : b_;
    pole_degree_ += e;
    if (e > 0) den_[hp.alpha] = e;
  }
  for (const auto& hp : arr_.hyperplanes) charts_.emplace_back(hp.alpha);
}

const Oracle::Piece& Oracle::piece(int d) {
  auto it = pieces_.find(d);
  if (it != pieces_.end()) return it->second;
  Piece pc;
  const int n = arr_.rank;
  const int nd = d + pole_degree_;
  if (nd >= 0) {
    auto monos = monomials_of_degree(n, nd);
    const size_t M = monos.size();
    const size_t U = n * M;
    LinearCollector col(U);
    const int blocks_per_h = n + 1;
    for (size_t h = 0; h < arr_.hyperplanes.size(); ++h) {
      const auto& hp = arr_.hyperplanes[h];
      const int e = hp.orbit == 1 ? a_ : b_;
      const int normal = m_[h] + e;
      const int need = std::max(normal, e);
      if (need <= 0) continue;
      const LinearForm& alpha = hp.alpha;
      const Scalar nrm = alpha.norm2();
      const int r = charts_[h].variable();
      for (size_t j = 0; j < M; ++j) {
        Poly img = charts_[h].transform(Poly::monomial(n, monos[j], Scalar(1)));
        std::vector<Term> low;
        for (const auto& t : img.terms())
          if (t.mono.exponent(r) < need) low.push_back(t);
        for (int i = 0; i < n; ++i) {
          const size_t u = i * M + j;
          for (const auto& t : low) {
            const int s = t.mono.exponent(r);
            if (s < normal && !alpha[i].is_zero())
              col.add_term(u, static_cast<int>(h) * blocks_per_h, t.mono, t.coeff * alpha[i]);
            if (s < e)
              for (int k = 0; k < n; ++k) {
                Scalar c = (i == k ? nrm : Scalar(0)) - alpha[k] * alpha[i];
                if (!c.is_zero()) col.add_term(u, static_cast<int>(h) * blocks_per_h + 1 + k, t.mono, t.coeff * c);
              }
          }
        }
      }
    }
    if (invariant_) {
      const int base = static_cast<int>(arr_.hyperplanes.size()) * blocks_per_h;
      for (size_t g = 0; g < arr_.simple.size(); ++g) {
        const ScalarMatrix& w = arr_.simple[g];
        const ScalarMatrix winv = inverse(w);
        int eps = 1;
        if (a_ % 2 == 1) eps *= invariance_sign(arr_.Q1, w);
        if (b_ % 2 == 1) eps *= invariance_sign(arr_.Q2, w);
        if (eps == 0) throw std::logic_error("Oracle: Q1 or Q2 is not semi-invariant");
        for (size_t j = 0; j < M; ++j) {
          Poly moved = Poly::monomial(n, monos[j], Scalar(1)).substitute_linear(winv);
          for (int i = 0; i < n; ++i) {
            const size_t u = i * M + j;
            for (int k = 0; k < n; ++k)
              if (!w(k, i).is_zero()) col.add(u, base + static_cast<int>(g) * n + k, moved, w(k, i));
            col.add_term(u, base + static_cast<int>(g) * n + i, monos[j], Scalar(-eps));
          }
        }
      }
    }
    for (const auto& v : col.echelon().nullspace()) {
      std::vector<Poly> num;
      for (int i = 0; i < n; ++i) {
        std::vector<Term> terms;
        for (size_t j = 0; j < M; ++j)
          if (!v[i * M + j].is_zero()) terms.push_back({monos[j], v[i * M + j]});
        num.push_back(Poly::from_terms(n, std::move(terms)));
      }
      pc.basis.push_back(std::move(num));
    }
  }
  return pieces_.emplace(d, std::move(pc)).first->second;
}

size_t Oracle::dimension(int d) { return piece(d).basis.size(); }

std::vector<std::vector<Poly>> Oracle::numerator_basis(int d) { return piece(d).basis; }

Derivation Oracle::from_numerators(const std::vector<Poly>& n) const {
  std::vector<LogRational> c;
  for (const auto& p : n) c.push_back(den_.empty() ? LogRational(p) : LogRational(p, den_));
  return Derivation(std::move(c));
}

std::vector<Derivation> Oracle::basis(int d) {
  std::vector<Derivation> out;
  for (const auto& v : piece(d).basis) out.push_back(from_numerators(v));
  return out;
}

size_t oracle_module_dimension(const ArrangementData& arr, const Multiplicity& m, int d) {
  Oracle o(arr, m);
  return o.dimension(d);
}

// ---------------------------------------------------------------------------

namespace {

long binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Multiplies a truncated series by 1 / (1 - t^d).
void divide_one_minus(std::vector<long>& c, int d) {
  for (size_t i = d; i < c.size(); ++i) c[i] += c[i - d];
}

}  // namespace

long free_dimension(const std::vector<int>& exponents, int rank, int d) {
  long s = 0;
  for (int e : exponents)
    if (d >= e) s += binomial(d - e + rank - 1, rank - 1);
  return s;
}

HilbertReport hilbert_compare(const std::vector<int>& exponents, int rank, Oracle& oracle, int d_max) {
  HilbertReport rep;
  for (int d = oracle.min_degree(); d <= d_max; ++d) {
    HilbertRow row{d, free_dimension(exponents, rank, d), static_cast<long>(oracle.dimension(d))};
    if (row.predicted != row.observed) {
      rep.ok = false;
      if (!rep.first_mismatch) rep.first_mismatch = d;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

long Series::at(int d) const {
  if (d < min_degree || d >= min_degree + static_cast<int>(coeffs.size())) return 0;
  return coeffs[d - min_degree];
}

PoincareReport poincare_check(const EpqContext& ctx, int p, int q, int k_max, int d_max, bool with_oracle) {
  PoincareReport rep;
  const auto& sys = ctx.system(GroupTag::W);
  const int n = ctx.rank();
  const int deg_zeta = p * ctx.h1() + q * ctx.h2() + 1;
  const int lo = deg_zeta - sys.h;
  const int len = std::max(0, d_max - lo + 1);

  auto blocks = primitive_decomposition(ctx, p, q, k_max);
  std::vector<long> b(len, 0);
  for (const auto& blk : blocks)
    for (const auto& t : blk) {
      auto d = t.degree();
      if (!d) {
        rep.ok = false;
        rep.detail = "block member is not homogeneous";
        return rep;
      }
      if (*d - lo < len) ++b[*d - lo];
    }
  for (int i = 0; i < n - 1; ++i) divide_one_minus(b, sys.degrees[i]);
  rep.blocks = {lo, b};

  std::vector<long> c(len, 0);
  for (int dj : sys.degrees)
    if (deg_zeta - dj - lo < len) ++c[deg_zeta - dj - lo];
  for (int i = 0; i < n; ++i) divide_one_minus(c, sys.degrees[i]);
  rep.closed_form = {lo, c};

  // Block k_max + 1 would start at deg_zeta + (k_max + 1) h - h.
  const int trusted = std::min(d_max, deg_zeta + k_max * sys.h - 1);
  std::ostringstream os;
  for (int d = lo; d <= trusted; ++d)
    if (rep.blocks.at(d) != rep.closed_form.at(d)) {
      rep.ok = false;
      os << "blocks and closed form differ at degree " << d << "; ";
      break;
    }
  if (trusted < d_max) os << "compared through degree " << trusted << " only; ";

  if (with_oracle) {
    auto [m1, m2] = multiplicity_for(p, q, 1);
    Oracle o(ctx.arrangement(), Multiplicity::from_orbits(ctx.arrangement(), m1, m2), true);
    Series s{lo, std::vector<long>(len, 0)};
    for (int d = std::max(lo, o.min_degree()); d <= d_max; ++d) s.coeffs[d - lo] = static_cast<long>(o.dimension(d));
    for (int d = o.min_degree(); d < lo; ++d)
      if (o.dimension(d) != 0) {
        rep.ok = false;
        os << "invariant part is nonzero in degree " << d << " below the series; ";
      }
    for (int d = lo; d <= d_max; ++d)
      if (s.at(d) != rep.closed_form.at(d)) {
        rep.ok = false;
        os << "invariant oracle differs from the closed form at degree " << d << "; ";
        break;
      }
    rep.oracle = std::move(s);
  }
  rep.detail = os.str();
  return rep;
}

MstarReport mstar_experiment(const ArrangementData& arr, const Multiplicity& m, int d_max) {
  MstarReport rep;
  rep.m = m;
  rep.m_star = m_star(arr, m);
  Oracle a(arr, m, true), b(arr, rep.m_star, true);
  rep.min_degree = std::min(a.min_degree(), b.min_degree());
  for (int d = rep.min_degree; d <= d_max; ++d) {
    size_t x = a.dimension(d), y = b.dimension(d);
    rep.dims.push_back({x, y});
    if (x != y) rep.ok = false;
  }
  return rep;
}

bool generated_by_invariants(const ArrangementData& arr, const Multiplicity& m, int d_max) {
  Oracle full(arr, m), inv(arr, m, true);
  const int n = arr.rank;
  const int pole = -full.min_degree();
  for (int d = full.min_degree(); d <= d_max; ++d) {
    const size_t target = full.dimension(d);
    if (target == 0) continue;
    auto monos = monomials_of_degree(n, d + pole);
    std::map<std::uint64_t, size_t> index;
    for (size_t j = 0; j < monos.size(); ++j) index[monos[j].bits()] = j;
    RowEchelon span(n * monos.size());
    for (int e = inv.min_degree(); e <= d && span.rank() < target; ++e) {
      auto gens = inv.numerator_basis(e);
      if (gens.empty()) continue;
      for (const auto& mu : monomials_of_degree(n, d - e)) {
        for (const auto& v : gens) {
          std::vector<Scalar> row(n * monos.size(), Scalar(0));
          for (int i = 0; i < n; ++i)
            for (const auto& t : v[i].terms()) row[i * monos.size() + index.at((t.mono * mu).bits())] = t.coeff;
          span.add_row(std::move(row));
        }
      }
    }
    if (span.rank() != target) return false;
  }
  return true;
}

BasisCertificate rank2_basis(const ArrangementData& arr, const Multiplicity& m) {
  if (arr.rank != 2) throw ConstructionError("rank2_basis: arrangement has rank " + std::to_string(arr.rank));
  Oracle full(arr, m), inv(arr, m, true);
  const int total = m.total();
  int e1 = INT_MIN;
  for (int d = full.min_degree(); 2 * d <= total; ++d)
    if (full.dimension(d) > 0) {
      e1 = d;
      break;
    }
  if (e1 == INT_MIN) throw ConstructionError("rank2_basis: no element of degree at most |m|/2");
  const int e2 = total - e1;
  auto candidates = [&](int d) {
    std::vector<Derivation> out = inv.basis(d);
    for (auto& t : full.basis(d)) out.push_back(std::move(t));
    return out;
  };
  auto c1 = candidates(e1), c2 = candidates(e2);
  for (const auto& t1 : c1)
    for (const auto& t2 : c2) {
      SaitoResult s = saito_check(arr, m, {t1, t2});
      if (!s.ok) continue;
      BasisCertificate c;
      c.family = arr.family;
      c.param = arr.family == Family::B ? arr.rank : arr.family == Family::I2 ? arr.n : 0;
      c.m = m;
      if (m.is_equivariant(arr)) {
        for (size_t h = 0; h < arr.hyperplanes.size(); ++h)
          (arr.hyperplanes[h].orbit == 1 ? c.m1 : c.m2) = m[h];
      }
      c.case_tag = 0;
      c.route = "oracle";
      c.basis = {t1, t2};
      c.exponents = {e1, e2};
      c.saito_c = s.c;
      c.invariance = invariance_check(c.basis, arr.simple);
      return c;
    }
  throw ConstructionError("rank2_basis: no pair of oracle vectors passes Saito");
}

}  // namespace coxder
