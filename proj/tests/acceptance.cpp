// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "coxder/verify.hpp"

using namespace coxder;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& s) {
    if (ok) note = s;
    ok = false;
  }
};

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string show(const std::vector<int>& v) {
  std::ostringstream o;
  o << "(";
  for (size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  o << ")";
  return o.str();
}

// Orbit values on a coordinate-independent footing: the orbit of a hyperplane
// is read from the arrangement, never from the multiplicity helpers.
Multiplicity orbit_mult(const ArrangementData& arr, int m1, int m2) {
  Multiplicity m;
  for (const auto& hp : arr.hyperplanes) m.m.push_back(hp.orbit == 1 ? m1 : m2);
  return m;
}

int floor_half(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

// The odd equivariant closure, computed straight from its definition.
Multiplicity closure(const ArrangementData& arr, const Multiplicity& m) {
  int best[3] = {INT_MIN, INT_MIN, INT_MIN};
  for (size_t i = 0; i < arr.hyperplanes.size(); ++i) {
    int o = arr.hyperplanes[i].orbit;
    best[o] = std::max(best[o], 2 * floor_half(m[i]) + 1);
  }
  return orbit_mult(arr, best[1], best[2]);
}

Multiplicity random_mult(std::mt19937& rng, const ArrangementData& arr, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  Multiplicity m;
  for (size_t i = 0; i < arr.hyperplanes.size(); ++i) m.m.push_back(u(rng));
  return m;
}

bool is_equivariant_direct(const ArrangementData& arr, const Multiplicity& m) {
  std::map<int, std::set<int>> vals;
  for (size_t i = 0; i < arr.hyperplanes.size(); ++i) vals[arr.hyperplanes[i].orbit].insert(m[i]);
  for (const auto& [o, s] : vals)
    if (s.size() > 1) return false;
  return true;
}

// Gram matrix G_ij = sum_k dP_i/dx_k dP_j/dx_k.
PolyMatrix gram(const InvariantSystem& sys, int n) {
  PolyMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly s(n);
      for (int k = 0; k < n; ++k) s += sys.P[i].derivative(k) * sys.P[j].derivative(k);
      G(i, j) = s;
    }
  return G;
}

Poly apply_poly(const Derivation& d, const Poly& f) {
  LogRational r = d.apply(f);
  if (!r.is_polynomial()) throw std::runtime_error("D of a polynomial has a pole");
  return r.numerator();
}

// ---- criteria ----

Outcome criterion1() {
  Outcome out;
  auto arr = build_arrangement(Family::B, 2);
  EpqContext ctx(arr);
  int cells = 0;
  for (int m1 = -2; m1 <= 4; ++m1)
    for (int m2 = -2; m2 <= 4; ++m2) {
      std::ostringstream tag;
      tag << "m=(" << m1 << "," << m2 << ")";
      try {
        auto cs = case_for(m1, m2);
        auto cert = theta_basis(ctx, cs.p, cs.q, cs.case_tag);
        auto m = orbit_mult(arr, m1, m2);
        auto s = saito_check(arr, m, cert.basis);
        if (!s.ok || s.c.is_zero()) out.fail(tag.str() + " Saito: " + s.witness);
        int sum = 0;
        for (int e : cert.exponents) sum += e;
        if (sum != 2 * (m1 + m2)) out.fail(tag.str() + " exponent sum");
        Oracle o(arr, m);
        auto h = hilbert_compare(cert.exponents, 2, o, 10);
        if (!h.ok) out.fail(tag.str() + " oracle mismatch at degree " + std::to_string(*h.first_mismatch));
        ++cells;
      } catch (const std::exception& e) {
        out.fail(tag.str() + ": " + e.what());
      }
    }
  if (out.ok) out.note = std::to_string(cells) + " cells, oracle through degree 10";
  return out;
}

Outcome criterion2() {
  Outcome out;
  auto arr = build_arrangement(Family::B, 3);
  EpqContext ctx(arr);
  const std::vector<int> d = {2, 4, 6};
  const int h1 = 2, h2 = 4;
  int cells = 0;
  for (int p = -1; p <= 2; ++p)
    for (int q = -1; q <= 2; ++q)
      for (int c = 1; c <= 4; ++c) {
        std::ostringstream tag;
        tag << "(p,q)=(" << p << "," << q << ") case " << c;
        try {
          auto cert = theta_basis(ctx, p, q, c);
          auto rep = check_certificate(cert);
          if (!rep.ok) out.fail(tag.str() + " " + rep.failures.front());
          if (c == 1) {
            std::vector<int> want;
            for (int di : d) want.push_back(p * h1 + q * h2 - di + 1);
            if (sorted(cert.exponents) != sorted(want)) out.fail(tag.str() + " exponents " + show(cert.exponents));
            if (p == 1 && q == 1 && sorted(cert.exponents) != std::vector<int>{1, 3, 5})
              out.fail("(1,1) exponents " + show(cert.exponents));
          }
          ++cells;
        } catch (const std::exception& e) {
          out.fail(tag.str() + ": " + e.what());
        }
      }
  if (out.ok) out.note = std::to_string(cells) + " cells, case-1 (1,1) exponents (1,3,5)";
  return out;
}

Outcome criterion3() {
  Outcome out;
  auto arr = build_arrangement(Family::F4);
  const int n = 4;
  auto x = [&](int i) { return Poly::variable(n, i); };
  Poly p1(n), p2(n), s6(n), p4(n);
  for (int i = 0; i < n; ++i) {
    p1 += x(i).pow(2);
    p2 += x(i).pow(4);
    s6 += x(i).pow(6);
  }
  p4 = s6;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) p4 += Scalar(5) * x(i).pow(2) * x(j).pow(4);
  if (p4 != Scalar(-4) * s6 + Scalar(5) * p1 * p2) out.fail("identity fails");
  ScalarMatrix tau(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tau(i, j) = Scalar(i == j ? 1 : 0) - Scalar(1, 2);
  if (p4.substitute_linear(tau) != p4) out.fail("P4 not tau-invariant");
  // The engine's W1 system uses the same P4.
  auto w1 = basic_invariants(arr, GroupTag::W1);
  if (w1.P[3] != p4) out.fail("engine P4 differs");
  if (out.ok) out.note = "P4 = -4 sum x^6 + 5 P1 P2, tau P4 = P4";
  return out;
}

Outcome criterion4() {
  Outcome out;
  auto arr = build_arrangement(Family::F4);
  EpqContext ctx(arr);
  auto cert = theta_basis(ctx, 1, 1, 1);
  std::vector<int> want;
  for (int d : {2, 6, 8, 12}) want.push_back(13 - d);
  if (sorted(cert.exponents) != sorted(want)) out.fail("exponents " + show(cert.exponents));
  for (const auto& t : cert.basis) {
    auto dg = t.degree();
    if (!dg || std::find(want.begin(), want.end(), *dg) == want.end()) out.fail("element of unexpected degree");
  }
  // det = c * prod over all 24 forms, each to the first power.
  LogMatrix M(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) M(k, i) = cert.basis[i][k];
  LogRational det = determinant(M);
  FormExponents spec;
  for (const auto& hp : arr.hyperplanes) spec[hp.alpha] = 1;
  if (spec.size() != 24) out.fail("expected 24 forms");
  auto c = match_product_of_forms(det, spec);
  if (!c || c->is_zero()) out.fail("det is not c * Q");
  auto s = saito_check(arr, orbit_mult(arr, 1, 1), cert.basis);
  if (!s.ok) out.fail("Saito: " + s.witness);
  if (out.ok) out.note = "exponents (1,5,7,11), det = " + c->to_string() + " * Q";
  return out;
}

Outcome criterion5() {
  Outcome out;
  for (int rank : {2, 3}) {
    EpqContext ctx(build_arrangement(Family::B, rank));
    std::string tag = "B" + std::to_string(rank);
    auto blocks = primitive_decomposition(ctx, 1, 1, 2);
    for (size_t k = 0; k + 1 < blocks.size(); ++k)
      for (size_t i = 0; i < blocks[k].size(); ++i)
        if (covariant_derivative(ctx.D(), blocks[k + 1][i]) != blocks[k][i])
          out.fail(tag + " nabla_D block " + std::to_string(k + 1) + " != block " + std::to_string(k));
    // Closed form prod 1/(1-t^d_i) * sum_j t^(deg zeta + k h - d_j), k = 0..2,
    // expanded here by direct counting.
    const auto& sys = ctx.system(GroupTag::W);
    const int h1 = ctx.h1(), h2 = ctx.h2(), h = ctx.h();
    const int dz = h1 + h2 + 1;
    auto t_dim = [&](int d) {
      // Monomials in the invariants of weighted degree d.
      std::vector<long> c(std::max(d, 0) + 1, 0);
      if (d < 0) return 0L;
      c[0] = 1;
      for (int di : sys.degrees)
        for (int s = di; s <= d; ++s) c[s] += c[s - di];
      return c[d];
    };
    auto block_series = [&](int d) {
      long r = 0;
      for (size_t k = 0; k < blocks.size(); ++k)
        for (const auto& t : blocks[k]) r += t_dim(d - *t.degree());
      return r;
    };
    for (int d = -h; d <= 12; ++d) {
      long closed = 0;
      for (int k = 0; k <= 2; ++k)
        for (int dj : sys.degrees) closed += t_dim(d - (dz + k * h - dj));
      if (closed != block_series(d)) out.fail(tag + " series differ at degree " + std::to_string(d));
    }
    auto rep = poincare_check(ctx, 1, 1, 2, 12, true);
    if (!rep.ok) out.fail(tag + " poincare_check: " + rep.detail);
  }
  if (out.ok) out.note = "B2, B3 blocks k <= 2, series through degree 12";
  return out;
}

Outcome criterion6() {
  Outcome out;
  for (int rank : {2, 3}) {
    EpqContext ctx(build_arrangement(Family::B, rank));
    const int n = rank;
    std::string tag = "B" + std::to_string(rank);
    const auto& sys = ctx.system(GroupTag::W);
    PolyMatrix G = gram(sys, n), DG(n, n), DDG(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        DG(i, j) = apply_poly(ctx.D(), G(i, j));
        DDG(i, j) = apply_poly(ctx.D(), DG(i, j));
        if (!DDG(i, j).is_zero()) out.fail(tag + " D^2[G] != 0");
      }
    Poly dd = determinant(DG);
    if (!dd.is_constant() || dd.is_zero()) out.fail(tag + " det D[G] not a nonzero constant");
    const int qmax = rank == 2 ? 3 : 2;
    for (int q = 1; q <= qmax; ++q) {
      auto route = recursion_route(ctx, q, q);
      for (size_t k = 0; k < route.B.size(); ++k) {
        const auto& B = route.B[k];
        std::string bt = tag + " B^(" + std::to_string(k) + ")";
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (!apply_poly(ctx.D(), B(i, j)).is_zero()) out.fail(bt + " entry not killed by D");
            if (i + j < n - 1 && !B(i, j).is_zero()) out.fail(bt + " zero pattern");
            if (i + j == n - 1 && (!B(i, j).is_constant() || B(i, j).is_zero())) out.fail(bt + " antidiagonal");
          }
        Poly d = determinant(B);
        if (!d.is_constant() || d.is_zero()) out.fail(bt + " det not a nonzero constant");
      }
    }
  }
  if (out.ok) out.note = "B2 k < 3, B3 k < 2; D^2[G] = 0, det D[G] constant";
  return out;
}

Outcome criterion7() {
  Outcome out;
  std::mt19937 rng(20261015);
  int random_checked = 0, dims_checked = 0, window = 0;
  size_t total_dim = 0;
  for (Family fam : {Family::B, Family::G2}) {
    auto arr = build_arrangement(fam, fam == Family::B ? 2 : 0);
    const std::string tag = arr.name();
    for (int t = 0; t < 200; ++t) {
      auto m = random_mult(rng, arr, -5, 6);
      auto s = m_star(arr, m);
      if (s != closure(arr, m)) out.fail(tag + " m* differs from its definition");
      if (m_star(arr, s) != s) out.fail(tag + " m* not idempotent");
      if (!is_equivariant_direct(arr, s)) out.fail(tag + " m* not equivariant");
      for (int v : s.m)
        if (v % 2 == 0) out.fail(tag + " m* not odd");
      ++random_checked;
    }
    for (int t = 0; t < 20; ++t) {
      // Alternate equivariant and arbitrary multiplicities.
      auto m = t % 4 == 0 ? orbit_mult(arr, std::uniform_int_distribution<int>(-2, 4)(rng),
                                       std::uniform_int_distribution<int>(-2, 4)(rng))
                          : random_mult(rng, arr, -2, 4);
      Oracle a(arr, m, true), b(arr, closure(arr, m), true);
      const int lo = std::min(a.min_degree(), b.min_degree());
      for (int d = lo; d <= 10; ++d) {
        if (a.dimension(d) != b.dimension(d)) out.fail(tag + " invariant dims differ at degree " + std::to_string(d));
        total_dim += a.dimension(d);
      }
      ++dims_checked;
    }
    // Generator-fixed basis exists exactly for odd equivariant m, at the
    // degrees of the basis.
    std::vector<Multiplicity> ms;
    for (int m1 = -2; m1 <= 4; ++m1)
      for (int m2 = -2; m2 <= 4; ++m2) ms.push_back(orbit_mult(arr, m1, m2));
    for (int t = 0; t < 6; ++t) {
      auto m = random_mult(rng, arr, -1, 3);
      if (!is_equivariant_direct(arr, m)) ms.push_back(m);
    }
    for (const auto& m : ms) {
      auto cert = rank2_basis(arr, m);
      int top = *std::max_element(cert.exponents.begin(), cert.exponents.end());
      bool odd_eq = is_equivariant_direct(arr, m) && std::all_of(m.m.begin(), m.m.end(), [](int v) { return v % 2 != 0; });
      if (generated_by_invariants(arr, m, top) != odd_eq) {
        std::ostringstream o;
        o << tag << " generator-fixed basis mismatch at m =";
        for (int v : m.m) o << " " << v;
        out.fail(o.str());
      }
      ++window;
    }
  }
  if (out.ok)
    out.note = std::to_string(random_checked) + " m* draws, " + std::to_string(dims_checked) +
                " invariant-dimension runs (total dim " + std::to_string(total_dim) + "), " + std::to_string(window) + " window cells";
  return out;
}

Outcome criterion8() {
  Outcome out;
  for (auto [fam, param] : std::vector<std::pair<Family, int>>{{Family::G2, 0}, {Family::I2, 4}}) {
    EpqContext ctx(build_arrangement(fam, param));
    const auto& arr = ctx.arrangement();
    Derivation d1 = LogRational(arr.Q2) * ctx.D();
    if (d1 != ctx.D1()) out.fail(arr.name() + " D1 != Q2 D");
    int count = 0;
    for (size_t i = 0; i < arr.hyperplanes.size(); ++i) {
      if (arr.hyperplanes[i].orbit != 2) continue;
      if (group_action(arr.reflections[i], d1) != -d1) out.fail(arr.name() + " D1 not antifixed");
      ++count;
    }
    if (count == 0) out.fail(arr.name() + " no W2 reflections");
  }
  if (out.ok) out.note = "G2 and I2(8): s D1 = -D1 for every W2 reflection";
  return out;
}

Outcome criterion9() {
  Outcome out;
  auto arr = build_arrangement(Family::B, 2);
  EpqContext ctx(arr);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
    std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    auto a = case_basis(ctx, p, q, 1);
    auto b = recursion_route(ctx, p, q).theta;
    auto m = orbit_mult(arr, 2 * p - 1, 2 * q - 1);
    for (const auto& t : a)
      if (!log_membership(t, arr, m)) out.fail(tag + " direct element not in module");
    for (const auto& t : b)
      if (!log_membership(t, arr, m)) out.fail(tag + " recursion element not in module");
    // Transition matrix T with A T = B, by Cramer's rule.
    const int n = 2;
    LogMatrix A(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) A(k, i) = a[i][k];
    LogRational det_a = determinant(A);
    FormExponents spec = m.spec(arr);
    auto c = match_product_of_forms(det_a, spec);
    if (!c) {
      out.fail(tag + " direct basis fails Saito");
      continue;
    }
    PolyMatrix T(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        LogMatrix Ai = A;
        for (int k = 0; k < n; ++k) Ai(k, i) = b[j][k];
        LogRational t = determinant(Ai).divided_by_forms(spec, *c);
        if (!t.is_polynomial()) out.fail(tag + " transition entry not polynomial");
        T(i, j) = t.numerator();
      }
    Poly dt = determinant(T);
    if (!dt.is_constant() || dt.is_zero()) out.fail(tag + " transition det not a nonzero constant");
  }
  if (out.ok) out.note = "(1,1), (2,1), (1,2): constant-det polynomial transition";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("CRITERION %zu: %s (%.2f s) %s\n", i + 1, o.ok ? "PASS" : "FAIL", s, o.note.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
