#include "coxder/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace coxder {

std::string group_name(GroupTag g) {
  switch (g) {
    case GroupTag::W: return "W";
    case GroupTag::W1: return "W1";
    case GroupTag::W2: return "W2";
  }
  return "?";
}

ScalarMatrix reflection_matrix(const LinearForm& alpha) {
  const int n = alpha.nvars();
  Scalar f = Scalar(2) / alpha.norm2();
  ScalarMatrix s = identity_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!alpha[i].is_zero() && !alpha[j].is_zero()) s(i, j) -= f * alpha[i] * alpha[j];
  return s;
}

std::string ArrangementData::name() const {
  switch (family) {
    case Family::B: return "B" + std::to_string(rank);
    case Family::F4: return "F4";
    case Family::G2: return "G2";
    case Family::I2: return "I2(" + std::to_string(2 * n) + ")";
  }
  return "?";
}

std::vector<LinearForm> ArrangementData::forms() const {
  std::vector<LinearForm> r;
  for (const auto& h : hyperplanes) r.push_back(h.alpha);
  return r;
}

std::vector<LinearForm> ArrangementData::orbit_forms(int orbit) const {
  std::vector<LinearForm> r;
  for (const auto& h : hyperplanes)
    if (h.orbit == orbit) r.push_back(h.alpha);
  return r;
}

std::vector<ScalarMatrix> ArrangementData::generators(GroupTag g) const {
  if (g == GroupTag::W) return simple;
  const int orbit = g == GroupTag::W1 ? 1 : 2;
  std::vector<ScalarMatrix> r;
  for (size_t i = 0; i < hyperplanes.size(); ++i)
    if (hyperplanes[i].orbit == orbit) r.push_back(reflections[i]);
  return r;
}

int ArrangementData::index_of(const LinearForm& alpha) const {
  for (size_t i = 0; i < hyperplanes.size(); ++i)
    if (hyperplanes[i].alpha == alpha) return static_cast<int>(i);
  return -1;
}

std::vector<int> ArrangementData::permutation(const ScalarMatrix& w) const {
  std::vector<int> p(hyperplanes.size());
  for (size_t i = 0; i < hyperplanes.size(); ++i) {
    p[i] = index_of(hyperplanes[i].alpha.transformed(w));
    if (p[i] < 0) throw std::logic_error("permutation: matrix does not preserve the arrangement");
  }
  return p;
}

namespace {

std::vector<Scalar> unit(int n, int i) {
  std::vector<Scalar> v(n, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

void finish(ArrangementData& a) {
  const int n = a.rank;
  a.Q = a.Q1 = a.Q2 = Poly::constant(n, Scalar(1));
  for (const auto& h : a.hyperplanes) {
    Poly p = h.alpha.to_poly();
    a.Q *= p;
    (h.orbit == 1 ? a.Q1 : a.Q2) *= p;
    a.reflections.push_back(reflection_matrix(h.alpha));
  }
}

ArrangementData build_b(int l) {
  if (l < 2 || l > Monomial::kMaxVars) throw std::invalid_argument("B: rank must be in 2..7");
  ArrangementData a;
  a.family = Family::B;
  a.rank = l;
  for (int i = 0; i < l; ++i) a.hyperplanes.push_back({LinearForm(unit(l, i)), 1});
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      for (int s : {-1, 1}) {
        auto v = unit(l, i);
        v[j] = Scalar(s);
        a.hyperplanes.push_back({LinearForm(v), 2});
      }
  for (int i = 0; i + 1 < l; ++i) {
    auto v = unit(l, i);
    v[i + 1] = Scalar(-1);
    a.simple.push_back(reflection_matrix(LinearForm(v)));
  }
  a.simple.push_back(reflection_matrix(LinearForm(unit(l, l - 1))));
  finish(a);
  return a;
}

ArrangementData build_f4() {
  ArrangementData a;
  a.family = Family::F4;
  a.rank = 4;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int s : {-1, 1}) {
        auto v = unit(4, i);
        v[j] = Scalar(s);
        a.hyperplanes.push_back({LinearForm(v), 1});
      }
  for (int i = 0; i < 4; ++i) a.hyperplanes.push_back({LinearForm(unit(4, i)), 2});
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<Scalar> v{Scalar(1), Scalar(mask & 1 ? -1 : 1), Scalar(mask & 2 ? -1 : 1),
                          Scalar(mask & 4 ? -1 : 1)};
    a.hyperplanes.push_back({LinearForm(v), 2});
  }
  a.simple.push_back(reflection_matrix(LinearForm({Scalar(0), Scalar(1), Scalar(-1), Scalar(0)})));
  a.simple.push_back(reflection_matrix(LinearForm({Scalar(0), Scalar(0), Scalar(1), Scalar(-1)})));
  a.simple.push_back(reflection_matrix(LinearForm(unit(4, 3))));
  a.simple.push_back(reflection_matrix(LinearForm({Scalar(1), Scalar(-1), Scalar(-1), Scalar(-1)})));
  finish(a);
  return a;
}

// Normals at angles k*pi/(2n), k = 0..2n-1; even k form orbit 1.
ArrangementData build_dihedral(Family fam, int n, FieldPtr field, const Scalar& c1) {
  ArrangementData a;
  a.family = fam;
  a.rank = 2;
  a.n = n;
  a.field = std::move(field);
  std::vector<Scalar> t{Scalar(1), c1};
  while (static_cast<int>(t.size()) <= 2 * n) t.push_back(Scalar(2) * c1 * t.back() - t[t.size() - 2]);
  for (int k = 0; k < 2 * n; ++k) {
    std::vector<Scalar> v{t[k], t[std::abs(n - k)]};
    a.hyperplanes.push_back({LinearForm(v), k % 2 == 0 ? 1 : 2});
  }
  a.simple.push_back(reflection_matrix(a.hyperplanes[0].alpha));
  a.simple.push_back(reflection_matrix(a.hyperplanes[1].alpha));
  finish(a);
  return a;
}

}  // namespace

ArrangementData build_arrangement(Family family, int param) {
  switch (family) {
    case Family::B: return build_b(param);
    case Family::F4: return build_f4();
    case Family::G2: {
      FieldPtr f = NumberField::sqrt(3);
      return build_dihedral(Family::G2, 3, f, Scalar::generator(f) / Scalar(2));
    }
    case Family::I2: {
      if (param < 4) throw std::invalid_argument("I2(2n): n must be at least 4");
      FieldPtr f = NumberField::cos_pi_over(2 * param);
      return build_dihedral(Family::I2, param, f, Scalar::generator(f));
    }
  }
  throw std::invalid_argument("unsupported family");
}

Family parse_family(const std::string& s) {
  if (s == "B" || s == "b") return Family::B;
  if (s == "F4" || s == "f4") return Family::F4;
  if (s == "G2" || s == "g2") return Family::G2;
  if (s == "I2" || s == "i2") return Family::I2;
  throw std::invalid_argument("unknown family '" + s + "'");
}

namespace {

std::string matrix_key(const ScalarMatrix& m) {
  std::string k;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      for (const auto& c : m(i, j).coeffs()) k += c.get_str() + ",";
      k += ";";
    }
  return k;
}

}  // namespace

std::vector<ScalarMatrix> group_elements(const std::vector<ScalarMatrix>& gens, size_t bound) {
  if (gens.empty()) throw std::invalid_argument("group_elements: no generators");
  std::vector<ScalarMatrix> elems{identity_matrix(gens[0].rows())};
  std::map<std::string, size_t> seen{{matrix_key(elems[0]), 0}};
  for (size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      ScalarMatrix p = elems[i] * g;
      auto key = matrix_key(p);
      if (seen.count(key)) continue;
      if (elems.size() >= bound) throw std::runtime_error("group_elements: closure exceeds bound");
      seen.emplace(std::move(key), elems.size());
      elems.push_back(std::move(p));
    }
  return elems;
}

std::vector<ScalarMatrix> group_elements(const ArrangementData& arr, GroupTag g, size_t bound) {
  return group_elements(arr.generators(g), bound);
}

Poly reynolds(const Poly& f, const std::vector<ScalarMatrix>& elements) {
  std::vector<Term> acc;
  for (const auto& w : elements) {
    Poly g = f.substitute_linear(w);
    acc.insert(acc.end(), g.terms().begin(), g.terms().end());
  }
  Poly r = Poly::from_terms(f.nvars(), std::move(acc));
  return r * Scalar(mpq_class(1, static_cast<long>(elements.size())));
}

Poly reynolds(const Poly& f, const ArrangementData& arr, GroupTag g) {
  return reynolds(f, group_elements(arr, g));
}

bool is_invariant(const Poly& f, const std::vector<ScalarMatrix>& gens) {
  for (const auto& w : gens)
    if (f.substitute_linear(w) != f) return false;
  return true;
}

int invariance_sign(const Poly& f, const ScalarMatrix& w) {
  Poly g = f.substitute_linear(w);
  if (g == f) return 1;
  if (g == -f) return -1;
  return 0;
}

ScalarMatrix inverse(const ScalarMatrix& m_in) {
  const size_t n = m_in.rows();
  ScalarMatrix m = m_in, r = identity_matrix(n);
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) throw std::domain_error("inverse: singular matrix");
    m.swap_rows(p, k);
    r.swap_rows(p, k);
    Scalar inv = m(k, k).inverse();
    for (size_t j = 0; j < n; ++j) {
      m(k, j) *= inv;
      r(k, j) *= inv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k).is_zero()) continue;
      Scalar f = m(i, k);
      for (size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        r(i, j) -= f * r(k, j);
      }
    }
  }
  return r;
}

ScalarMatrix f4_orbit_switch() {
  FieldPtr f = NumberField::sqrt(2);
  Scalar s = Scalar::generator(f).inverse();
  ScalarMatrix m(4, 4, Scalar(0));
  m(0, 0) = s; m(0, 1) = -s;
  m(1, 0) = s; m(1, 1) = s;
  m(2, 2) = s; m(2, 3) = -s;
  m(3, 2) = s; m(3, 3) = s;
  return m;
}

PolyMatrix jacobian(const std::vector<Poly>& P) {
  const int n = P.empty() ? 0 : P[0].nvars();
  PolyMatrix j(n, P.size());
  for (int i = 0; i < n; ++i)
    for (size_t k = 0; k < P.size(); ++k) j(i, k) = P[k].derivative(i);
  return j;
}

PolyMatrix saito_matrix_G(const InvariantSystem& sys) { return sys.J.transposed() * sys.J; }

namespace {

// Makes rational polynomials integer-primitive with positive leading
// coefficient.
Poly normalize_content(const Poly& p) {
  if (p.is_zero()) return p;
  for (const auto& t : p.terms())
    if (!t.coeff.is_rational()) return p * p.leading_term().coeff.inverse();
  mpz_class l = 1, g = 0;
  for (const auto& t : p.terms()) {
    l = lcm(l, t.coeff.rational().get_den());
    g = gcd(g, t.coeff.rational().get_num());
  }
  mpq_class f(l, g);
  f.canonicalize();
  if (sgn(p.leading_term().coeff.rational()) < 0) f = -f;
  return p * Scalar(f);
}

std::vector<Scalar> generic_point(int n) {
  static const long num[] = {17, -5, 11, 2, 23, -29, 31};
  static const long den[] = {3, 7, 13, 19, 5, 11, 17};
  std::vector<Scalar> pt;
  for (int i = 0; i < n; ++i) pt.push_back(Scalar(num[i], den[i]));
  return pt;
}

std::vector<Scalar> gradient_at(const Poly& p, const std::vector<Scalar>& pt) {
  std::vector<Scalar> g;
  for (int i = 0; i < p.nvars(); ++i) g.push_back(p.derivative(i).evaluate(pt));
  return g;
}

void finalize(InvariantSystem& s) {
  std::vector<size_t> order(s.P.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return s.P[a].degree() < s.P[b].degree(); });
  std::vector<Poly> P;
  std::vector<std::string> seeds;
  for (size_t i : order) {
    P.push_back(s.P[i]);
    seeds.push_back(s.seeds[i]);
  }
  s.P = std::move(P);
  s.seeds = std::move(seeds);
  s.degrees.clear();
  for (const auto& p : s.P) s.degrees.push_back(p.degree());
  s.h = s.degrees.back();
  s.J = jacobian(s.P);
  const int n = static_cast<int>(s.P.size());
  ScalarMatrix j(n, n);
  auto pt = generic_point(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) j(i, k) = s.J(i, k).evaluate(pt);
  if (determinant(j).is_zero()) throw std::logic_error("basic_invariants: invariants are not independent");
}

InvariantSystem reynolds_system(const ArrangementData& arr, GroupTag g, const std::vector<int>& degrees,
                                int seed_set) {
  InvariantSystem s;
  s.group = g;
  auto elems = group_elements(arr, g);
  const int n = arr.rank;
  auto pt = generic_point(n);
  // Diagonal elements d fix or negate every monomial m, and m(dwx) = m(wx)
  // when d fixes m, so averaging over representatives of the cosets D\W
  // suffices; a monomial negated by some d averages to zero.
  std::vector<ScalarMatrix> diag;
  for (const auto& w : elems) {
    bool is_diag = true;
    for (int i = 0; i < n && is_diag; ++i)
      for (int j = 0; j < n && is_diag; ++j)
        if (i != j && !w(i, j).is_zero()) is_diag = false;
    if (is_diag) diag.push_back(w);
  }
  std::vector<ScalarMatrix> reps;
  {
    std::map<std::string, bool> covered;
    for (const auto& w : elems) {
      if (covered.count(matrix_key(w))) continue;
      reps.push_back(w);
      for (const auto& d : diag) covered[matrix_key(d * w)] = true;
    }
  }
  RowEchelon grads(n);
  for (int d : degrees) {
    Poly chosen;
    std::string seed;
    int accepted = 0;
    for (Monomial m : monomials_of_degree(n, d)) {
      Poly mono = Poly::monomial(n, m, Scalar(1));
      bool killed = false;
      for (const auto& d : diag)
        if (mono.substitute_linear(d) != mono) killed = true;
      if (killed) continue;
      Poly r = reynolds(mono, reps);
      if (r.is_zero()) continue;
      RowEchelon trial = grads;
      if (!trial.add_row(gradient_at(r, pt))) continue;
      if (chosen.is_zero()) {
        chosen = r;
        seed = Poly::monomial(n, m, Scalar(1)).to_string();
      }
      if (accepted++ == seed_set) {
        chosen = r;
        seed = Poly::monomial(n, m, Scalar(1)).to_string();
        break;
      }
    }
    if (chosen.is_zero()) throw std::logic_error("basic_invariants: no independent seed in degree " + std::to_string(d));
    grads.add_row(gradient_at(chosen, pt));
    s.P.push_back(normalize_content(chosen));
    s.seeds.push_back("reynolds(" + seed + ")");
  }
  finalize(s);
  return s;
}

Poly power_sum(int n, int e) {
  Poly p(n);
  for (int i = 0; i < n; ++i) p += Poly::variable(n, i).pow(e);
  return p;
}

InvariantSystem f4_w1() {
  InvariantSystem s;
  s.group = GroupTag::W1;
  const int n = 4;
  Poly p4 = power_sum(n, 6);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) p4 += Scalar(5) * Poly::variable(n, i).pow(2) * Poly::variable(n, j).pow(4);
  s.P = {power_sum(n, 2), power_sum(n, 4), Poly::variable(n, 0) * Poly::variable(n, 1) * Poly::variable(n, 2) * Poly::variable(n, 3), p4};
  s.seeds = {"sum x^2", "sum x^4", "x1*x2*x3*x4", "sum x^6 + 5 sum_{i!=j} x_i^2 x_j^4"};
  finalize(s);
  return s;
}

}  // namespace

InvariantSystem basic_invariants(const ArrangementData& arr, GroupTag g, int seed_set) {
  const int n = arr.rank;
  InvariantSystem s;
  s.group = g;
  switch (arr.family) {
    case Family::B:
      if (g == GroupTag::W) {
        for (int j = 1; j <= n; ++j) {
          s.P.push_back(power_sum(n, 2 * j));
          s.seeds.push_back("sum x^" + std::to_string(2 * j));
        }
      } else if (g == GroupTag::W1) {
        for (int i = 0; i < n; ++i) {
          s.P.push_back(Poly::variable(n, i).pow(2));
          s.seeds.push_back(variable_name(i) + "^2");
        }
      } else {
        s.P.push_back(arr.Q1);
        s.seeds.push_back("Q1");
        for (int j = 1; j < n; ++j) {
          s.P.push_back(power_sum(n, 2 * j));
          s.seeds.push_back("sum x^" + std::to_string(2 * j));
        }
      }
      finalize(s);
      return s;
    case Family::F4:
      if (g == GroupTag::W) return reynolds_system(arr, g, {2, 6, 8, 12}, seed_set);
      if (g == GroupTag::W1) return f4_w1();
      {
        // Transport the W1 system through the orbit-switching change of
        // coordinates.
        InvariantSystem w1 = f4_w1();
        ScalarMatrix m = f4_orbit_switch();
        auto gens = arr.generators(GroupTag::W2);
        for (const ScalarMatrix& t : {m, inverse(m)}) {
          s.P.clear();
          s.seeds.clear();
          bool ok = true;
          for (size_t i = 0; i < w1.P.size() && ok; ++i) {
            Poly p = w1.P[i].substitute_linear(t);
            ok = is_invariant(p, gens);
            s.P.push_back(p);
            s.seeds.push_back("transport(" + w1.seeds[i] + ")");
          }
          if (ok) {
            finalize(s);
            return s;
          }
        }
        throw std::logic_error("basic_invariants: F4 transport failed");
      }
    case Family::G2:
    case Family::I2:
      if (g == GroupTag::W) return reynolds_system(arr, g, {2, 2 * arr.n}, seed_set);
      return reynolds_system(arr, g, {2, arr.n}, seed_set);
  }
  throw std::invalid_argument("basic_invariants: unsupported family");
}

Multiplicity Multiplicity::from_orbits(const ArrangementData& arr, int m1, int m2) {
  Multiplicity r;
  for (const auto& h : arr.hyperplanes) r.m.push_back(h.orbit == 1 ? m1 : m2);
  return r;
}

bool Multiplicity::is_equivariant(const ArrangementData& arr) const {
  for (const auto& orb : hyperplane_orbits(arr))
    for (int i : orb)
      if (m[i] != m[orb[0]]) return false;
  return true;
}

bool Multiplicity::is_odd() const {
  for (int v : m)
    if (v % 2 == 0) return false;
  return true;
}

int Multiplicity::total() const { return std::accumulate(m.begin(), m.end(), 0); }

FormExponents Multiplicity::spec(const ArrangementData& arr) const {
  FormExponents s;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) s[arr.hyperplanes[i].alpha] = m[i];
  return s;
}

std::vector<std::vector<int>> hyperplane_orbits(const ArrangementData& arr) {
  const int n = static_cast<int>(arr.hyperplanes.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& w : arr.simple) {
    auto p = arr.permutation(w);
    for (int i = 0; i < n; ++i) parent[find(i)] = find(p[i]);
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [k, v] : groups) out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coxder
