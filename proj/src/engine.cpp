#include "coxder/engine.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "coxder/verify.hpp"

namespace coxder {

namespace {

int gi(GroupTag g) { return static_cast<int>(g); }

// Exponent vectors e with sum e_i d_i = target.
void weighted_exponents(const std::vector<int>& d, int target, size_t i, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
  if (i == d.size()) {
    if (target == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e * d[i] <= target; ++e) {
    cur[i] = e;
    weighted_exponents(d, target - e * d[i], i + 1, cur, out);
  }
  cur[i] = 0;
}

std::vector<std::vector<int>> weighted_exponents(const std::vector<int>& d, int target) {
  std::vector<std::vector<int>> out;
  if (target < 0) return out;
  std::vector<int> cur(d.size(), 0);
  weighted_exponents(d, target, 0, cur, out);
  return out;
}

// Denominator exponents covering every argument.
FormExponents common_denominator(const std::vector<const LogRational*>& fs) {
  FormExponents l;
  for (const auto* f : fs)
    for (const auto& [alpha, e] : f->denominator()) l[alpha] = std::max(l[alpha], e);
  return l;
}

// Numerator of f over the denominator l.
Poly lift(const LogRational& f, const FormExponents& l) {
  Poly r = f.numerator();
  if (r.is_zero()) return r;
  for (const auto& [alpha, e] : l) {
    auto it = f.denominator().find(alpha);
    int k = e - (it == f.denominator().end() ? 0 : it->second);
    if (k > 0) r = r * alpha.to_poly().pow(k);
  }
  return r;
}

Derivation polar(const std::vector<Poly>& num, const FormExponents& den) {
  std::vector<LogRational> c;
  for (const auto& p : num) c.push_back(den.empty() ? LogRational(p) : LogRational(p, den));
  return Derivation(std::move(c));
}

void require_invariant(const EpqContext& ctx, const Derivation& theta, const char* what) {
  for (const auto& w : ctx.generators())
    if (invariance_flag(w, theta) != 1) throw VerificationError(std::string(what) + " is not W-invariant");
}

}  // namespace

EpqContext::EpqContext(ArrangementData arr, EngineOptions opt) : arr_(std::move(arr)), opt_(opt) {
  for (GroupTag g : {GroupTag::W, GroupTag::W1, GroupTag::W2}) sys_[gi(g)] = basic_invariants(arr_, g, opt_.seed_set);
  d_ = fields(GroupTag::W).back();
  switch (arr_.family) {
    case Family::B: {
      d1_ = Derivation(arr_.rank);
      for (int i = 0; i < arr_.rank; ++i) {
        std::vector<Scalar> e(arr_.rank, Scalar(0));
        e[i] = Scalar(1);
        d1_[i] = LogRational(Poly::constant(arr_.rank, Scalar(1)), {{LinearForm(e), 1}});
      }
      d2_ = fields(GroupTag::W2).back();
      break;
    }
    case Family::F4:
      d1_ = fields(GroupTag::W1).back();
      d2_ = fields(GroupTag::W2).back();
      break;
    case Family::G2:
    case Family::I2:
      d1_ = LogRational(arr_.Q2) * d_;
      d2_ = LogRational(arr_.Q1) * d_;
      break;
  }
  if (has_epq()) {
    require_invariant(*this, d1_, "D1");
    require_invariant(*this, d2_, "D2");
  }
}

const std::vector<Derivation>& EpqContext::fields(GroupTag g) const {
  std::call_once(fields_once_[gi(g)], [&] { fields_[gi(g)] = coordinate_fields(system(g), arr_); });
  return fields_[gi(g)];
}

Derivation EpqContext::e_pq(int p, int q) const {
  if (!has_epq()) throw ConstructionError("E^(p,q) needs a W-invariant D1; " + arr_.name() + " uses the rank-2 route");
  std::promise<Derivation> prom;
  std::shared_future<Derivation> fut;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lk(memo_mu_);
    auto it = memo_.find({p, q});
    if (it != memo_.end()) {
      fut = it->second;
    } else {
      fut = prom.get_future().share();
      memo_.emplace(std::make_pair(p, q), fut);
      owner = true;
    }
  }
  if (owner) {
    try {
      prom.set_value(compute_epq(p, q));
    } catch (...) {
      prom.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

Derivation EpqContext::compute_epq(int p, int q) const {
  Derivation r;
  if (p == 0 && q == 0) {
    r = Derivation::euler(arr_.rank);
  } else if (q > 0) {
    r = invert_covariant(*this, GroupTag::W, e_pq(p - 1, q - 1), std::max(0, -p), std::max(0, -q)).eta;
  } else if (q < 0) {
    r = covariant_derivative(d_, e_pq(p + 1, q + 1));
  } else if (p > 0) {
    r = invert_covariant(*this, GroupTag::W1, e_pq(p - 1, 0), 0, 0).eta;
  } else {
    r = covariant_derivative(d1_, e_pq(p + 1, 0));
  }
  auto deg = r.degree();
  if (!deg || *deg != p * h1() + q * h2() + 1) {
    std::ostringstream os;
    os << "E^(" << p << "," << q << ") has unexpected degree";
    throw VerificationError(os.str());
  }
  require_invariant(*this, r, "E^(p,q)");
  return r;
}

const Derivation& primitive_derivation(const EpqContext& ctx, GroupTag which) {
  switch (which) {
    case GroupTag::W: return ctx.D();
    case GroupTag::W1: return ctx.D1();
    case GroupTag::W2: return ctx.D2();
  }
  return ctx.D();
}

Derivation forward_power(const Derivation& delta, int k, Derivation theta) {
  if (k < 0) throw std::invalid_argument("forward_power: negative exponent");
  for (int i = 0; i < k; ++i) theta = covariant_derivative(delta, theta);
  return theta;
}

InvertResult invert_covariant(const EpqContext& ctx, GroupTag which, const Derivation& zeta, int a0, int b0) {
  if (which == GroupTag::W2) throw std::invalid_argument("invert_covariant: D2 is not supported");
  const auto& arr = ctx.arrangement();
  const auto& sys = ctx.system(GroupTag::W);
  const Derivation& delta = which == GroupTag::W ? ctx.D() : ctx.D1();
  const int hd = which == GroupTag::W ? ctx.h() : ctx.h1();
  auto zd = zeta.degree();
  if (!zd) throw ConstructionError("invert_covariant: target is zero or inhomogeneous");
  const int deg_eta = *zd + hd;
  const int n = arr.rank;
  const int size1 = static_cast<int>(arr.orbit_forms(1).size());
  const int size2 = static_cast<int>(arr.orbit_forms(2).size());
  if (which == GroupTag::W1) b0 = 0;

  std::map<std::vector<int>, Poly> pmemo;
  std::function<Poly(const std::vector<int>&)> pmono = [&](const std::vector<int>& e) -> Poly {
    auto it = pmemo.find(e);
    if (it != pmemo.end()) return it->second;
    Poly r = Poly::constant(n, Scalar(1));
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::vector<int> prev = e;
      --prev[i];
      r = pmono(prev) * sys.P[i];
      break;
    }
    pmemo.emplace(e, r);
    return r;
  };

  for (int step = 0; step <= ctx.options().pole_cap; ++step) {
    const int a = a0 + step, b = which == GroupTag::W ? b0 + step : 0;
    FormExponents den;
    for (const auto& hp : arr.hyperplanes) {
      int e = hp.orbit == 1 ? 2 * a : 2 * b;
      if (e > 0) den[hp.alpha] = e;
    }
    std::vector<std::vector<Poly>> nums;
    for (int i = 0; i < n; ++i) {
      int t = deg_eta + 2 * a * size1 + 2 * b * size2 - (sys.degrees[i] - 1);
      for (const auto& e : weighted_exponents(sys.degrees, t)) {
        Poly f = pmono(e);
        std::vector<Poly> v;
        for (int k = 0; k < n; ++k) v.push_back(f * sys.J(k, i));
        nums.push_back(std::move(v));
      }
    }
    if (nums.empty()) continue;
    const size_t J = nums.size();
    LinearCollector col(J + 1);

    // Tangential regularity; one hyperplane per orbit suffices by invariance.
    for (int o = 1; o <= 2; ++o) {
      int e = o == 1 ? 2 * a : 2 * b;
      if (e == 0) continue;
      const LinearForm alpha = arr.orbit_forms(o).front();
      const Scalar nrm = alpha.norm2();
      FormChart chart(alpha);
      for (size_t j = 0; j < J; ++j) {
        Poly na(n);
        for (int k = 0; k < n; ++k)
          if (!alpha[k].is_zero()) na += nums[j][k] * alpha[k];
        for (int k = 0; k < n; ++k) {
          Poly t = nums[j][k] * nrm - na * alpha[k];
          for (const auto& term : chart.low_order_terms(t, e)) col.add_term(j, 1000 * o + k, term.mono, term.coeff);
        }
      }
    }

    std::vector<Derivation> images;
    for (size_t j = 0; j < J; ++j) images.push_back(covariant_derivative(delta, polar(nums[j], den)));
    std::vector<const LogRational*> all;
    for (const auto& img : images)
      for (int k = 0; k < n; ++k) all.push_back(&img[k]);
    for (int k = 0; k < n; ++k) all.push_back(&zeta[k]);
    FormExponents l = common_denominator(all);
    for (size_t j = 0; j < J; ++j)
      for (int k = 0; k < n; ++k) col.add(j, k, lift(images[j][k], l));
    for (int k = 0; k < n; ++k) col.add(J, k, lift(zeta[k], l), Scalar(-1));

    auto ns = col.echelon().nullspace();
    if (ns.empty()) continue;
    if (ns.size() > 1 || ns[0][J].is_zero())
      throw ConstructionError("invert_covariant: solution is not unique; the kernel of the connection is nonzero");
    const auto& v = ns[0];
    // sum_j v_j images_j = v_J zeta
    const Scalar s = v[J].inverse();
    std::vector<Poly> num(n, Poly(n));
    for (size_t j = 0; j < J; ++j) {
      if (v[j].is_zero()) continue;
      Scalar c = v[j] * s;
      for (int k = 0; k < n; ++k) num[k] += nums[j][k] * c;
    }
    InvertResult res{polar(num, den), a, b, J};
    if (covariant_derivative(delta, res.eta) != zeta)
      throw VerificationError("invert_covariant: solution does not reproduce the target");
    return res;
  }
  std::ostringstream os;
  os << "invert_covariant: no solution with pole bounds up to (" << a0 + ctx.options().pole_cap << ","
     << (which == GroupTag::W ? b0 + ctx.options().pole_cap : 0) << ")";
  throw ConstructionError(os.str());
}

CaseSpec case_for(int m1, int m2) {
  const bool odd1 = (m1 % 2) != 0, odd2 = (m2 % 2) != 0;
  CaseSpec c;
  c.p = odd1 ? (m1 + 1) / 2 : m1 / 2;
  c.q = odd2 ? (m2 + 1) / 2 : m2 / 2;
  c.case_tag = odd1 ? (odd2 ? 1 : 2) : (odd2 ? 3 : 4);
  return c;
}

std::pair<int, int> multiplicity_for(int p, int q, int case_tag) {
  switch (case_tag) {
    case 1: return {2 * p - 1, 2 * q - 1};
    case 2: return {2 * p - 1, 2 * q};
    case 3: return {2 * p, 2 * q - 1};
    case 4: return {2 * p, 2 * q};
  }
  throw std::invalid_argument("case must be 1..4");
}

std::vector<int> predicted_exponents(const EpqContext& ctx, int p, int q, int case_tag) {
  multiplicity_for(p, q, case_tag);
  const int base = p * ctx.h1() + q * ctx.h2() + 1;
  std::vector<int> out;
  if (case_tag == 4) return std::vector<int>(ctx.rank(), base - 1);
  GroupTag g = case_tag == 1 ? GroupTag::W : case_tag == 2 ? GroupTag::W1 : GroupTag::W2;
  for (int d : ctx.system(g).degrees) out.push_back(base - d);
  return out;
}

std::vector<Derivation> case_basis(const EpqContext& ctx, int p, int q, int case_tag) {
  multiplicity_for(p, q, case_tag);
  Derivation e = ctx.e_pq(p, q);
  std::vector<Derivation> out;
  for (int i = 0; i < ctx.rank(); ++i) {
    Derivation x;
    switch (case_tag) {
      case 1: x = ctx.fields(GroupTag::W)[i]; break;
      case 2: x = ctx.fields(GroupTag::W1)[i]; break;
      case 3: x = ctx.fields(GroupTag::W2)[i]; break;
      default: x = Derivation::coordinate(ctx.rank(), i);
    }
    out.push_back(covariant_derivative(x, e));
  }
  return out;
}

BasisCertificate theta_basis(const EpqContext& ctx, int p, int q, int case_tag) {
  const auto& arr = ctx.arrangement();
  auto [m1, m2] = multiplicity_for(p, q, case_tag);
  BasisCertificate c;
  c.family = arr.family;
  c.param = arr.family == Family::B ? arr.rank : arr.family == Family::I2 ? arr.n : 0;
  c.m = Multiplicity::from_orbits(arr, m1, m2);
  c.m1 = m1;
  c.m2 = m2;
  c.case_tag = case_tag;
  c.route = "epq";
  c.p = p;
  c.q = q;
  c.basis = case_basis(ctx, p, q, case_tag);
  c.exponents = predicted_exponents(ctx, p, q, case_tag);
  // Ascending exponents; ties keep the coordinate-field order.
  std::vector<size_t> order(c.basis.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) { return c.exponents[i] < c.exponents[j]; });
  std::vector<Derivation> sorted_basis;
  std::vector<int> sorted_exp;
  for (size_t i : order) {
    sorted_basis.push_back(c.basis[i]);
    sorted_exp.push_back(c.exponents[i]);
  }
  c.basis = std::move(sorted_basis);
  c.exponents = std::move(sorted_exp);
  c.invariance = invariance_check(c.basis, arr.simple);
  for (GroupTag g : {GroupTag::W, GroupTag::W1, GroupTag::W2})
    for (const auto& s : ctx.system(g).seeds) c.seeds.push_back(group_name(g) + ":" + s);
  CheckReport r = check_certificate(c);
  if (!r.ok) {
    std::string msg = "basis failed verification:";
    for (const auto& f : r.failures) msg += " " + f + ";";
    throw VerificationError(msg);
  }
  c.saito_c = r.saito_c;
  return c;
}

RecursionStep recursion_step(const EpqContext& ctx, const std::vector<Derivation>& theta) {
  const auto& arr = ctx.arrangement();
  const auto& sys = ctx.system(GroupTag::W);
  const int n = arr.rank;
  if (static_cast<int>(theta.size()) != n) throw std::invalid_argument("recursion_step: need rank-many derivations");
  PolyMatrix G = saito_matrix_G(sys);
  std::vector<Derivation> tg;
  for (int j = 0; j < n; ++j) {
    Derivation s(n);
    for (int i = 0; i < n; ++i) s += LogRational(G(i, j)) * theta[i];
    tg.push_back(std::move(s));
  }
  LogMatrix C(n, n), N(n, n);
  for (int j = 0; j < n; ++j) {
    Derivation v = covariant_derivative(ctx.D(), tg[j]);
    for (int k = 0; k < n; ++k) {
      C(k, j) = theta[j][k];
      N(k, j) = v[k];
    }
  }
  auto x = solve_over_fractions(C, N, arr.forms());
  if (!x) throw VerificationError("recursion_step: Theta is singular or B has foreign poles");
  RecursionStep out;
  out.B = PolyMatrix(n, n, Poly(n));
  const int h = sys.h;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const LogRational& e = (*x)(i, j);
      if (!e.is_polynomial()) throw VerificationError("recursion_step: B has a non-polynomial entry");
      const Poly& b = e.numerator();
      if (!ctx.D().apply(b).is_zero()) throw VerificationError("recursion_step: D does not annihilate a B entry");
      if (i + j < n - 1 && !b.is_zero()) throw VerificationError("recursion_step: B violates the zero pattern");
      if (i + j == n - 1 && (b.is_zero() || !b.is_constant()))
        throw VerificationError("recursion_step: antidiagonal entry of B is not a nonzero constant");
      if (!b.is_zero() && (!b.is_homogeneous() || b.degree() != sys.degrees[i] + sys.degrees[j] - 2 - h))
        throw VerificationError("recursion_step: B entry has the wrong degree");
      out.B(i, j) = b;
    }
  Poly det = determinant(out.B);
  if (det.is_zero() || !det.is_constant()) throw VerificationError("recursion_step: det B is not a nonzero constant");
  LogMatrix id(n, n, LogRational(n));
  for (int i = 0; i < n; ++i) id(i, i) = LogRational(Poly::constant(n, Scalar(1)));
  auto inv = solve_over_fractions(to_log_matrix(out.B), id, {});
  if (!inv) throw VerificationError("recursion_step: B is not invertible over polynomials");
  for (int j = 0; j < n; ++j) {
    Derivation s(n);
    for (int i = 0; i < n; ++i)
      if (!(*inv)(i, j).is_zero()) s += (*inv)(i, j) * tg[i];
    out.next.push_back(std::move(s));
  }
  return out;
}

RecursionRoute recursion_route(const EpqContext& ctx, int p, int q) {
  if (q < 0) throw ConstructionError("recursion_route: q must be nonnegative");
  Derivation zeta = ctx.e_pq(p - q, 0);
  RecursionRoute r;
  for (const auto& f : ctx.fields(GroupTag::W)) r.theta.push_back(covariant_derivative(f, zeta));
  for (int k = 0; k < q; ++k) {
    RecursionStep s = recursion_step(ctx, r.theta);
    r.B.push_back(std::move(s.B));
    r.theta = std::move(s.next);
  }
  return r;
}

Derivation recover_zeta(const std::vector<Derivation>& theta, const InvariantSystem& sys, int m) {
  if (m == 0) throw std::invalid_argument("recover_zeta: degree must be nonzero");
  if (theta.size() != sys.P.size()) throw std::invalid_argument("recover_zeta: size mismatch");
  const int n = sys.P.front().nvars();
  Derivation z(n);
  for (size_t i = 0; i < theta.size(); ++i) z += LogRational(sys.P[i] * Scalar(sys.degrees[i])) * theta[i];
  return Scalar(1, m) * z;
}

std::vector<std::vector<Derivation>> primitive_decomposition(const EpqContext& ctx, int p, int q, int k_max) {
  if (k_max < 0) throw std::invalid_argument("primitive_decomposition: k_max must be nonnegative");
  std::vector<std::vector<Derivation>> blocks;
  for (int k = 0; k <= k_max; ++k) blocks.push_back(case_basis(ctx, p + k, q + k, 1));
  return blocks;
}

Multiplicity m_star(const ArrangementData& arr, const Multiplicity& m) {
  Multiplicity r = m;
  for (const auto& orbit : hyperplane_orbits(arr)) {
    int best = INT_MIN;
    for (int i : orbit) best = std::max(best, 2 * floor_div(m[i], 2) + 1);
    for (int i : orbit) r.m[i] = best;
  }
  return r;
}

}  // namespace coxder
