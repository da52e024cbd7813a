#pragma once

#include <random>

#include "coxder/log_rational.hpp"
#include "coxder/poly.hpp"

namespace testing_helpers {

using namespace coxder;

inline Poly X(int n, int i) { return Poly::variable(n, i); }
inline Poly C(int n, long c) { return Poly::constant(n, Scalar(c)); }
inline LinearForm form(std::vector<Scalar> c) { return LinearForm(std::move(c)); }

inline Poly random_poly(std::mt19937& rng, int nvars, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-5, 5);
  std::vector<Term> t;
  for (int k = 0; k < terms; ++k) {
    std::vector<int> e(nvars, 0);
    int d = deg(rng);
    for (int j = 0; j < d; ++j) e[std::uniform_int_distribution<int>(0, nvars - 1)(rng)]++;
    t.push_back({Monomial::from_exponents(e), Scalar(coef(rng))});
  }
  return Poly::from_terms(nvars, std::move(t));
}

}  // namespace testing_helpers
