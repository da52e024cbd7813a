#include "coxder/serialize.hpp"
#include "coxder/verify.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace coxder;
using namespace testing_helpers;
using nlohmann::json;

TEST_CASE("scalar and polynomial encoding") {
  CHECK(to_json(Scalar(-3, 4)) == json::array({"-3", "4"}));
  auto big = Scalar(mpq_class("123456789012345678901234567890/7"));
  CHECK(scalar_from_json(to_json(big), nullptr) == big);
  auto f = NumberField::sqrt(3);
  auto g = Scalar::generator(f) * Scalar(2, 5) + Scalar(1);
  CHECK(scalar_from_json(to_json(g), f) == g);
  CHECK_THROWS_AS(scalar_from_json(json::array({"1", "0"}), nullptr), std::invalid_argument);
  CHECK_THROWS_AS(scalar_from_json(json::array({1, 2}), nullptr), std::invalid_argument);

  Poly x = X(2, 0), y = X(2, 1);
  Poly p = x.pow(3) * y - Scalar(5, 2) * y.pow(2);
  json pj = to_json(p);
  CHECK(pj[0][0] == json::array({3, 1}));
  CHECK(poly_from_json(pj, 2, nullptr) == p);
  CHECK_THROWS_AS(poly_from_json(pj, 3, nullptr), std::invalid_argument);
}

TEST_CASE("rational function encoding") {
  LinearForm a({Scalar(1), Scalar(-1)});
  LogRational r(X(2, 0), FormExponents{{a, 2}});
  CHECK(log_rational_from_json(to_json(r), 2, nullptr) == r);
  // A non-normalized form is rescaled on read: x / (2x - 2y) = (x/2) / (x - y).
  json j = {{"num", to_json(X(2, 0))}, {"den", json::array({json::array({json::array({json::array({"2", "1"}), json::array({"-2", "1"})}), 1})})}};
  CHECK(log_rational_from_json(j, 2, nullptr) == LogRational(Scalar(1, 2) * X(2, 0), FormExponents{{a, 1}}));
}

TEST_CASE("certificate round trip") {
  for (auto [fam, param] : std::vector<std::pair<Family, int>>{{Family::B, 2}, {Family::B, 3}}) {
    EpqContext ctx(build_arrangement(fam, param));
    for (int c = 1; c <= 4; ++c) {
      auto cert = theta_basis(ctx, 1, -1, c);
      json j = to_json(cert);
      CHECK(j["schema"] == 1);
      auto back = certificate_from_json(json::parse(j.dump()));
      CHECK(back.basis == cert.basis);
      CHECK(back.m == cert.m);
      CHECK(back.saito_c == cert.saito_c);
      CHECK(back.invariance == cert.invariance);
      CHECK(to_json(back).dump() == j.dump());
      CHECK(check_certificate(back).ok);
    }
  }
  auto g2 = build_arrangement(Family::G2);
  auto cert = rank2_basis(g2, Multiplicity::from_orbits(g2, 1, 2));
  auto back = certificate_from_json(to_json(cert));
  CHECK(back.basis == cert.basis);
  CHECK(check_certificate(back).ok);
}

TEST_CASE("malformed certificates") {
  EpqContext ctx(build_arrangement(Family::B, 2));
  json j = to_json(theta_basis(ctx, 1, 1, 1));
  auto bad_schema = j;
  bad_schema["schema"] = 2;
  CHECK_THROWS_AS(certificate_from_json(bad_schema), std::invalid_argument);
  auto missing = j;
  missing.erase("multiplicity");
  CHECK_THROWS_AS(certificate_from_json(missing), std::invalid_argument);
  auto short_m = j;
  short_m["multiplicity"] = json::array({1, 1});
  CHECK_THROWS_AS(certificate_from_json(short_m), std::invalid_argument);
  auto bad_family = j;
  bad_family["family"] = "E8";
  CHECK_THROWS_AS(certificate_from_json(bad_family), std::invalid_argument);
}
