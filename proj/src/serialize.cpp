#include "coxder/serialize.hpp"

#include <stdexcept>

namespace coxder {

using nlohmann::json;

namespace {

json rational_json(const mpq_class& q) { return json::array({q.get_num().get_str(), q.get_den().get_str()}); }

mpq_class rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw std::invalid_argument("rational must be [num, den] strings");
  mpq_class q;
  if (q.get_num().set_str(j[0].get<std::string>(), 10) != 0 || q.get_den().set_str(j[1].get<std::string>(), 10) != 0)
    throw std::invalid_argument("bad integer in rational");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

json to_json(const Scalar& s) {
  if (s.is_rational()) return rational_json(s.rational());
  json c = json::array();
  for (const auto& q : s.coeffs()) c.push_back(rational_json(q));
  return json{{"field", c}};
}

Scalar scalar_from_json(const json& j, const FieldPtr& field) {
  if (j.is_array()) return Scalar(rational_from_json(j));
  require(j.is_object() && j.contains("field") && j["field"].is_array(), "bad scalar");
  require(field != nullptr, "field element in a rational arrangement");
  UPoly c;
  for (const auto& q : j["field"]) c.push_back(rational_from_json(q));
  return Scalar::in_field(field, c);
}

json to_json(const Poly& p) {
  json r = json::array();
  for (const auto& t : p.terms()) r.push_back(json::array({t.mono.exponents(p.nvars()), to_json(t.coeff)}));
  return r;
}

Poly poly_from_json(const json& j, int nvars, const FieldPtr& field) {
  require(j.is_array(), "polynomial must be an array of terms");
  std::vector<Term> terms;
  for (const auto& t : j) {
    require(t.is_array() && t.size() == 2 && t[0].is_array(), "bad term");
    auto e = t[0].get<std::vector<int>>();
    require(static_cast<int>(e.size()) == nvars, "exponent array has wrong length");
    for (int x : e) require(x >= 0 && x < 256, "exponent out of range");
    terms.push_back({Monomial::from_exponents(e), scalar_from_json(t[1], field)});
  }
  return Poly::from_terms(nvars, std::move(terms));
}

json to_json(const LogRational& f) {
  json den = json::array();
  for (const auto& [alpha, e] : f.denominator()) {
    json c = json::array();
    for (const auto& s : alpha.coeffs()) c.push_back(to_json(s));
    den.push_back(json::array({c, e}));
  }
  return json{{"num", to_json(f.numerator())}, {"den", den}};
}

LogRational log_rational_from_json(const json& j, int nvars, const FieldPtr& field) {
  require(j.is_object() && j.contains("num") && j.contains("den") && j["den"].is_array(), "bad rational function");
  Poly num = poly_from_json(j["num"], nvars, field);
  FormExponents den;
  for (const auto& f : j["den"]) {
    require(f.is_array() && f.size() == 2 && f[0].is_array() && f[1].is_number_integer(), "bad denominator factor");
    std::vector<Scalar> c;
    for (const auto& s : f[0]) c.push_back(scalar_from_json(s, field));
    require(static_cast<int>(c.size()) == nvars, "form has wrong length");
    Scalar scale;
    LinearForm alpha(c, &scale);
    int e = f[1].get<int>();
    require(e > 0, "denominator exponent must be positive");
    // The stored form is normalized already; rescale the numerator if not.
    num *= scale.pow(e).inverse();
    den[alpha] += e;
  }
  return LogRational(std::move(num), std::move(den));
}

json to_json(const Derivation& theta) {
  json c = json::array();
  for (const auto& f : theta.coeffs()) c.push_back(to_json(f));
  auto d = theta.degree();
  return json{{"degree", d ? json(*d) : json(nullptr)}, {"coeffs", c}};
}

Derivation derivation_from_json(const json& j, int nvars, const FieldPtr& field) {
  require(j.is_object() && j.contains("coeffs") && j["coeffs"].is_array(), "bad derivation");
  require(static_cast<int>(j["coeffs"].size()) == nvars, "derivation has wrong number of coefficients");
  std::vector<LogRational> c;
  for (const auto& f : j["coeffs"]) c.push_back(log_rational_from_json(f, nvars, field));
  return Derivation(std::move(c));
}

std::string family_name(Family f) {
  switch (f) {
    case Family::B: return "B";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
    case Family::I2: return "I2";
  }
  return "?";
}

json to_json(const BasisCertificate& c) {
  json basis = json::array();
  for (size_t i = 0; i < c.basis.size(); ++i) {
    json b = to_json(c.basis[i]);
    if (i < c.invariance.size()) b["invariance"] = c.invariance[i];
    basis.push_back(b);
  }
  return json{{"schema", kSchemaVersion},
              {"family", family_name(c.family)},
              {"param", c.param},
              {"multiplicity", c.m.m},
              {"m1", c.m1},
              {"m2", c.m2},
              {"case", c.case_tag},
              {"route", c.route},
              {"p", c.p},
              {"q", c.q},
              {"exponents", c.exponents},
              {"saito_c", to_json(c.saito_c)},
              {"seeds", c.seeds},
              {"basis", basis}};
}

BasisCertificate certificate_from_json(const json& j) {
  require(j.is_object(), "certificate must be an object");
  require(j.value("schema", 0) == kSchemaVersion, "unsupported schema version");
  try {
    BasisCertificate c;
    c.family = parse_family(j.at("family").get<std::string>());
    c.param = j.at("param").get<int>();
    auto arr = build_arrangement(c.family, c.param);
    c.m.m = j.at("multiplicity").get<std::vector<int>>();
    require(c.m.m.size() == arr.hyperplanes.size(), "multiplicity has wrong length");
    c.m1 = j.at("m1").get<int>();
    c.m2 = j.at("m2").get<int>();
    c.case_tag = j.at("case").get<int>();
    c.route = j.at("route").get<std::string>();
    c.p = j.at("p").get<int>();
    c.q = j.at("q").get<int>();
    c.exponents = j.at("exponents").get<std::vector<int>>();
    c.saito_c = scalar_from_json(j.at("saito_c"), arr.field);
    c.seeds = j.value("seeds", std::vector<std::string>{});
    for (const auto& b : j.at("basis")) {
      c.basis.push_back(derivation_from_json(b, arr.rank, arr.field));
      if (b.contains("invariance")) c.invariance.push_back(b["invariance"].get<std::vector<int>>());
    }
    require(c.invariance.empty() || c.invariance.size() == c.basis.size(), "invariance flags incomplete");
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace coxder
