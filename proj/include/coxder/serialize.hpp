#pragma once

#include <string>

#include "coxder/certificate.hpp"
#include "json.hpp"

namespace coxder {

inline constexpr int kSchemaVersion = 1;

// Rationals are [num, den] decimal strings; elements of Q(g) are
// {"field": [[num, den], ...]} with coefficients of 1, g, g^2, ...
nlohmann::json to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j, const FieldPtr& field);

// Terms as [exponent array, coefficient], in canonical monomial order.
nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j, int nvars, const FieldPtr& field);

// {"num": poly, "den": [[form coefficients, exponent], ...]}
nlohmann::json to_json(const LogRational& f);
LogRational log_rational_from_json(const nlohmann::json& j, int nvars, const FieldPtr& field);

// {"degree": d or null, "coeffs": [LogRational, ...]}
nlohmann::json to_json(const Derivation& theta);
Derivation derivation_from_json(const nlohmann::json& j, int nvars, const FieldPtr& field);

std::string family_name(Family f);

nlohmann::json to_json(const BasisCertificate& c);
// Throws std::invalid_argument on malformed input or an unknown schema.
BasisCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace coxder
