#pragma once

#include <string>

#include <json.hpp>

#include "windex/toeplitz.hpp"
#include "windex/twisted.hpp"
#include "windex/winding.hpp"

namespace windex::io {

using json = nlohmann::ordered_json;

// CentreElement <-> {"model":"scalar","re":..,"im":..}
//                 | {"model":"finite","values":[[re,im],...]}
//                 | {"model":"laurent","coeffs":{"-1":[re,im],...}}
// Laurent exponent keys are decimal integer strings, emitted in ascending
// numeric order.
json centre_to_json(const CentreElement& c);
CentreElement centre_from_json(const json& j, const std::string& path = "centre");

// TwistedElement <-> {"context":{"cocycle":...,"theta":...,"eta":...},
//                     "terms":[{"n":..,"m":..,"coeff":...},...]}
// Terms are emitted sorted lexicographically by (n, m).
json context_to_json(const AlgebraContext& ctx);
AlgebraContext context_from_json(const json& j, const std::string& path = "context");
json twisted_to_json(const TwistedElement& a);
TwistedElement twisted_from_json(const json& j, const std::string& path = "element");

// Circle symbol {"coeffs":{...}} and torus symbol {"terms":[{"n","m","re","im"}]}
toeplitz::BandedToeplitz banded_from_json(const json& j, const std::string& path = "symbol");
json banded_to_json(const toeplitz::BandedToeplitz& t);
toeplitz::GridSymbol grid_symbol_from_json(const json& j, double mu,
                                           const std::string& path = "symbol");

// Tiny expression parser for torus monomial sums like "z^2*w", "w - z^-1".
toeplitz::GridSymbol grid_symbol_from_expr(const std::string& expr, double mu);

json load_json_file(const std::string& path);

}  // namespace windex::io
