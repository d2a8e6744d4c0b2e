#pragma once

#include "mapgen/motzkin.hpp"
#include "mapgen/series.hpp"

#include <json.hpp>

namespace mapgen {

// {"var": "s", "order": R, "coeffs": ["p/q", ...]}
nlohmann::json to_json(const PowerSeries& a);
PowerSeries series_from_json(const nlohmann::json& j);

// [{"coeff": c, "a": [offsets], "b2": [offsets]}, ...], offsets repeated by exponent
nlohmann::json to_json(const OperatorPolynomial& p);

}  // namespace mapgen
