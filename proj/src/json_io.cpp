#include "mapgen/json_io.hpp"

namespace mapgen {

nlohmann::json to_json(const PowerSeries& a) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (auto& c : a.coeffs()) coeffs.push_back(to_string(c));
  return {{"var", a.var()}, {"order", a.order()}, {"coeffs", coeffs}};
}

PowerSeries series_from_json(const nlohmann::json& j) {
  std::vector<Rational> c;
  for (auto& x : j.at("coeffs")) c.push_back(rational_from_string(x.get<std::string>()));
  if (static_cast<int>(c.size()) != j.at("order").get<int>() + 1)
    throw series_error("coefficient count does not match the stated order");
  return PowerSeries(j.at("var").get<std::string>(), std::move(c));
}

nlohmann::json to_json(const OperatorPolynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (auto& [m, c] : p.terms()) {
    std::vector<int> a, b2;
    for (auto& [sym, e] : m)
      for (int i = 0; i < e; ++i) (sym.kind == Symbol::a ? a : b2).push_back(sym.offset);
    // coefficients of operator entries are small; keep them as JSON integers
    out.push_back({{"coeff", c.convert_to<long long>()}, {"a", a}, {"b2", b2}});
  }
  return out;
}

}  // namespace mapgen
