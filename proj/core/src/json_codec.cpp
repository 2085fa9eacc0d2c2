#include "json_codec.hpp"

#include <cctype>
#include <string>

#include "cosetq/errors.hpp"

namespace cosetq {

nlohmann::ordered_json qseries_to_json_value(const QSeries& s) {
  nlohmann::ordered_json j;
  j["prefix"] = {{"num", to_int64(s.prefix().num())}, {"den", to_int64(s.prefix().den())}};
  if (s.lattice() != 1) j["lattice"] = s.lattice();
  j["min_deg"] = s.min_deg();
  if (s.order()) {
    j["order"] = *s.order();
  } else {
    j["order"] = "inf";
  }
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.str());
  j["coeffs"] = std::move(coeffs);
  return j;
}

QSeries qseries_from_json_value(const nlohmann::ordered_json& j) {
  try {
    const auto& prefix = j.at("prefix");
    const auto num = prefix.at("num").get<std::int64_t>();
    const auto den = prefix.at("den").get<std::int64_t>();
    if (den <= 0) throw DomainError("series JSON: prefix denominator must be positive");
    const std::int64_t lattice = j.contains("lattice") ? j.at("lattice").get<std::int64_t>() : 1;
    const auto min_deg = j.at("min_deg").get<std::int64_t>();
    std::optional<std::int64_t> order;
    const auto& order_json = j.at("order");
    if (order_json.is_string()) {
      if (order_json.get<std::string>() != "inf") throw DomainError("series JSON: bad order");
    } else {
      order = order_json.get<std::int64_t>();
    }
    std::vector<Integer> coeffs;
    for (const auto& c : j.at("coeffs")) {
      const auto text = c.get<std::string>();
      if (text.empty()) throw DomainError("series JSON: empty coefficient");
      for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || (i == 0 && ch == '-' && text.size() > 1))) {
          throw DomainError("series JSON: coefficient '" + text + "' is not a decimal integer");
        }
      }
      coeffs.emplace_back(text);
    }
    if (order && *order - min_deg != static_cast<std::int64_t>(coeffs.size())) {
      throw DomainError("series JSON: coeffs length must equal order - min_deg");
    }
    return QSeries::make(Rational(Integer(num), Integer(den)), lattice, min_deg, std::move(coeffs), order);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("series JSON: ") + e.what());
  }
}

}  // namespace cosetq
