#include "cosetq/format.hpp"

#include <sstream>

#include <json.hpp>

#include "cosetq/errors.hpp"
#include "json_codec.hpp"

namespace cosetq {

namespace {

enum class Style { plain, latex };

std::string exponent_text(const Rational& e, Style style) {
  if (style == Style::latex) {
    if (e.is_integer()) return "q^{" + e.str() + "}";
    const bool neg = e.num() < 0;
    const Integer n = neg ? Integer(-e.num()) : e.num();
    return std::string("q^{") + (neg ? "-" : "") + "\\frac{" + n.str() + "}{" + e.den().str() + "}}";
  }
  if (e.is_integer()) return "q^" + e.str();
  return "q^(" + e.str() + ")";
}

std::string monomial_text(const Rational& e, const Integer& magnitude, Style style) {
  if (e == 0) return magnitude.str();
  const std::string q = (e == 1) ? std::string("q") : exponent_text(e, style);
  if (magnitude == 1) return q;
  return magnitude.str() + q;
}

std::string render(const QSeries& s, Style style) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    const bool neg = c < 0;
    const Integer mag = neg ? Integer(-c) : c;
    if (first) {
      os << (neg ? "-" : "") << monomial_text(e, mag, style);
      first = false;
    } else {
      os << (neg ? " - " : " + ") << monomial_text(e, mag, style);
    }
  }
  if (const auto b = s.bound()) {
    const std::string big_o = "O(" + exponent_text(*b, style) + ")";
    os << (first ? "" : " + ") << big_o;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string format_plain(const QSeries& s) { return render(s, Style::plain); }

std::string format_latex(const QSeries& s) { return render(s, Style::latex); }

std::string format_csv(const QSeries& s) {
  std::ostringstream os;
  os << "exponent,coefficient\n";
  for (const auto& [e, c] : s.terms()) os << e.str() << ',' << c.str() << '\n';
  os << "bound," << (s.bound() ? s.bound()->str() : std::string("inf")) << '\n';
  return os.str();
}

std::string to_json(const QSeries& s) { return qseries_to_json_value(s).dump(); }

QSeries qseries_from_json(std::string_view text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed series JSON: ") + e.what());
  }
  return qseries_from_json_value(j);
}

}  // namespace cosetq
