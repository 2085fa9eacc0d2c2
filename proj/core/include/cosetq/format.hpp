#pragma once

#include <string>
#include <string_view>

#include "cosetq/qseries.hpp"

namespace cosetq {

/// `1 + q^2 - 3q^(1/2) + O(q^7)`; the exact zero renders as `0`.
std::string format_plain(const QSeries& s);
/// `1 + q^{2} + 2q^{4} + O(q^{7})`.
std::string format_latex(const QSeries& s);
/// `exponent,coefficient` rows followed by a `bound,<value|inf>` row.
std::string format_csv(const QSeries& s);

/// JSON encoding: {"prefix": {"num","den"}, "min_deg", "order": int|"inf", "coeffs": [str]}.
/// A non-unit lattice adds a "lattice" member. Output is compact and deterministic.
std::string to_json(const QSeries& s);
QSeries qseries_from_json(std::string_view text);

}  // namespace cosetq
