#pragma once

#include <json.hpp>

#include "cosetq/qseries.hpp"

namespace cosetq {

nlohmann::ordered_json qseries_to_json_value(const QSeries& s);
/// Throws DomainError on schema violations.
QSeries qseries_from_json_value(const nlohmann::ordered_json& j);

}  // namespace cosetq
