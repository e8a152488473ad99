#pragma once

// JSON conversions shared by the model, experiment and CLI layers.

#include <json.hpp>

#include "repising/model.hpp"

namespace repising {

nlohmann::json model_to_json_value(const IsingModel &m);
/// `where` prefixes validation messages, e.g. "instance".
IsingModel model_from_json_value(const nlohmann::json &j,
                                 const std::string &where = "model");

/// Parses text, mapping syntax errors to ParseError with line/column.
nlohmann::json parse_json_text(std::string_view text);

} // namespace repising
