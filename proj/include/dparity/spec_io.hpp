#pragma once

#include <string>

#include <json.hpp>

#include "dparity/model.hpp"

namespace dparity {

/// Reads {"A": [[...]], "h": [...], "k": [...], "y": ["p/q", ...]}. "y" may be
/// omitted (untwisted) and its entries may also be JSON integers. Shape and
/// type errors raise Error(ParseError); matrix conditions raise the
/// validate_spec errors.
SeriesSpec spec_from_json(const nlohmann::json& doc);
SeriesSpec load_spec(const std::string& path);

nlohmann::json spec_to_json(const SeriesSpec& spec);

}  // namespace dparity
