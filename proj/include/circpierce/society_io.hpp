#pragma once

// Society files: {"name": "...", "arcs": [{"left": "3/7", "length": "1/4",
// "closure": "closed"}, ...]}. Coordinates are all rational ("a/b") or all
// decimal ("0.15"); a file mixing the two is rejected.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "circpierce/spectrum.hpp"

namespace circpierce {

AnySociety society_from_json(const nlohmann::json& doc);
AnySociety parse_society(std::string_view text);
AnySociety load_society(const std::filesystem::path& path);

template <CircleScalar T>
nlohmann::json to_json(const Society<T>& society);
nlohmann::json to_json(const AnySociety& society);

std::string dump_society(const AnySociety& society);

}  // namespace circpierce
