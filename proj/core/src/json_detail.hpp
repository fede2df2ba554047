#pragma once

#include <json.hpp>

#include "glyphga/geometry.hpp"
#include "glyphga/serialize.hpp"

namespace glyphga::detail {

using ordered_json = nlohmann::ordered_json;

ordered_json point_to_json(Point p);
Point point_from_json(const ordered_json& j, const char* what);

ordered_json glyph_to_json_value(const Glyph& g);
Glyph glyph_from_json_value(const ordered_json& j);

}  // namespace glyphga::detail
