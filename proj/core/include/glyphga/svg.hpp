#pragma once

#include <string>

#include "glyphga/geometry.hpp"

namespace glyphga {

// Debug view: vertices as circles, lines as segments, open curves as
// quadratic paths through max_point, closed curves as circles.
std::string glyph_to_svg(const Glyph& g, const Params& p);

}  // namespace glyphga
