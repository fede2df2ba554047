#pragma once

#include "glyphga/geometry.hpp"
#include "glyphga/raster.hpp"

namespace glyphga {

// Rasterizes a glyph onto the canvas declared in `p`: lines as Bresenham
// segments, open curves as quadratic polylines through max_point, closed
// curves as the circle through start and max_point.
BinaryRaster render_glyph(const Glyph& g, const Params& p);

}  // namespace glyphga
