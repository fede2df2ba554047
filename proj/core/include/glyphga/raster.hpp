#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glyphga/geometry.hpp"

namespace glyphga {

struct MalformedImage : Error {
  using Error::Error;
};

struct EmptyImage : Error {
  using Error::Error;
};

// Row-major 1-bit image; 1 = ink.
struct BinaryRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryRaster() = default;
  BinaryRaster(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool ink = true) {
    bits[static_cast<std::size_t>(y) * width + x] = ink ? 1 : 0;
  }
  int ink_count() const;

  friend bool operator==(const BinaryRaster&, const BinaryRaster&) = default;
};

// Per-axis expansion factors applied while fitting the ink bounding box
// onto the target canvas.
struct NormalizationReport {
  double fx = 1.0;
  double fy = 1.0;
};

// Parses Netpbm P1/P4 bitmaps and P2/P5 graymaps ('#' comments accepted).
// Graymap pixels below half of maxval count as ink. Throws MalformedImage.
BinaryRaster load_raster(std::string_view bytes);

// Plain-text P1 encoding of the raster.
std::string write_p1(const BinaryRaster& r);

// Zhang-Suen iterative thinning, run to a fixpoint.
BinaryRaster thin(const BinaryRaster& r);

// Scales the ink bounding box onto the canvas declared in `p`. Strokes stay
// 8-connected: images of adjacent ink pixels are joined with segments, and a
// thinning pass cleans the joins up. A degenerate axis (single-pixel extent)
// keeps factor 1 and is centered. Throws EmptyImage when there is no ink.
std::pair<BinaryRaster, NormalizationReport> normalize_raster(const BinaryRaster& r,
                                                              const Params& p);

}  // namespace glyphga
