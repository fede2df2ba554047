#pragma once

#include <string>
#include <string_view>

#include "glyphga/geometry.hpp"

namespace glyphga {

// A persisted document violates its schema (bad field, unknown kind,
// missing or unsupported version, out-of-range index).
struct MalformedStore : Error {
  using Error::Error;
};

// Rounds a coordinate to the value of its 9-significant-digit decimal form,
// the precision at which single-precision coordinates round-trip exactly.
double quantize_coordinate(double v);

// {"vertices":[[x,y],...],"edges":[{"from":i,"to":j,"kind":...,"max_point":[x,y]},...]}
// with 0-based vertex indices.
std::string glyph_to_json(const Glyph& g);

// Accepts extra top-level keys; everything else is validated strictly.
// Throws MalformedStore.
Glyph glyph_from_json(std::string_view text);

}  // namespace glyphga
