#pragma once

#include <vector>

#include "glyphga/geometry.hpp"
#include "glyphga/raster.hpp"

namespace glyphga {

// An 8-connected pixel walk between two node pixels. A closed walk has
// from_vertex == to_vertex.
struct PixelChain {
  std::vector<Point> pixels;
  Point from_vertex;
  Point to_vertex;
};

// Ink pixels with exactly one ink neighbor (stroke endpoints) or three or
// more (junctions). A component with neither gets its topmost-leftmost pixel
// designated as the node. Sorted by (y, x).
std::vector<Point> find_nodes(const BinaryRaster& r);

// Walks every stroke between nodes. Chains shorter than 2 pixels are
// discarded; every interior ink pixel lands in exactly one chain.
std::vector<PixelChain> trace_chains(const BinaryRaster& r, const std::vector<Point>& nodes);

// Line/curve test: at the chain point gamma arc units from the start, measure
// the angle subtended by the start and each point at least 2*gamma arc units
// out. A spread within line_angle_spread_max reads as a line; chains too
// short for the probe default to Line.
EdgeKind classify_chain(const PixelChain& c, const Params& p);

// Chain pixel farthest from the chain start; ties go to the earlier pixel.
Point max_distance_point(const PixelChain& c);

// Full pipeline from a thinned, normalized raster to a Glyph: nodes, chains,
// sharp-corner splitting, junction-cluster and beta dedup of vertices, and
// per-chain edge attribution. Throws EmptyImage.
Glyph extract_graph(const BinaryRaster& r, const Params& p);

}  // namespace glyphga
