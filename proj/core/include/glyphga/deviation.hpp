#pragma once

#include "glyphga/geometry.hpp"

namespace glyphga {

// edge_deviation was called with two null edges.
struct BothNull : Error {
  using Error::Error;
};

// True when e is a curve whose start and end sit closer than beta, the
// "almost circle" case where the max-separation point stands in for the end.
bool near_closed(const Edge& e, const Params& p);

// Deviation with start matched to start and end to end. Both-curve pairs
// where either side is near-closed compare max points instead of end points;
// a line/curve kind mismatch adds eta.
Deviation d1(const Edge& e1, const Edge& e2, const Params& p);

// The crossed case: start of e1 against end of e2 and vice versa, with max
// points swapped into the crossed slots under the same near-closed rule.
Deviation d2(const Edge& e1, const Edge& e2, const Params& p);

// min(d1, d2) when both edges are present. With one edge null, the present
// edge's own start-to-end squared distance (start-to-max when near-closed).
// Throws BothNull when neither edge is given.
Deviation edge_deviation(const Edge* e1, const Edge* e2, const Params& p);

// Greedy whole-graph deviation: repeatedly take the globally cheapest edge
// pair, then charge every leftover edge its null deviation.
Deviation graph_deviation(const Glyph& g1, const Glyph& g2, const Params& p);

}  // namespace glyphga
