#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace glyphga {

// Point coincidence tolerance and edge-endpoint-to-vertex snap tolerance,
// in canvas units. Both sit well below the beta dedup threshold.
inline constexpr double kPointEps = 1e-6;
inline constexpr double kSnapEps = 1e-3;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// angle_at() was handed a probe whose side length collapses below kPointEps.
struct DegenerateTriangle : Error {
  using Error::Error;
};

// 2-D coordinate on the normalized canvas. Coordinates are single precision
// so that a 9-significant-digit decimal serialization round-trips exactly.
struct Point {
  float x = 0.0f;
  float y = 0.0f;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class EdgeKind : std::uint8_t { Line, Curve };

// Attributed stroke. max_point is the traced point farthest from start;
// for a line it always equals end.
struct Edge {
  Point start;
  Point end;
  EdgeKind kind = EdgeKind::Line;
  Point max_point;

  friend bool operator==(const Edge&, const Edge&) = default;
};

Edge line_edge(Point start, Point end);
Edge curve_edge(Point start, Point end, Point max_point);

// A character graph: vertices at stroke endpoints/junctions, edges typed
// line or curve. Edge endpoints coincide (within kSnapEps) with vertices.
struct Glyph {
  std::vector<Point> vertices;
  std::vector<Edge> edges;

  friend bool operator==(const Glyph&, const Glyph&) = default;
};

struct Params {
  int canvas_width = 100;   // canvas units; normalized rasters use one pixel per unit
  int canvas_height = 100;
  double gamma = 8.0;       // probe arc distance for the line/curve test
  double beta = 10.0;       // near-circle threshold, vertex dedup radius
  double eta = 800.0;       // overhead added when a line is compared to a curve
  double line_angle_spread_max = 15.0;  // degrees; spread at or below reads as a line
  int max_path_len = 4;     // crossover path cap, in edges
  int ga_generations = 10;
  int pool_cap = 30;
  std::uint64_t rng_seed = 1;

  void validate() const;  // throws Error when a field is out of range
};

// Fitness units: sums of squared coordinate distances (plus eta overheads).
using Deviation = double;

double squared_distance(Point p, Point q);

// Interior angle at `vertex` of triangle (a, vertex, b), by the law of
// cosines with the cosine clamped to [-1, 1]. Degrees in [0, 180].
// Throws DegenerateTriangle when either side is shorter than kPointEps.
double angle_at(Point vertex, Point a, Point b);

// Deterministic (y, x) lexicographic orderings used for tie-breaking.
bool point_less(const Point& a, const Point& b);
bool edge_less(const Edge& a, const Edge& b);
bool glyph_less(const Glyph& a, const Glyph& b);

// Index of the glyph vertex within kSnapEps of p, or -1.
int vertex_index_near(const Glyph& g, Point p, double tolerance = kSnapEps);

// Sorts vertices and edges into (y, x) order so structurally equal glyphs
// compare equal regardless of construction order.
void canonicalize(Glyph& g);

}  // namespace glyphga
