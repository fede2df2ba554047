#include "glyphga/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace glyphga {

Edge line_edge(Point start, Point end) {
  return Edge{start, end, EdgeKind::Line, end};
}

Edge curve_edge(Point start, Point end, Point max_point) {
  return Edge{start, end, EdgeKind::Curve, max_point};
}

void Params::validate() const {
  if (canvas_width < 2 || canvas_height < 2)
    throw Error("canvas dimensions must be at least 2 units");
  if (!(gamma > 0.0)) throw Error("gamma must be positive");
  if (!(beta > 0.0)) throw Error("beta must be positive");
  if (!(eta > 0.0)) throw Error("eta must be positive");
  if (!(line_angle_spread_max > 0.0))
    throw Error("line angle spread threshold must be positive");
  if (max_path_len < 1) throw Error("max path length must be at least 1");
  if (ga_generations < 1) throw Error("generation count must be at least 1");
  if (pool_cap < 1) throw Error("pool cap must be at least 1");
}

double squared_distance(Point p, Point q) {
  const double dx = static_cast<double>(p.x) - static_cast<double>(q.x);
  const double dy = static_cast<double>(p.y) - static_cast<double>(q.y);
  return dx * dx + dy * dy;
}

double angle_at(Point vertex, Point a, Point b) {
  const double va = std::sqrt(squared_distance(vertex, a));
  const double vb = std::sqrt(squared_distance(vertex, b));
  if (va < kPointEps || vb < kPointEps)
    throw DegenerateTriangle("angle probe side collapsed");
  const double ab2 = squared_distance(a, b);
  double c = (va * va + vb * vb - ab2) / (2.0 * va * vb);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) * 180.0 / 3.14159265358979323846;
}

bool point_less(const Point& a, const Point& b) {
  return std::tie(a.y, a.x) < std::tie(b.y, b.x);
}

bool edge_less(const Edge& a, const Edge& b) {
  auto key = [](const Edge& e) {
    return std::tuple(e.start.y, e.start.x, e.end.y, e.end.x,
                      static_cast<int>(e.kind), e.max_point.y, e.max_point.x);
  };
  return key(a) < key(b);
}

bool glyph_less(const Glyph& a, const Glyph& b) {
  auto pk = [](const Point& p) { return std::pair(p.y, p.x); };
  const std::size_t nv = std::min(a.vertices.size(), b.vertices.size());
  for (std::size_t i = 0; i < nv; ++i) {
    if (pk(a.vertices[i]) != pk(b.vertices[i]))
      return pk(a.vertices[i]) < pk(b.vertices[i]);
  }
  if (a.vertices.size() != b.vertices.size())
    return a.vertices.size() < b.vertices.size();
  const std::size_t ne = std::min(a.edges.size(), b.edges.size());
  for (std::size_t i = 0; i < ne; ++i) {
    if (!(a.edges[i] == b.edges[i]))
      return edge_less(a.edges[i], b.edges[i]);
  }
  return a.edges.size() < b.edges.size();
}

void canonicalize(Glyph& g) {
  std::sort(g.vertices.begin(), g.vertices.end(), point_less);
  // Lines are orientation-free; curves keep theirs (max_point is measured
  // from the start).
  for (Edge& e : g.edges) {
    if (e.kind == EdgeKind::Line && point_less(e.end, e.start)) {
      std::swap(e.start, e.end);
      e.max_point = e.end;
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), edge_less);
}

int vertex_index_near(const Glyph& g, Point p, double tolerance) {
  const double tol2 = tolerance * tolerance;
  int best = -1;
  double best_d = tol2;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const double d = squared_distance(g.vertices[i], p);
    if (d <= best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace glyphga
