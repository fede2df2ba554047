#include "glyphga/deviation.hpp"

#include <limits>
#include <vector>

namespace glyphga {

bool near_closed(const Edge& e, const Params& p) {
  return e.kind == EdgeKind::Curve &&
         squared_distance(e.start, e.end) < p.beta * p.beta;
}

namespace {

// The max-point substitution applies when both edges are curves and either
// one is near-closed; conditioning on one side only would make D asymmetric.
inline bool use_max_points(const Edge& e1, const Edge& e2, const Params& p) {
  return e1.kind == EdgeKind::Curve && e2.kind == EdgeKind::Curve &&
         (near_closed(e1, p) || near_closed(e2, p));
}

inline double kind_overhead(const Edge& e1, const Edge& e2, const Params& p) {
  return e1.kind != e2.kind ? p.eta : 0.0;
}

}  // namespace

Deviation d1(const Edge& e1, const Edge& e2, const Params& p) {
  const bool sub = use_max_points(e1, e2, p);
  const Point tail1 = sub ? e1.max_point : e1.end;
  const Point tail2 = sub ? e2.max_point : e2.end;
  return squared_distance(e1.start, e2.start) + squared_distance(tail1, tail2) +
         kind_overhead(e1, e2, p);
}

Deviation d2(const Edge& e1, const Edge& e2, const Params& p) {
  const bool sub = use_max_points(e1, e2, p);
  const Point tail1 = sub ? e1.max_point : e1.end;
  const Point tail2 = sub ? e2.max_point : e2.end;
  return squared_distance(e1.start, tail2) + squared_distance(tail1, e2.start) +
         kind_overhead(e1, e2, p);
}

Deviation edge_deviation(const Edge* e1, const Edge* e2, const Params& p) {
  if (e1 && e2) return std::min(d1(*e1, *e2, p), d2(*e1, *e2, p));
  const Edge* e = e1 ? e1 : e2;
  if (!e) throw BothNull("edge_deviation needs at least one edge");
  const Point tail = near_closed(*e, p) ? e->max_point : e->end;
  return squared_distance(e->start, tail);
}

Deviation graph_deviation(const Glyph& g1, const Glyph& g2, const Params& p) {
  const std::size_t n1 = g1.edges.size();
  const std::size_t n2 = g2.edges.size();
  std::vector<double> pair_dev(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      pair_dev[i * n2 + j] = edge_deviation(&g1.edges[i], &g2.edges[j], p);

  std::vector<std::uint8_t> used1(n1, 0), used2(n2, 0);
  double dev = 0.0;
  std::size_t remaining = std::min(n1, n2);
  while (remaining-- > 0) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n1; ++i) {
      if (used1[i]) continue;
      for (std::size_t j = 0; j < n2; ++j) {
        if (used2[j]) continue;
        if (pair_dev[i * n2 + j] < best) {
          best = pair_dev[i * n2 + j];
          bi = i;
          bj = j;
        }
      }
    }
    dev += best;
    used1[bi] = 1;
    used2[bj] = 1;
  }
  for (std::size_t i = 0; i < n1; ++i)
    if (!used1[i]) dev += edge_deviation(&g1.edges[i], nullptr, p);
  for (std::size_t j = 0; j < n2; ++j)
    if (!used2[j]) dev += edge_deviation(nullptr, &g2.edges[j], p);
  return dev;
}

}  // namespace glyphga
