#include "glyphga/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace glyphga {

namespace {

std::uint64_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return rng() % n;
}

// Vertices eligible for matching: greedily kept in (y, x) order so that the
// survivors are pairwise at least beta apart.
std::vector<int> beta_filtered(const std::vector<Point>& vertices, double beta) {
  std::vector<int> order(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return point_less(vertices[a], vertices[b]);
  });
  std::vector<int> kept;
  for (int i : order) {
    bool ok = true;
    for (int k : kept)
      if (squared_distance(vertices[i], vertices[k]) < beta * beta) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

MatchAssignment match_points(const Glyph& g1, const Glyph& g2, const Params& p) {
  std::vector<int> ver1 = beta_filtered(g1.vertices, p.beta);
  std::vector<int> ver2 = beta_filtered(g2.vertices, p.beta);

  MatchAssignment m;
  std::vector<std::uint8_t> used1(g1.vertices.size(), 0), used2(g2.vertices.size(), 0);
  const double limit = 4.0 * p.beta * p.beta;  // (2*beta)^2
  while (true) {
    double best = limit;
    int bi = -1, bj = -1;
    for (int i : ver1) {
      if (used1[i]) continue;
      for (int j : ver2) {
        if (used2[j]) continue;
        const double d = squared_distance(g1.vertices[i], g2.vertices[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    used1[bi] = 1;
    used2[bj] = 1;
    m.pairs.emplace_back(bi, bj);
  }
  for (std::size_t i = 0; i < g1.vertices.size(); ++i)
    if (!used1[i]) m.unmatched_g1.push_back(static_cast<int>(i));
  for (std::size_t j = 0; j < g2.vertices.size(); ++j)
    if (!used2[j]) m.unmatched_g2.push_back(static_cast<int>(j));
  return m;
}

namespace {

// The shared index space for a parent pair: matched pairs first, then the
// unmatched vertices of each graph, transplanted verbatim into the other.
struct UnifiedSpace {
  int n = 0;
  std::vector<Point> side1;        // coordinate seen from g1's frame
  std::vector<Point> side2;        // coordinate seen from g2's frame
  std::vector<int> g1_to_unified;  // -1 when absent
  std::vector<int> g2_to_unified;
};

UnifiedSpace build_unified(const Glyph& g1, const Glyph& g2, const MatchAssignment& m) {
  UnifiedSpace u;
  u.g1_to_unified.assign(g1.vertices.size(), -1);
  u.g2_to_unified.assign(g2.vertices.size(), -1);
  for (const auto& [i, j] : m.pairs) {
    u.g1_to_unified[i] = u.n;
    u.g2_to_unified[j] = u.n;
    u.side1.push_back(g1.vertices[i]);
    u.side2.push_back(g2.vertices[j]);
    ++u.n;
  }
  for (int i : m.unmatched_g1) {
    u.g1_to_unified[i] = u.n;
    u.side1.push_back(g1.vertices[i]);
    u.side2.push_back(g1.vertices[i]);
    ++u.n;
  }
  for (int j : m.unmatched_g2) {
    u.g2_to_unified[j] = u.n;
    u.side1.push_back(g2.vertices[j]);
    u.side2.push_back(g2.vertices[j]);
    ++u.n;
  }
  return u;
}

void accumulate_edge(AdjacencyMatrix& w, int i, int j, EdgeKind kind) {
  const int add = kind == EdgeKind::Line ? 1 : 2;
  const int v = w.at(i, j) + add;
  if (v > 3) throw IllegalMultiEdge("more than one line and one curve between a vertex pair");
  w.set_sym(i, j, static_cast<std::uint8_t>(v));
}

AdjacencyMatrix adjacency_over(const Glyph& g, const std::vector<int>& vertex_to_index, int n) {
  AdjacencyMatrix w(n);
  for (const Edge& e : g.edges) {
    const int a = vertex_index_near(g, e.start);
    const int b = vertex_index_near(g, e.end);
    if (a < 0 || b < 0) throw Error("edge endpoint does not coincide with any vertex");
    accumulate_edge(w, vertex_to_index[a], vertex_to_index[b], e.kind);
  }
  return w;
}

}  // namespace

AdjacencyMatrix generate_adjacency(const Glyph& g) {
  std::vector<int> identity(g.vertices.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
  return adjacency_over(g, identity, static_cast<int>(g.vertices.size()));
}

PathTable find_paths(const AdjacencyMatrix& w, const Params& p, std::mt19937_64& rng) {
  const int n = w.n;
  const int max_len = p.max_path_len;
  PathTable t;
  t.n = n;
  t.max_len = max_len;
  t.slots.assign(static_cast<std::size_t>(n) * n * max_len, {});

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i && w.at(i, j) > 0) adj[i].push_back(j);

  // Enumerate every simple path of up to max_len edges from each source,
  // then pick one per (target, length) slot: first a last-hop vertex
  // uniformly among the candidates, then a path consistent with it.
  std::vector<std::vector<std::vector<std::vector<int>>>> buckets;
  for (int i = 0; i < n; ++i) {
    buckets.assign(n, std::vector<std::vector<std::vector<int>>>(max_len));
    std::vector<int> path{i};
    std::vector<std::uint8_t> on_path(n, 0);
    on_path[i] = 1;
    auto dfs = [&](auto&& self, int cur) -> void {
      for (int nb : adj[cur]) {
        if (on_path[nb]) continue;
        path.push_back(nb);
        on_path[nb] = 1;
        buckets[nb][path.size() - 2].push_back(path);
        if (static_cast<int>(path.size()) - 1 < max_len) self(self, nb);
        on_path[nb] = 0;
        path.pop_back();
      }
    };
    dfs(dfs, i);

    for (int j = 0; j < n; ++j) {
      for (int l = 1; l <= max_len; ++l) {
        auto& cand = buckets[j][l - 1];
        if (cand.empty()) continue;
        std::vector<int> hops;
        for (const auto& c : cand) {
          const int hop = c[c.size() - 2];
          if (std::find(hops.begin(), hops.end(), hop) == hops.end()) hops.push_back(hop);
        }
        const int hop = hops.size() > 1
                            ? hops[uniform_index(rng, hops.size())]
                            : hops.front();
        std::vector<const std::vector<int>*> with_hop;
        for (const auto& c : cand)
          if (c[c.size() - 2] == hop) with_hop.push_back(&c);
        const std::vector<int>* pick = with_hop.size() > 1
                                           ? with_hop[uniform_index(rng, with_hop.size())]
                                           : with_hop.front();
        t.slots[(static_cast<std::size_t>(i) * n + j) * max_len + (l - 1)] = *pick;
      }
    }
  }
  return t;
}

std::optional<std::vector<int>> reconstruct_path(const PathTable& t, int i, int j, int l) {
  if (i < 0 || j < 0 || i >= t.n || j >= t.n || l < 1 || l > t.max_len) return std::nullopt;
  const std::vector<int>& p = t.path(i, j, l);
  if (p.empty()) return std::nullopt;
  return p;
}

EdgeKind remove_edge(AdjacencyMatrix& w, int i, int j, std::mt19937_64& rng) {
  const int v = w.at(i, j);
  switch (v) {
    case 0:
      throw OperationBroken("no edge to remove");
    case 1:
      w.set_sym(i, j, 0);
      return EdgeKind::Line;
    case 2:
      w.set_sym(i, j, 0);
      return EdgeKind::Curve;
    case 3: {
      const bool drop_line = uniform_index(rng, 2) == 0;
      w.set_sym(i, j, drop_line ? 2 : 1);
      return drop_line ? EdgeKind::Line : EdgeKind::Curve;
    }
    default:
      throw IllegalState("adjacency cell above 3");
  }
}

void add_edge(AdjacencyMatrix& w, int i, int j, EdgeKind kind) {
  const int v = w.at(i, j);
  if (v > 3) throw IllegalState("adjacency cell above 3");
  const int code = kind == EdgeKind::Line ? 1 : 2;
  if (v & code) throw OperationBroken("edge kind already present");
  w.set_sym(i, j, static_cast<std::uint8_t>(v | code));
}

namespace {

Point midpoint(Point a, Point b) {
  return Point{(a.x + b.x) * 0.5f, (a.y + b.y) * 0.5f};
}

// Locates a parent curve between the two given coordinates (either
// orientation) to donate its max point.
struct CurveSource {
  const Edge* edge = nullptr;
  bool reversed = false;
};

CurveSource find_curve(const Glyph& g, Point a, Point b) {
  for (const Edge& e : g.edges) {
    if (e.kind != EdgeKind::Curve) continue;
    const double tol = kSnapEps * kSnapEps;
    if (squared_distance(e.start, a) <= tol && squared_distance(e.end, b) <= tol)
      return {&e, false};
    if (squared_distance(e.start, b) <= tol && squared_distance(e.end, a) <= tol)
      return {&e, true};
  }
  return {};
}

Glyph make_graph_in(const AdjacencyMatrix& w, const Glyph& g1, const Glyph& g2,
                    const UnifiedSpace& u) {
  if (w.n != u.n) throw Error("adjacency size does not match the unified vertex space");

  Glyph out;
  out.vertices.reserve(u.n);
  for (int k = 0; k < u.n; ++k) out.vertices.push_back(midpoint(u.side1[k], u.side2[k]));

  for (int i = 0; i < u.n; ++i) {
    for (int j = i; j < u.n; ++j) {
      int code = w.at(i, j);
      if (code == 0) continue;
      const Point a = out.vertices[i];
      const Point b = out.vertices[j];
      if (code >= 2) {
        CurveSource src = find_curve(g1, u.side1[i], u.side1[j]);
        if (!src.edge) src = find_curve(g2, u.side2[i], u.side2[j]);
        // The rebuilt curve keeps its donor's orientation so the carried max
        // point stays measured from the right end.
        Point from = a, to = b;
        Point max = b;
        if (src.edge) {
          if (src.reversed) std::swap(from, to);
          // Mean shift of the endpoints, paired so an identity rebuild is
          // exactly zero.
          const float dx = ((from.x - src.edge->start.x) + (to.x - src.edge->end.x)) * 0.5f;
          const float dy = ((from.y - src.edge->start.y) + (to.y - src.edge->end.y)) * 0.5f;
          max = Point{src.edge->max_point.x + dx, src.edge->max_point.y + dy};
          if (squared_distance(from, max) < squared_distance(from, to) - kPointEps) max = to;
        }
        out.edges.push_back(curve_edge(from, to, max));
        code -= 2;
      }
      if (code == 1) out.edges.push_back(line_edge(a, b));
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace

Glyph make_graph(const AdjacencyMatrix& w, const Glyph& g1, const Glyph& g2,
                 const MatchAssignment& m) {
  return make_graph_in(w, g1, g2, build_unified(g1, g2, m));
}

CrossoverResult crossover(const Glyph& g1, const Glyph& g2, const Params& p,
                          std::mt19937_64& rng, int parent_a, int parent_b) {
  CrossoverResult result;
  const MatchAssignment m = match_points(g1, g2, p);
  const UnifiedSpace u = build_unified(g1, g2, m);
  const AdjacencyMatrix w1 = adjacency_over(g1, u.g1_to_unified, u.n);
  const AdjacencyMatrix w2 = adjacency_over(g2, u.g2_to_unified, u.n);

  const Lineage mean_lineage{parent_a, parent_b, -1, -1, 0, 0};
  if (w1 == w2) {
    result.offspring.push_back({make_graph_in(w1, g1, g2, u), mean_lineage});
    return result;
  }

  const PathTable f1 = find_paths(w1, p, rng);
  const PathTable f2 = find_paths(w2, p, rng);

  for (int a = 0; a < u.n; ++a) {
    for (int b = a + 1; b < u.n; ++b) {
      for (int l1 = 1; l1 <= p.max_path_len; ++l1) {
        const std::vector<int>& p1 = f1.path(a, b, l1);
        if (p1.empty()) continue;
        for (int l2 = 1; l2 <= p.max_path_len; ++l2) {
          const std::vector<int>& p2 = f2.path(a, b, l2);
          if (p2.empty() || p1 == p2) continue;
          AdjacencyMatrix spliced = w1;
          try {
            for (std::size_t s = 0; s + 1 < p1.size(); ++s)
              remove_edge(spliced, p1[s], p1[s + 1], rng);
            for (std::size_t s = 0; s + 1 < p2.size(); ++s) {
              const int code = w2.at(p2[s], p2[s + 1]);
              EdgeKind kind = EdgeKind::Line;
              if (code == 2) {
                kind = EdgeKind::Curve;
              } else if (code == 3) {
                kind = uniform_index(rng, 2) == 0 ? EdgeKind::Line : EdgeKind::Curve;
              }
              add_edge(spliced, p2[s], p2[s + 1], kind);
            }
            result.offspring.push_back(
                {make_graph_in(spliced, g1, g2, u),
                 Lineage{parent_a, parent_b, a, b, l1, l2}});
          } catch (const OperationBroken&) {
            ++result.aborted;
          }
        }
      }
    }
  }

  if (result.offspring.empty())
    result.offspring.push_back({make_graph_in(w1, g1, g2, u), mean_lineage});
  return result;
}

EvolveResult evolve_pool(const std::vector<Glyph>& templates, const Glyph& input,
                         const Params& p, std::mt19937_64& rng) {
  if (templates.empty()) throw EmptyTemplates("evolve_pool needs at least one template");
  p.validate();

  struct Scored {
    Deviation dev;
    Glyph glyph;
  };
  auto scored_less = [](const Scored& a, const Scored& b) {
    if (a.dev != b.dev) return a.dev < b.dev;
    return glyph_less(a.glyph, b.glyph);
  };

  EvolveResult best;
  bool have_best = false;
  auto consider = [&](const Scored& s) {
    if (!have_best || s.dev < best.best) {
      best.best = s.dev;
      best.best_glyph = s.glyph;
      have_best = true;
    }
  };

  std::vector<Scored> pool;
  pool.reserve(templates.size());
  for (const Glyph& t : templates) {
    Scored s{graph_deviation(t, input, p), t};
    consider(s);
    pool.push_back(std::move(s));
  }
  auto settle = [&](std::vector<Scored>& v) {
    std::sort(v.begin(), v.end(), scored_less);
    v.erase(std::unique(v.begin(), v.end(),
                        [](const Scored& a, const Scored& b) { return a.glyph == b.glyph; }),
            v.end());
    if (v.size() > static_cast<std::size_t>(p.pool_cap)) v.resize(p.pool_cap);
  };
  settle(pool);

  int stagnant = 0;
  for (int gen = 0; gen < p.ga_generations; ++gen) {
    if (best.best == 0.0) break;  // nothing left to optimize
    const Deviation before = best.best;
    std::vector<Scored> merged = pool;
    auto cross_into = [&](std::size_t i, std::size_t j) {
      CrossoverResult cr = crossover(pool[i].glyph, pool[j].glyph, p, rng,
                                     static_cast<int>(i), static_cast<int>(j));
      for (Offspring& o : cr.offspring) {
        Scored s{graph_deviation(o.glyph, input, p), std::move(o.glyph)};
        consider(s);
        merged.push_back(std::move(s));
      }
    };
    // The operator splices paths of the second parent into the first, so
    // each unordered pair is crossed in both orientations.
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        cross_into(i, j);
        cross_into(j, i);
      }
    }
    settle(merged);
    pool = std::move(merged);
    stagnant = best.best < before ? 0 : stagnant + 1;
    if (stagnant >= 3) break;
  }
  return best;
}

}  // namespace glyphga
