#pragma once

// Test-only oracles, independent of the library implementations they check,
// plus deterministic random-input generators.

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "glyphga/deviation.hpp"
#include "glyphga/genetic.hpp"
#include "glyphga/geometry.hpp"
#include "glyphga/raster.hpp"

namespace oracle {

// Textbook Zhang-Suen with explicit neighbor lookups, kept separate from the
// library's implementation on purpose.
inline glyphga::BinaryRaster zhang_suen_reference(glyphga::BinaryRaster img) {
  auto ink = [&](int x, int y) {
    return x >= 0 && x < img.width && y >= 0 && y < img.height && img.at(x, y) ? 1 : 0;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int phase = 0; phase < 2; ++phase) {
      std::vector<std::pair<int, int>> kill;
      for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
          if (!img.at(x, y)) continue;
          const int p2 = ink(x, y - 1), p3 = ink(x + 1, y - 1), p4 = ink(x + 1, y);
          const int p5 = ink(x + 1, y + 1), p6 = ink(x, y + 1), p7 = ink(x - 1, y + 1);
          const int p8 = ink(x - 1, y), p9 = ink(x - 1, y - 1);
          const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
          if (b < 2 || b > 6) continue;
          const int seq[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
          int a = 0;
          for (int i = 0; i < 8; ++i)
            if (seq[i] == 0 && seq[i + 1] == 1) ++a;
          if (a != 1) continue;
          if (phase == 0) {
            if (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0) continue;
          } else {
            if (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0) continue;
          }
          kill.emplace_back(x, y);
        }
      }
      if (!kill.empty()) changed = true;
      for (auto [x, y] : kill) img.set(x, y, false);
    }
  }
  return img;
}

// Minimum over all pairings-with-leftovers of summed edge deviations; the
// greedy production value may exceed this but never undercut it.
inline double optimal_assignment_deviation(const glyphga::Glyph& g1, const glyphga::Glyph& g2,
                                           const glyphga::Params& p) {
  const auto& e1 = g1.edges;
  const auto& e2 = g2.edges;
  std::vector<int> used(e2.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  double null_tail2 = 0.0;  // recomputed per leaf below

  auto recurse = [&](auto&& self, std::size_t i, double acc) -> void {
    if (acc >= best) return;
    if (i == e1.size()) {
      double total = acc;
      for (std::size_t j = 0; j < e2.size(); ++j)
        if (!used[j]) total += glyphga::edge_deviation(nullptr, &e2[j], p);
      best = std::min(best, total);
      return;
    }
    self(self, i + 1, acc + glyphga::edge_deviation(&e1[i], nullptr, p));
    for (std::size_t j = 0; j < e2.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      self(self, i + 1, acc + glyphga::edge_deviation(&e1[i], &e2[j], p));
      used[j] = 0;
    }
  };
  (void)null_tail2;
  recurse(recurse, 0, 0.0);
  return best;
}

// Exhaustive DFS: does a simple path with exactly `len` edges join i and j?
inline bool simple_path_exists(const glyphga::AdjacencyMatrix& w, int i, int j, int len) {
  std::vector<std::uint8_t> on_path(w.n, 0);
  on_path[i] = 1;
  auto dfs = [&](auto&& self, int cur, int left) -> bool {
    if (left == 0) return cur == j;
    for (int nb = 0; nb < w.n; ++nb) {
      if (nb == cur || on_path[nb] || w.at(cur, nb) == 0) continue;
      on_path[nb] = 1;
      if (self(self, nb, left - 1)) {
        on_path[nb] = 0;
        return true;
      }
      on_path[nb] = 0;
    }
    return false;
  };
  return dfs(dfs, i, len);
}

inline double urand(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random glyph satisfying the structural invariants: vertices at least beta
// apart, at most one line and one curve per vertex pair, curve max points at
// least as far from start as the end is.
inline glyphga::Glyph random_glyph(std::mt19937_64& rng, const glyphga::Params& p,
                                   int max_vertices = 6, int max_edges = 6) {
  using namespace glyphga;
  Glyph g;
  const int want = 2 + static_cast<int>(rng() % std::max(1, max_vertices - 1));
  int guard = 0;
  while (static_cast<int>(g.vertices.size()) < want && guard++ < 300) {
    const Point cand{static_cast<float>(urand(rng) * (p.canvas_width - 1)),
                     static_cast<float>(urand(rng) * (p.canvas_height - 1))};
    bool ok = true;
    for (const Point& v : g.vertices)
      if (squared_distance(v, cand) < p.beta * p.beta) ok = false;
    if (ok) g.vertices.push_back(cand);
  }
  const int n = static_cast<int>(g.vertices.size());
  const int edges = 1 + static_cast<int>(rng() % max_edges);
  for (int e = 0; e < edges; ++e) {
    const int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % n);
    const bool line = (rng() % 2) == 0;
    bool taken = false;
    for (const Edge& ex : g.edges) {
      const int xa = vertex_index_near(g, ex.start);
      const int xb = vertex_index_near(g, ex.end);
      if (ex.kind == (line ? EdgeKind::Line : EdgeKind::Curve) &&
          ((xa == a && xb == b) || (xa == b && xb == a)))
        taken = true;
    }
    if (taken) continue;
    if (line && a == b) continue;  // zero-length lines are pointless
    const Point s = g.vertices[a];
    const Point t = g.vertices[b];
    if (line) {
      g.edges.push_back(line_edge(s, t));
    } else {
      // Perpendicular bulge keeps the max point at least end-far from start.
      const float px = -(t.y - s.y), py = t.x - s.x;
      const float norm = std::sqrt(px * px + py * py);
      Point max;
      if (a == b || norm < 1e-3f) {
        max = Point{s.x + static_cast<float>(5.0 + urand(rng) * 20.0), s.y};
      } else {
        const float h = static_cast<float>(3.0 + urand(rng) * 15.0);
        max = Point{t.x + px / norm * h, t.y + py / norm * h};
      }
      g.edges.push_back(curve_edge(s, t, max));
    }
  }
  if (g.edges.empty()) g.edges.push_back(line_edge(g.vertices[0], g.vertices[1]));
  return g;
}

// Random symmetric matrix with entries in 0..3 (diagonal left empty).
inline glyphga::AdjacencyMatrix random_adjacency(std::mt19937_64& rng, int max_vertices = 8) {
  const int n = 2 + static_cast<int>(rng() % (max_vertices - 1));
  glyphga::AdjacencyMatrix w(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 100 < 45) w.set_sym(i, j, static_cast<std::uint8_t>(1 + rng() % 3));
  return w;
}

// Structural Glyph checks shared by fuzz tests and the acceptance suite.
inline bool glyph_is_valid(const glyphga::Glyph& g, std::string* why = nullptr) {
  using namespace glyphga;
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  for (const Edge& e : g.edges) {
    if (vertex_index_near(g, e.start) < 0) return fail("edge start off every vertex");
    if (vertex_index_near(g, e.end) < 0) return fail("edge end off every vertex");
    if (e.kind == EdgeKind::Line && !(e.max_point == e.end))
      return fail("line max_point is not the end");
    if (e.kind == EdgeKind::Curve &&
        squared_distance(e.start, e.max_point) <
            squared_distance(e.start, e.end) - 1e-6)
      return fail("curve max_point closer to start than the end");
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
      const Edge& a = g.edges[i];
      const Edge& b = g.edges[j];
      if (a.kind != b.kind) continue;
      const int aa = vertex_index_near(g, a.start), ab = vertex_index_near(g, a.end);
      const int ba = vertex_index_near(g, b.start), bb = vertex_index_near(g, b.end);
      if ((aa == ba && ab == bb) || (aa == bb && ab == ba))
        return fail("two same-kind edges between one vertex pair");
    }
  return true;
}

}  // namespace oracle
