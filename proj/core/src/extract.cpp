#include "glyphga/extract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

namespace glyphga {

namespace {

struct Px {
  int x = 0;
  int y = 0;
  friend bool operator==(const Px&, const Px&) = default;
};

inline bool px_less(const Px& a, const Px& b) {
  return std::pair(a.y, a.x) < std::pair(b.y, b.x);
}

inline Point to_point(Px p) {
  return Point{static_cast<float>(p.x), static_cast<float>(p.y)};
}

inline Px to_px(Point p) {
  return Px{static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
}

// Neighbor scan order is (y, x) lexicographic for deterministic walks.
constexpr int kNx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kNy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

int ink_degree(const BinaryRaster& r, int x, int y) {
  int d = 0;
  for (int k = 0; k < 8; ++k) {
    const int nx = x + kNx[k], ny = y + kNy[k];
    if (r.in_bounds(nx, ny) && r.at(nx, ny)) ++d;
  }
  return d;
}

// Stroke strands leaving a pixel: 0->1 transitions walking the neighborhood
// clockwise. Raw neighbor counts misread staircase pixels as junctions.
int crossing_number(const BinaryRaster& r, int x, int y) {
  static constexpr int cx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  static constexpr int cy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  int n[8];
  for (int k = 0; k < 8; ++k) {
    const int nx = x + cx[k], ny = y + cy[k];
    n[k] = (r.in_bounds(nx, ny) && r.at(nx, ny)) ? 1 : 0;
  }
  int t = 0;
  for (int k = 0; k < 8; ++k)
    if (n[k] == 0 && n[(k + 1) % 8] == 1) ++t;
  return t;
}

std::vector<double> arc_lengths(const std::vector<Point>& pixels) {
  std::vector<double> cum(pixels.size(), 0.0);
  for (std::size_t i = 1; i < pixels.size(); ++i)
    cum[i] = cum[i - 1] + std::sqrt(squared_distance(pixels[i - 1], pixels[i]));
  return cum;
}

}  // namespace

std::vector<Point> find_nodes(const BinaryRaster& r) {
  std::vector<Px> nodes;
  std::vector<std::uint8_t> is_node(r.bits.size(), 0);
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) {
      if (!r.at(x, y)) continue;
      const int d = ink_degree(r, x, y);
      if (d == 1 || crossing_number(r, x, y) >= 3) {
        nodes.push_back({x, y});
        is_node[static_cast<std::size_t>(y) * r.width + x] = 1;
      }
    }

  // Components without any endpoint/junction (closed loops, lone pixels) get
  // their first pixel in scan order designated as the node.
  std::vector<std::uint8_t> seen(r.bits.size(), 0);
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * r.width + x;
      if (!r.at(x, y) || seen[idx]) continue;
      std::vector<Px> stack{{x, y}};
      std::vector<Px> component;
      seen[idx] = 1;
      bool has_node = false;
      while (!stack.empty()) {
        const Px p = stack.back();
        stack.pop_back();
        component.push_back(p);
        if (is_node[static_cast<std::size_t>(p.y) * r.width + p.x]) has_node = true;
        for (int k = 0; k < 8; ++k) {
          const int nx = p.x + kNx[k], ny = p.y + kNy[k];
          if (!r.in_bounds(nx, ny) || !r.at(nx, ny)) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * r.width + nx;
          if (!seen[nidx]) {
            seen[nidx] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      if (!has_node) {
        Px designated = component.front();
        for (const Px& p : component)
          if (px_less(p, designated)) designated = p;
        nodes.push_back(designated);
      }
    }

  std::sort(nodes.begin(), nodes.end(), px_less);
  std::vector<Point> out;
  out.reserve(nodes.size());
  for (const Px& p : nodes) out.push_back(to_point(p));
  return out;
}

std::vector<PixelChain> trace_chains(const BinaryRaster& r, const std::vector<Point>& nodes) {
  std::vector<std::uint8_t> is_node(r.bits.size(), 0);
  for (const Point& p : nodes) {
    const Px px = to_px(p);
    is_node[static_cast<std::size_t>(px.y) * r.width + px.x] = 1;
  }
  auto node_at = [&](int x, int y) {
    return is_node[static_cast<std::size_t>(y) * r.width + x] != 0;
  };

  std::vector<std::uint8_t> visited(r.bits.size(), 0);  // interior pixels only
  std::set<std::pair<int, int>> used_node_pairs;        // flattened node-node adjacencies
  auto flat = [&](Px p) { return p.y * r.width + p.x; };

  std::vector<PixelChain> chains;
  auto emit = [&](std::vector<Px>&& walk) {
    if (walk.size() < 2) return;
    PixelChain c;
    c.pixels.reserve(walk.size());
    for (const Px& p : walk) c.pixels.push_back(to_point(p));
    c.from_vertex = c.pixels.front();
    c.to_vertex = c.pixels.back();
    chains.push_back(std::move(c));
  };

  for (const Point& np : nodes) {
    const Px n = to_px(np);
    for (int k = 0; k < 8; ++k) {
      const int qx = n.x + kNx[k], qy = n.y + kNy[k];
      if (!r.in_bounds(qx, qy) || !r.at(qx, qy)) continue;
      const Px q{qx, qy};
      if (node_at(qx, qy)) {
        // Two adjacent nodes form a 2-pixel chain; claim both directions.
        if (used_node_pairs.count({flat(n), flat(q)})) continue;
        used_node_pairs.insert({flat(n), flat(q)});
        used_node_pairs.insert({flat(q), flat(n)});
        emit({n, q});
        continue;
      }
      if (visited[static_cast<std::size_t>(qy) * r.width + qx]) continue;

      std::vector<Px> walk{n};
      Px prev = n;
      Px cur = q;
      visited[static_cast<std::size_t>(cur.y) * r.width + cur.x] = 1;
      while (true) {
        walk.push_back(cur);
        // A node neighbor terminates the walk; closing back onto the start
        // node needs at least two interior pixels.
        Px terminal{-1, -1};
        bool found_terminal = false;
        for (int j = 0; j < 8; ++j) {
          const int nx = cur.x + kNx[j], ny = cur.y + kNy[j];
          if (!r.in_bounds(nx, ny) || !r.at(nx, ny) || !node_at(nx, ny)) continue;
          const Px cand{nx, ny};
          if (cand == prev) continue;
          if (cand == n && walk.size() < 3) continue;
          terminal = cand;
          found_terminal = true;
          break;
        }
        if (found_terminal) {
          walk.push_back(terminal);
          emit(std::move(walk));
          break;
        }
        // Among unvisited continuations, keep walking in the direction we
        // came from; a fixed scan order can double back across redundant
        // diagonals and strand the rest of the stroke.
        Px next{-1, -1};
        bool found_next = false;
        double best_turn = 1e9;
        const double inx = cur.x - prev.x, iny = cur.y - prev.y;
        const double inlen = std::sqrt(inx * inx + iny * iny);
        for (int j = 0; j < 8; ++j) {
          const int nx = cur.x + kNx[j], ny = cur.y + kNy[j];
          if (!r.in_bounds(nx, ny) || !r.at(nx, ny) || node_at(nx, ny)) continue;
          if (visited[static_cast<std::size_t>(ny) * r.width + nx]) continue;
          const double dlen = std::sqrt(double(kNx[j] * kNx[j] + kNy[j] * kNy[j]));
          const double turn = -(inx * kNx[j] + iny * kNy[j]) / (inlen * dlen);
          if (!found_next || turn < best_turn - 1e-12) {
            next = {nx, ny};
            best_turn = turn;
            found_next = true;
          }
        }
        if (!found_next) {
          // Dead end off the node graph; keep it only when it is clearly a
          // real stroke rather than a junction artifact.
          if (walk.size() >= 4) emit(std::move(walk));
          break;
        }
        visited[static_cast<std::size_t>(next.y) * r.width + next.x] = 1;
        prev = cur;
        cur = next;
      }
    }
  }
  return chains;
}

namespace {

// Junction blobs bend the first couple of pixels of a chain; the angle test
// runs on the chain with both ends shaved by this arc length.
constexpr double kChainTrim = 2.0;

}  // namespace

EdgeKind classify_chain(const PixelChain& c, const Params& p) {
  if (c.pixels.size() < 2) return EdgeKind::Line;
  const std::vector<double> cum = arc_lengths(c.pixels);

  std::size_t first = 0;
  while (first + 1 < cum.size() && cum[first] < kChainTrim) ++first;
  std::size_t last = cum.size() - 1;
  while (last > first && cum.back() - cum[last] < kChainTrim) --last;
  const double span = cum[last] - cum[first];
  if (span < 2.0 * p.gamma) return EdgeKind::Line;

  std::size_t probe = first;
  while (probe < last && cum[probe] - cum[first] < p.gamma) ++probe;
  const Point probe_pt = c.pixels[probe];
  const Point start = c.pixels[first];
  if (squared_distance(probe_pt, start) < kPointEps * kPointEps) return EdgeKind::Line;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i <= last; ++i) {
    if (cum[i] - cum[first] < 2.0 * p.gamma) continue;
    if (squared_distance(c.pixels[i], probe_pt) < kPointEps * kPointEps) continue;
    const double a = angle_at(probe_pt, start, c.pixels[i]);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  if (!(hi >= lo)) return EdgeKind::Line;  // no usable sample
  return (hi - lo) <= p.line_angle_spread_max ? EdgeKind::Line : EdgeKind::Curve;
}

Point max_distance_point(const PixelChain& c) {
  const Point start = c.pixels.front();
  Point best = start;
  double best_d = -1.0;
  for (const Point& px : c.pixels) {
    const double d = squared_distance(start, px);
    if (d > best_d + kPointEps) {
      best_d = d;
      best = px;
    }
  }
  return best;
}

namespace {

// Interior angles below this split a curve-classified chain in two.
constexpr double kCornerSplitDeg = 120.0;

// Splits a curve-classified chain at its sharpest interior corner. The two
// directions are measured on windows that exclude the rounded corner core
// itself (thinning smears real corners over a few pixels), so a genuine
// bend reads near its true angle while staircase terraces read straight.
void split_sharp_corners(PixelChain chain, const Params& p, std::vector<PixelChain>& out) {
  if (classify_chain(chain, p) == EdgeKind::Line) {
    out.push_back(std::move(chain));
    return;
  }
  const double core = 0.75 * p.gamma;
  const double window = 2.0 * p.gamma;
  const std::vector<double> cum = arc_lengths(chain.pixels);
  const std::size_t n = chain.pixels.size();
  double sharpest = kCornerSplitDeg;
  std::size_t corner = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (cum[i] < window || cum.back() - cum[i] < window) continue;
    std::size_t b1 = i, b2 = i, f1 = i, f2 = i;
    while (b1 > 0 && cum[i] - cum[b1] < core) --b1;
    while (b2 > 0 && cum[i] - cum[b2] < window) --b2;
    while (f1 + 1 < n && cum[f1] - cum[i] < core) ++f1;
    while (f2 + 1 < n && cum[f2] - cum[i] < window) ++f2;
    const double ux = chain.pixels[b1].x - chain.pixels[b2].x;
    const double uy = chain.pixels[b1].y - chain.pixels[b2].y;
    const double vx = chain.pixels[f2].x - chain.pixels[f1].x;
    const double vy = chain.pixels[f2].y - chain.pixels[f1].y;
    const double lu = std::sqrt(ux * ux + uy * uy);
    const double lv = std::sqrt(vx * vx + vy * vy);
    if (lu < kPointEps || lv < kPointEps) continue;
    const double cosv = std::clamp((ux * vx + uy * vy) / (lu * lv), -1.0, 1.0);
    const double turn = std::acos(cosv) * 180.0 / 3.14159265358979323846;
    const double a = 180.0 - turn;  // interior angle at the bend
    if (a < sharpest) {
      sharpest = a;
      corner = i;
    }
  }
  if (corner == 0) {
    out.push_back(std::move(chain));
    return;
  }
  PixelChain head, tail;
  head.pixels.assign(chain.pixels.begin(), chain.pixels.begin() + corner + 1);
  head.from_vertex = head.pixels.front();
  head.to_vertex = head.pixels.back();
  tail.pixels.assign(chain.pixels.begin() + corner, chain.pixels.end());
  tail.from_vertex = tail.pixels.front();
  tail.to_vertex = tail.pixels.back();
  split_sharp_corners(std::move(head), p, out);
  split_sharp_corners(std::move(tail), p, out);
}

struct VertexCluster {
  double x = 0.0;
  double y = 0.0;
  int weight = 0;
  std::vector<int> seeds;  // indices into the seed list
};

}  // namespace

Glyph extract_graph(const BinaryRaster& r, const Params& p) {
  p.validate();
  if (r.ink_count() == 0) throw EmptyImage("no ink to extract");

  const std::vector<Point> nodes = find_nodes(r);
  std::vector<PixelChain> raw = trace_chains(r, nodes);
  std::vector<PixelChain> chains;
  chains.reserve(raw.size());
  for (PixelChain& c : raw) split_sharp_corners(std::move(c), p, chains);

  // Vertex seeds are the chain endpoints. Seeds that touch each other are
  // junction blobs left by thinning; collapse them to their centroid first.
  std::vector<Point> seeds;
  auto seed_index = [&](Point pt) {
    for (std::size_t i = 0; i < seeds.size(); ++i)
      if (squared_distance(seeds[i], pt) < kPointEps * kPointEps) return static_cast<int>(i);
    seeds.push_back(pt);
    return static_cast<int>(seeds.size() - 1);
  };
  std::vector<std::pair<int, int>> chain_ends;
  chain_ends.reserve(chains.size());
  for (const PixelChain& c : chains)
    chain_ends.emplace_back(seed_index(c.from_vertex), seed_index(c.to_vertex));

  std::vector<VertexCluster> clusters;
  std::vector<int> seed_cluster(seeds.size(), -1);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    int joined = -1;
    for (std::size_t ci = 0; ci < clusters.size() && joined < 0; ++ci)
      for (int s : clusters[ci].seeds) {
        const double dx = std::abs(seeds[i].x - seeds[s].x);
        const double dy = std::abs(seeds[i].y - seeds[s].y);
        if (dx <= 1.0 + kPointEps && dy <= 1.0 + kPointEps) {
          joined = static_cast<int>(ci);
          break;
        }
      }
    if (joined < 0) {
      clusters.push_back({});
      joined = static_cast<int>(clusters.size() - 1);
    }
    clusters[joined].seeds.push_back(static_cast<int>(i));
    seed_cluster[i] = joined;
  }
  for (VertexCluster& c : clusters) {
    for (int s : c.seeds) {
      c.x += seeds[s].x;
      c.y += seeds[s].y;
    }
    c.weight = static_cast<int>(c.seeds.size());
    c.x /= c.weight;
    c.y /= c.weight;
  }

  // Merge the closest cluster pair until every pair is at least beta apart.
  while (clusters.size() > 1) {
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < clusters.size(); ++a)
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        const double dx = clusters[a].x - clusters[b].x;
        const double dy = clusters[a].y - clusters[b].y;
        const double d = dx * dx + dy * dy;
        if (d < best_d) {
          best_d = d;
          ba = a;
          bb = b;
        }
      }
    if (best_d >= p.beta * p.beta) break;
    VertexCluster& a = clusters[ba];
    VertexCluster& b = clusters[bb];
    const int w = a.weight + b.weight;
    a.x = (a.x * a.weight + b.x * b.weight) / w;
    a.y = (a.y * a.weight + b.y * b.weight) / w;
    a.weight = w;
    a.seeds.insert(a.seeds.end(), b.seeds.begin(), b.seeds.end());
    clusters.erase(clusters.begin() + bb);
  }

  std::vector<int> order(clusters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(clusters[a].y, clusters[a].x) < std::pair(clusters[b].y, clusters[b].x);
  });
  std::vector<int> cluster_rank(clusters.size());
  for (std::size_t i = 0; i < order.size(); ++i) cluster_rank[order[i]] = static_cast<int>(i);

  Glyph g;
  g.vertices.reserve(clusters.size());
  for (int ci : order)
    g.vertices.push_back(Point{static_cast<float>(clusters[ci].x),
                               static_cast<float>(clusters[ci].y)});

  std::vector<int> seed_vertex(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    int cluster = seed_cluster[i];
    // A seed may have been merged away; find the surviving cluster owning it.
    for (std::size_t ci = 0; ci < clusters.size(); ++ci)
      for (int s : clusters[ci].seeds)
        if (s == static_cast<int>(i)) cluster = static_cast<int>(ci);
    seed_vertex[i] = cluster_rank[cluster];
  }

  // A stroke may brush a junction without sharing a pixel with it (strands
  // can cross between pixels); split any chain that passes hard by another
  // vertex so both rounds of extraction see the same incidences.
  struct BoundChain {
    PixelChain chain;
    int vi;
    int vj;
  };
  std::vector<BoundChain> final_chains;
  std::vector<BoundChain> work;
  work.reserve(chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i)
    work.push_back({std::move(chains[i]), seed_vertex[chain_ends[i].first],
                    seed_vertex[chain_ends[i].second]});
  while (!work.empty()) {
    BoundChain bc = std::move(work.back());
    work.pop_back();
    const std::vector<double> cum = arc_lengths(bc.chain.pixels);
    const double margin = 3.0;
    int split_at = -1;
    int split_vertex = -1;
    for (std::size_t i = 1; i + 1 < bc.chain.pixels.size() && split_at < 0; ++i) {
      if (cum[i] < margin || cum.back() - cum[i] < margin) continue;
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (static_cast<int>(v) == bc.vi || static_cast<int>(v) == bc.vj) continue;
        if (squared_distance(bc.chain.pixels[i], g.vertices[v]) <= 4.0) {
          split_at = static_cast<int>(i);
          split_vertex = static_cast<int>(v);
          break;
        }
      }
    }
    if (split_at < 0) {
      final_chains.push_back(std::move(bc));
      continue;
    }
    BoundChain head, tail;
    head.chain.pixels.assign(bc.chain.pixels.begin(), bc.chain.pixels.begin() + split_at + 1);
    head.chain.from_vertex = head.chain.pixels.front();
    head.chain.to_vertex = head.chain.pixels.back();
    head.vi = bc.vi;
    head.vj = split_vertex;
    tail.chain.pixels.assign(bc.chain.pixels.begin() + split_at, bc.chain.pixels.end());
    tail.chain.from_vertex = tail.chain.pixels.front();
    tail.chain.to_vertex = tail.chain.pixels.back();
    tail.vi = split_vertex;
    tail.vj = bc.vj;
    work.push_back(std::move(head));
    work.push_back(std::move(tail));
  }
  // Restore a deterministic order after the worklist shuffling.
  std::sort(final_chains.begin(), final_chains.end(), [](const BoundChain& a, const BoundChain& b) {
    if (a.vi != b.vi) return a.vi < b.vi;
    if (a.vj != b.vj) return a.vj < b.vj;
    return a.chain.pixels.size() < b.chain.pixels.size();
  });

  auto edge_slot_used = [&](int a, int b, EdgeKind kind) {
    for (const Edge& e : g.edges) {
      const int ea = vertex_index_near(g, e.start);
      const int eb = vertex_index_near(g, e.end);
      if (e.kind != kind) continue;
      if ((ea == a && eb == b) || (ea == b && eb == a)) return true;
    }
    return false;
  };

  for (const BoundChain& bc : final_chains) {
    const PixelChain& c = bc.chain;
    const int vi = bc.vi;
    const int vj = bc.vj;
    const std::vector<double> cum = arc_lengths(c.pixels);
    if (vi == vj && cum.back() < 2.0 * p.gamma) continue;  // junction-blob loop
    if (c.pixels.size() < 2) continue;
    const EdgeKind kind = classify_chain(c, p);
    if (edge_slot_used(vi, vj, kind)) continue;
    const Point start = g.vertices[vi];
    const Point end = g.vertices[vj];
    if (kind == EdgeKind::Line) {
      g.edges.push_back(line_edge(start, end));
    } else {
      Point max = max_distance_point(c);
      if (squared_distance(start, max) <
          squared_distance(start, end) - kPointEps) {
        max = end;  // vertex dedup moved the end beyond every traced pixel
      }
      g.edges.push_back(curve_edge(start, end, max));
    }
  }
  canonicalize(g);
  return g;
}

}  // namespace glyphga
