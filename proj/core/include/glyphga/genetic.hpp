#pragma once

#include <optional>
#include <random>
#include <vector>

#include "glyphga/deviation.hpp"
#include "glyphga/geometry.hpp"

namespace glyphga {

// Accumulating a fourth edge between one vertex pair.
struct IllegalMultiEdge : Error {
  using Error::Error;
};

// An edge removal/addition would corrupt the adjacency encoding; the
// offspring under construction is abandoned.
struct OperationBroken : Error {
  using Error::Error;
};

// Adjacency cell outside the 0..3 encoding.
struct IllegalState : Error {
  using Error::Error;
};

struct EmptyTemplates : Error {
  using Error::Error;
};

// Symmetric vertex-pair connectivity codes: 0 none, 1 line, 2 curve,
// 3 line and curve.
struct AdjacencyMatrix {
  int n = 0;
  std::vector<std::uint8_t> w;

  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(int size) : n(size), w(static_cast<std::size_t>(size) * size, 0) {}

  std::uint8_t at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
  void set_sym(int i, int j, std::uint8_t v) {
    w[static_cast<std::size_t>(i) * n + j] = v;
    w[static_cast<std::size_t>(j) * n + i] = v;
  }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;
};

// Greedy nearest-pair matching of two vertex sets. Unmatched vertices carry
// over verbatim and are later transplanted into the other graph.
struct MatchAssignment {
  std::vector<std::pair<int, int>> pairs;  // (g1 vertex index, g2 vertex index)
  std::vector<int> unmatched_g1;
  std::vector<int> unmatched_g2;
};

// One stored simple path per (from, to, length) slot, picked uniformly when
// several last-hop candidates exist.
struct PathTable {
  int n = 0;
  int max_len = 0;
  std::vector<std::vector<int>> slots;  // ((i * n) + j) * max_len + (l - 1)

  const std::vector<int>& path(int i, int j, int l) const {
    return slots[(static_cast<std::size_t>(i) * n + j) * max_len + (l - 1)];
  }
  // F(i,j,l): the vertex preceding j on the stored path, if any.
  std::optional<int> predecessor(int i, int j, int l) const {
    const std::vector<int>& p = path(i, j, l);
    if (p.empty()) return std::nullopt;
    return p[p.size() - 2];
  }
};

struct Lineage {
  int parent_a = 0;
  int parent_b = 0;
  int splice_from = -1;  // unified vertex indices; -1 for the no-splice mean graph
  int splice_to = -1;
  int removed_len = 0;
  int added_len = 0;
};

struct Offspring {
  Glyph glyph;
  Lineage lineage;
};

struct CrossoverResult {
  std::vector<Offspring> offspring;
  int aborted = 0;  // splice attempts dropped by OperationBroken
};

MatchAssignment match_points(const Glyph& g1, const Glyph& g2, const Params& p);

// +1 per line and +2 per curve between the endpoints' vertex indices,
// mirrored. Throws IllegalMultiEdge past code 3.
AdjacencyMatrix generate_adjacency(const Glyph& g);

// Fills every (i, j, l) slot for l = 1..max_path_len with a simple path when
// one exists; rng breaks ties among candidate last hops uniformly.
PathTable find_paths(const AdjacencyMatrix& w, const Params& p, std::mt19937_64& rng);

// The stored l-edge path from i to j, or nullopt.
std::optional<std::vector<int>> reconstruct_path(const PathTable& t, int i, int j, int l);

// Removes one edge between i and j, the kind chosen by rng when both are
// present. Throws OperationBroken on an empty cell, IllegalState past 3.
EdgeKind remove_edge(AdjacencyMatrix& w, int i, int j, std::mt19937_64& rng);

// Adds an edge of the given kind; duplicating a kind (or exceeding code 3)
// throws OperationBroken.
void add_edge(AdjacencyMatrix& w, int i, int j, EdgeKind kind);

// Rebuilds a Glyph from an adjacency matrix over the unified vertex space of
// g1, g2 and their match: matched vertices average, unmatched pass through,
// curve max points are carried from the matching parent edge and translated
// with the mean shift of its endpoints.
Glyph make_graph(const AdjacencyMatrix& w, const Glyph& g1, const Glyph& g2,
                 const MatchAssignment& m);

// All splice offspring for one parent pair: for every unified vertex pair
// and every length combination with existing, distinct paths, the g1 path is
// removed and the g2 path inserted. When the parents share their adjacency
// structure, or no splice survives, the plain vertex-mean graph is emitted.
CrossoverResult crossover(const Glyph& g1, const Glyph& g2, const Params& p,
                          std::mt19937_64& rng, int parent_a = 0, int parent_b = 1);

struct EvolveResult {
  Deviation best = 0.0;
  Glyph best_glyph;
};

// Per-character evolution: all-pairs crossover over the pool each round,
// offspring scored against the input, pool truncated to the best pool_cap,
// early stop after three stagnant generations. The returned best tracks
// every glyph ever scored, so it never exceeds the best template deviation.
// Throws EmptyTemplates.
EvolveResult evolve_pool(const std::vector<Glyph>& templates, const Glyph& input,
                         const Params& p, std::mt19937_64& rng);

}  // namespace glyphga
