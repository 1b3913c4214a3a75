#pragma once

// Template side of every density computation: loopless multigraphs with
// stable edge ids, (rainbow) pre-colorings, trees, leaf-stars.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  EdgeId id = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Loopless multigraph on vertices 0..n-1. Parallel edges are allowed and
// distinguished by their ids; parallel classes are derived on demand.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n);

  // Adds u-v. Without an explicit id the next unused id is taken.
  // Throws ValidationError on loops, out-of-range endpoints, duplicate ids.
  EdgeId add_edge(Vertex u, Vertex v, std::optional<EdgeId> id = std::nullopt);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  // Insertion order.
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const;
  bool has_edge_id(EdgeId id) const;
  // Position of an edge id in edges().
  int edge_index(EdgeId id) const;

  // Sorted by (min endpoint, max endpoint, insertion rank).
  std::vector<Edge> canonical_edges() const;
  // Unordered pair (min,max) -> ids of the parallel class, insertion order.
  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> parallel_classes() const;
  // Distinct neighbours of v in sim(H), ascending.
  std::vector<Vertex> neighbors(Vertex v) const;
  int simple_degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  bool is_simple() const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Partial edge coloring psi: dom(psi) -> [k]. Injective on every parallel
// class; additionally injective on its whole domain when `rainbow`.
struct PreColoring {
  int k = 0;
  std::map<EdgeId, Color> assignments;
  bool rainbow = true;

  std::optional<Color> color_of(EdgeId id) const;
  bool is_total(const Multigraph& H) const;
  // Throws ValidationError if psi is not a valid pre-coloring of H.
  void validate(const Multigraph& H) const;
  friend bool operator==(const PreColoring&, const PreColoring&) = default;
};

// Color set of each adjacent pair for a total coloring given edge-by-edge in
// H.edges() order.
struct PairColors {
  Vertex u = 0;
  Vertex v = 0;
  ColorSet colors = 0;
};
std::vector<PairColors> pair_color_sets(const Multigraph& H, std::span<const Color> edge_colors);

// Colors of psi laid out in H.edges() order; 0 marks an uncolored edge.
std::vector<Color> coloring_vector(const Multigraph& H, const PreColoring& psi);

// sim(H): one edge per adjacent pair, ids 0.. in canonical order.
Multigraph simplify(const Multigraph& H);

// Visits every total injective coloring E(H) -> [k] extending psi, in
// lexicographic order of the per-edge color vector (H.edges() order).
// The callback may return false to stop early.
void for_each_rainbow_extension(const Multigraph& H, const PreColoring& psi, int k,
                                const std::function<bool(std::span<const Color>)>& visit);
std::vector<PreColoring> enumerate_rainbow_extensions(const Multigraph& H, const PreColoring& psi,
                                                      int k);
// (k - |dom psi|)(k - |dom psi| - 1) ... (k - |E(H)| + 1); 0 if |E(H)| > k.
long long rainbow_extension_count(int edges, int fixed, int k);

bool is_connected(const Multigraph& H);
// Simple, connected, |E| = |V| - 1.
bool is_tree(const Multigraph& H);
// sim(H) is a tree (parallel edges permitted).
bool is_tree_support(const Multigraph& H);
// sim(H) is a forest.
bool is_forest_support(const Multigraph& H);
// A tree with a vertex adjacent to every other vertex (includes K_1, K_2).
bool is_star(const Multigraph& T);

struct LeafStar {
  Vertex center = 0;
  Vertex anchor = 0;
  std::vector<Vertex> leaves;
  int size() const { return static_cast<int>(leaves.size()); }
  friend bool operator==(const LeafStar&, const LeafStar&) = default;
};

// Every (anchor, center)-leaf-star of a simple tree that is not a star:
// all neighbours of the center other than the anchor are leaves of T.
// Ordered by center. Throws ValidationError for non-trees and stars.
std::vector<LeafStar> find_leaf_stars(const Multigraph& T);

struct RootedTree {
  Multigraph tree;
  Vertex root = 0;
  // local vertex -> vertex of the original tree
  std::vector<Vertex> original;
};

// T - e as (component containing e.u rooted at e.u, component containing
// e.v rooted at e.v). Edge ids are preserved, vertices are relabelled densely.
std::pair<RootedTree, RootedTree> split_tree_at_edge(const Multigraph& T, EdgeId e);

// chi(sim(G)); exact branch and bound, |V| <= 12.
int chromatic_number(const Multigraph& G);

}  // namespace rainbow
