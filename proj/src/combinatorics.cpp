#include "rainbow/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

Multigraph::Multigraph(int n) : n_(n) { require(n >= 0, "negative vertex count"); }

EdgeId Multigraph::add_edge(Vertex u, Vertex v, std::optional<EdgeId> id) {
  require(u >= 0 && u < n_ && v >= 0 && v < n_,
          "edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
  require(u != v, "loop at vertex " + std::to_string(u));
  EdgeId eid = 0;
  if (id) {
    eid = *id;
    require(!has_edge_id(eid), "duplicate edge id " + std::to_string(eid));
  } else {
    for (const Edge& e : edges_) eid = std::max(eid, e.id + 1);
  }
  edges_.push_back({u, v, eid});
  return eid;
}

bool Multigraph::has_edge_id(EdgeId id) const {
  return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.id == id; });
}

int Multigraph::edge_index(EdgeId id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return static_cast<int>(i);
  throw ValidationError("unknown edge id " + std::to_string(id));
}

const Edge& Multigraph::edge(EdgeId id) const { return edges_[edge_index(id)]; }

std::vector<Edge> Multigraph::canonical_edges() const {
  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) {
    const Edge& e = edges_[i];
    return std::tuple(std::min(e.u, e.v), std::max(e.u, e.v), i);
  };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
  std::vector<Edge> out;
  out.reserve(order.size());
  for (auto i : order) out.push_back(edges_[i]);
  return out;
}

std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> Multigraph::parallel_classes() const {
  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> classes;
  for (const Edge& e : edges_) classes[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(e.id);
  return classes;
}

std::vector<Vertex> Multigraph::neighbors(Vertex v) const {
  std::set<Vertex> nb;
  for (const Edge& e : edges_) {
    if (e.u == v) nb.insert(e.v);
    if (e.v == v) nb.insert(e.u);
  }
  return {nb.begin(), nb.end()};
}

bool Multigraph::is_simple() const {
  auto classes = parallel_classes();
  return std::all_of(classes.begin(), classes.end(), [](const auto& kv) { return kv.second.size() == 1; });
}

std::optional<Color> PreColoring::color_of(EdgeId id) const {
  auto it = assignments.find(id);
  if (it == assignments.end()) return std::nullopt;
  return it->second;
}

bool PreColoring::is_total(const Multigraph& H) const {
  return std::all_of(H.edges().begin(), H.edges().end(),
                     [&](const Edge& e) { return assignments.count(e.id) == 1; });
}

void PreColoring::validate(const Multigraph& H) const {
  require(k >= 0 && k <= kMaxColors, "color count must lie in [0," + std::to_string(kMaxColors) + "]");
  for (const auto& [id, c] : assignments) {
    require(H.has_edge_id(id), "pre-coloring names unknown edge id " + std::to_string(id));
    require(c >= 1 && c <= k, "color " + std::to_string(c) + " outside [1," + std::to_string(k) + "]");
  }
  for (const auto& [pair, ids] : H.parallel_classes()) {
    ColorSet seen = 0;
    for (EdgeId id : ids) {
      auto c = color_of(id);
      if (!c) continue;
      require(!(seen & color_bit(*c)), "pre-coloring repeats a color on a parallel class");
      seen |= color_bit(*c);
    }
  }
  if (rainbow) {
    ColorSet seen = 0;
    for (const auto& [id, c] : assignments) {
      require(!(seen & color_bit(c)), "rainbow pre-coloring repeats color " + std::to_string(c));
      seen |= color_bit(c);
    }
  }
}

std::vector<PairColors> pair_color_sets(const Multigraph& H, std::span<const Color> edge_colors) {
  require(edge_colors.size() == H.edges().size(), "coloring size does not match edge count");
  std::map<std::pair<Vertex, Vertex>, ColorSet> acc;
  for (std::size_t i = 0; i < edge_colors.size(); ++i) {
    const Edge& e = H.edges()[i];
    require(edge_colors[i] >= 1, "coloring is not total");
    acc[{std::min(e.u, e.v), std::max(e.u, e.v)}] |= color_bit(edge_colors[i]);
  }
  std::vector<PairColors> out;
  out.reserve(acc.size());
  for (const auto& [p, s] : acc) out.push_back({p.first, p.second, s});
  return out;
}

std::vector<Color> coloring_vector(const Multigraph& H, const PreColoring& psi) {
  std::vector<Color> out(H.edges().size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (auto c = psi.color_of(H.edges()[i].id)) out[i] = *c;
  return out;
}

Multigraph simplify(const Multigraph& H) {
  Multigraph out(H.vertex_count());
  for (const auto& [pair, ids] : H.parallel_classes()) out.add_edge(pair.first, pair.second);
  return out;
}

void for_each_rainbow_extension(const Multigraph& H, const PreColoring& psi, int k,
                                const std::function<bool(std::span<const Color>)>& visit) {
  const int E = H.edge_count();
  if (E > k) return;
  std::vector<Color> colors = coloring_vector(H, psi);
  ColorSet used = 0;
  for (Color c : colors)
    if (c) used |= color_bit(c);
  std::vector<int> free_edges;
  for (int i = 0; i < E; ++i)
    if (!colors[i]) free_edges.push_back(i);

  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (stop) return;
    if (pos == free_edges.size()) {
      if (!visit(colors)) stop = true;
      return;
    }
    for (Color c = 1; c <= k && !stop; ++c) {
      if (used & color_bit(c)) continue;
      used |= color_bit(c);
      colors[free_edges[pos]] = c;
      rec(pos + 1);
      used &= ~color_bit(c);
    }
    colors[free_edges[pos]] = 0;
  };
  rec(0);
}

std::vector<PreColoring> enumerate_rainbow_extensions(const Multigraph& H, const PreColoring& psi,
                                                      int k) {
  require(psi.rainbow, "extensions are defined for rainbow pre-colorings");
  psi.validate(H);
  std::vector<PreColoring> out;
  for_each_rainbow_extension(H, psi, k, [&](std::span<const Color> colors) {
    PreColoring ext{k, {}, true};
    for (std::size_t i = 0; i < colors.size(); ++i) ext.assignments[H.edges()[i].id] = colors[i];
    out.push_back(std::move(ext));
    return true;
  });
  return out;
}

long long rainbow_extension_count(int edges, int fixed, int k) {
  if (edges > k) return 0;
  long long c = 1;
  for (int j = fixed; j < edges; ++j) c *= (k - j);
  return c;
}

bool is_connected(const Multigraph& H) {
  const int n = H.vertex_count();
  if (n <= 1) return true;
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : H.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
  }
  return count == n;
}

bool is_forest_support(const Multigraph& H) {
  // Union-find over the simple support.
  std::vector<int> parent(H.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [pair, ids] : H.parallel_classes()) {
    int a = find(pair.first), b = find(pair.second);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool is_tree_support(const Multigraph& H) {
  return H.vertex_count() >= 1 && is_forest_support(H) && is_connected(H);
}

bool is_tree(const Multigraph& H) { return H.is_simple() && is_tree_support(H); }

bool is_star(const Multigraph& T) {
  if (!is_tree(T)) return false;
  const int n = T.vertex_count();
  if (n <= 2) return true;
  for (Vertex v = 0; v < n; ++v)
    if (T.simple_degree(v) == n - 1) return true;
  return false;
}

std::vector<LeafStar> find_leaf_stars(const Multigraph& T) {
  require(is_tree(T), "leaf-stars are defined for simple trees");
  require(!is_star(T), "star trees have no leaf-stars; handle them separately");
  const int n = T.vertex_count();
  std::vector<int> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = T.simple_degree(v);
  std::vector<LeafStar> out;
  for (Vertex v = 0; v < n; ++v) {
    if (deg[v] < 2) continue;
    std::vector<Vertex> non_leaves, leaves;
    for (Vertex w : T.neighbors(v)) (deg[w] == 1 ? leaves : non_leaves).push_back(w);
    // T is not a star, so some neighbour of v is not a leaf.
    if (non_leaves.size() == 1) out.push_back({v, non_leaves.front(), leaves});
  }
  return out;
}

namespace {

RootedTree component_from(const Multigraph& T, Vertex root, EdgeId removed) {
  const int n = T.vertex_count();
  std::vector<std::vector<std::pair<Vertex, int>>> adj(n);
  for (int i = 0; i < T.edge_count(); ++i) {
    const Edge& e = T.edges()[i];
    if (e.id == removed) continue;
    adj[e.u].push_back({e.v, i});
    adj[e.v].push_back({e.u, i});
  }
  std::vector<int> local(n, -1);
  std::vector<Vertex> order{root};
  local[root] = 0;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (auto [y, i] : adj[order[head]])
      if (local[y] < 0) {
        local[y] = static_cast<int>(order.size());
        order.push_back(y);
      }
  RootedTree rt{Multigraph(static_cast<int>(order.size())), 0, order};
  for (const Edge& e : T.edges()) {
    if (e.id == removed || local[e.u] < 0) continue;
    rt.tree.add_edge(local[e.u], local[e.v], e.id);
  }
  return rt;
}

}  // namespace

std::pair<RootedTree, RootedTree> split_tree_at_edge(const Multigraph& T, EdgeId e) {
  require(is_tree_support(T) && T.is_simple(), "split_tree_at_edge expects a simple tree");
  require(T.has_edge_id(e), "edge " + std::to_string(e) + " is not in the tree");
  const Edge& ed = T.edge(e);
  return {component_from(T, ed.u, e), component_from(T, ed.v, e)};
}

namespace {

bool colorable(const std::vector<std::vector<char>>& adj, const std::vector<Vertex>& order,
               std::vector<int>& color, std::size_t pos, int q) {
  if (pos == order.size()) return true;
  Vertex v = order[pos];
  int max_used = 0;
  for (std::size_t i = 0; i < pos; ++i) max_used = std::max(max_used, color[order[i]]);
  // Symmetry breaking: a vertex never opens a color index above max_used + 1.
  for (int c = 1; c <= std::min(q, max_used + 1); ++c) {
    bool ok = true;
    for (std::size_t i = 0; i < pos && ok; ++i)
      if (adj[v][order[i]] && color[order[i]] == c) ok = false;
    if (!ok) continue;
    color[v] = c;
    if (colorable(adj, order, color, pos + 1, q)) return true;
  }
  color[v] = 0;
  return false;
}

}  // namespace

int chromatic_number(const Multigraph& G) {
  const int n = G.vertex_count();
  require_scale(n <= 12, "chromatic_number is exhaustive and limited to 12 vertices");
  if (n == 0) return 0;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  bool any_edge = false;
  for (const Edge& e : G.edges()) {
    adj[e.u][e.v] = adj[e.v][e.u] = 1;
    any_edge = true;
  }
  if (!any_edge) return 1;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return std::count(adj[a].begin(), adj[a].end(), 1) > std::count(adj[b].begin(), adj[b].end(), 1);
  });
  std::vector<int> color(n, 0);
  for (int q = 2; q <= n; ++q)
    if (colorable(adj, order, color, 0, q)) return q;
  return n;
}

}  // namespace rainbow
