#pragma once

// Backtracking embeddings of a pre-colored multigraph into a graph system,
// shared by copy counting and copy search.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/graphon.hpp"

namespace rainbow::detail {

// Backtracking embedding of H into G; `on_embedding` receives the vertex map
// and is called once per injective map whose pairs can host the classes.
class Embedder {
 public:
  Embedder(const GraphSystem& G, const Multigraph& H, const PreColoring& psi)
      : G_(G), H_(H), classes_(H.parallel_classes()) {
    psi.validate(H);
    require(psi.rainbow, "rainbow copies need a rainbow pre-coloring");
    for (const auto& [c_id, c] : psi.assignments)
      require(c >= 1 && c <= G.colors(), "color outside [1,k]");
    const int n = H.vertex_count();
    need_.assign(std::size_t(n) * n, -1);
    fixed_.assign(std::size_t(n) * n, 0);
    int idx = 0;
    for (const auto& [p, ids] : classes_) {
      need_[p.first * n + p.second] = need_[p.second * n + p.first] = idx++;
      ColorSet f = 0;
      for (EdgeId id : ids)
        if (auto c = psi.color_of(id)) f |= color_bit(*c);
      fixed_[p.first * n + p.second] = fixed_[p.second * n + p.first] = f;
      sizes_.push_back(static_cast<int>(ids.size()));
      free_count_.push_back(static_cast<int>(ids.size()) - set_size(f));
      all_fixed_ |= f;
    }
    psi_ = psi;
    host_colors_.assign(G.vertex_count(), 0);
    for (int x = 0; x < G.vertex_count(); ++x)
      for (int y = 0; y < G.vertex_count(); ++y) host_colors_[x] |= G.pair_colors(x, y);
    // Highest degree first, then neighbours of placed vertices.
    std::vector<Vertex> rest(n);
    std::iota(rest.begin(), rest.end(), 0);
    while (!rest.empty()) {
      auto score = [&](Vertex v) {
        int placed_nb = 0;
        for (Vertex w : order_)
          if (need_[v * n + w] >= 0) ++placed_nb;
        return std::pair{placed_nb, H.simple_degree(v)};
      };
      auto best = std::max_element(rest.begin(), rest.end(),
                                   [&](Vertex a, Vertex b) { return score(a) < score(b); });
      order_.push_back(*best);
      rest.erase(best);
    }
  }

  template <class F>
  void run(F&& on_embedding) {
    map_.assign(H_.vertex_count(), -1);
    used_.assign(G_.vertex_count(), 0);
    place(0, on_embedding);
  }

  const std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>>& classes() const { return classes_; }
  const PreColoring& psi() const { return psi_; }
  const std::vector<int>& map() const { return map_; }

 private:
  template <class F>
  bool place(std::size_t depth, F& on_embedding) {
    const int n = H_.vertex_count();
    if (depth == order_.size()) return on_embedding(map_);
    const Vertex v = order_[depth];
    for (int x = 0; x < G_.vertex_count(); ++x) {
      if (used_[x]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const Vertex w = order_[d];
        const int cls = need_[v * n + w];
        if (cls < 0) continue;
        const ColorSet host = G_.pair_colors(x, map_[w]);
        ok = set_size(host) >= sizes_[cls] && is_subset(fixed_[v * n + w], host);
      }
      if (!ok) continue;
      used_[x] = 1;
      map_[v] = x;
      if (!colorable(depth + 1)) {
        map_[v] = -1;
        used_[x] = 0;
        continue;
      }
      const bool go_on = place(depth + 1, on_embedding);
      map_[v] = -1;
      used_[x] = 0;
      if (!go_on) return false;
    }
    return true;
  }

  // Whether the free edges at the first `depth` placed vertices can still
  // take distinct colors (an edge to an unplaced vertex may use any color
  // present at the placed end). Tracks the reachable used-color sets.
  bool colorable(std::size_t depth) {
    const int n = H_.vertex_count();
    const std::size_t states = std::size_t{1} << G_.colors();
    reach_.assign(states, 0);
    reach_[0] = 1;
    auto add = [&](ColorSet avail, int count) {
      for (int r = 0; r < count; ++r) {
        next_.assign(states, 0);
        bool alive = false;
        for (std::size_t S = 0; S < states; ++S) {
          if (!reach_[S]) continue;
          for (ColorSet rest = avail & ~static_cast<ColorSet>(S); rest; rest &= rest - 1) {
            next_[S | (rest & (~rest + 1))] = 1;
            alive = true;
          }
        }
        if (!alive) return false;
        reach_.swap(next_);
      }
      return true;
    };
    for (std::size_t i = 0; i < depth; ++i) {
      const Vertex a = order_[i];
      for (Vertex b = 0; b < n; ++b) {
        const int cls = need_[a * n + b];
        if (cls < 0 || !free_count_[cls]) continue;
        ColorSet avail;
        if (map_[b] < 0) {
          avail = host_colors_[map_[a]];
        } else if (std::find(order_.begin(), order_.begin() + i, b) != order_.begin() + i) {
          avail = G_.pair_colors(map_[a], map_[b]);
        } else {
          continue;  // counted from the later endpoint
        }
        if (!add(avail & ~all_fixed_, free_count_[cls])) return false;
      }
    }
    return true;
  }

  const GraphSystem& G_;
  const Multigraph& H_;
  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> classes_;
  std::vector<int> need_;
  std::vector<ColorSet> fixed_;
  std::vector<int> sizes_;
  std::vector<int> free_count_;
  ColorSet all_fixed_ = 0;
  std::vector<ColorSet> host_colors_;
  std::vector<char> reach_, next_;
  std::vector<Vertex> order_;
  std::vector<int> map_;
  std::vector<char> used_;
  PreColoring psi_;
};

// Enumerates injective color assignments of H's edges consistent with psi
// and the host pairs under `map`, fewest-candidates edges first. visit
// receives colors in H.edges() order and returns false to stop; the return
// value is false iff some visit stopped the walk.
template <class F>
bool for_each_host_coloring(const GraphSystem& G, const Multigraph& H, const PreColoring& psi,
                            const std::vector<int>& map, F&& visit) {
  const int E = H.edge_count();
  std::vector<Color> colors = coloring_vector(H, psi);
  ColorSet used = 0;
  for (int i = 0; i < E; ++i) {
    if (!colors[i]) continue;
    const Edge& e = H.edges()[i];
    if (!G.has_edge(colors[i], map[e.u], map[e.v])) return true;
    used |= color_bit(colors[i]);
  }
  std::vector<int> free_edges;
  for (int i = 0; i < E; ++i)
    if (!colors[i]) free_edges.push_back(i);
  auto candidates = [&](int i) {
    const Edge& e = H.edges()[i];
    return set_size(G.pair_colors(map[e.u], map[e.v]) & ~used);
  };
  std::stable_sort(free_edges.begin(), free_edges.end(),
                   [&](int a, int b) { return candidates(a) < candidates(b); });
  bool go_on = true;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == free_edges.size()) {
      go_on = visit(colors);
      return;
    }
    const Edge& e = H.edges()[free_edges[pos]];
    const ColorSet avail = G.pair_colors(map[e.u], map[e.v]) & ~used;
    for (Color c = 1; c <= G.colors() && go_on; ++c) {
      if (!(avail & color_bit(c))) continue;
      used |= color_bit(c);
      colors[free_edges[pos]] = c;
      self(self, pos + 1);
      used &= ~color_bit(c);
    }
    colors[free_edges[pos]] = 0;
  };
  rec(rec, 0);
  return go_on;
}

}  // namespace rainbow::detail
