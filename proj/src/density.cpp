#include "rainbow/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include <Eigen/Dense>

#include "embed.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/simd/kernels.hpp"

namespace rainbow {
namespace {

struct Adjacent {
  Vertex to;
  const Table* table;
};

bool pairs_form_forest(int n, const std::vector<PairColors>& pairs) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const PairColors& p : pairs) {
    const int a = find(p.u), b = find(p.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::vector<std::vector<Adjacent>> adjacency(int n, const std::vector<PairColors>& pairs,
                                             const StepGraphonSystem& W) {
  std::vector<std::vector<Adjacent>> adj(n);
  for (const PairColors& p : pairs) {
    const Table* t = &W.block(p.colors);
    adj[p.u].push_back({p.v, t});
    adj[p.v].push_back({p.u, t});
  }
  return adj;
}

// Leaf-to-root DP over the component of `root`; returns the per-part value
// with the root pinned to each part. Marks visited vertices.
std::vector<double> rooted_vector(Vertex root, const std::vector<std::vector<Adjacent>>& adj,
                                  const StepGraphonSystem& W, std::vector<char>& seen) {
  const int m = W.parts();
  const double* sizes = W.sizes().data();
  std::vector<Vertex> order{root};
  std::vector<Vertex> parent(adj.size(), -1);
  std::vector<const Table*> up(adj.size(), nullptr);
  seen[root] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const Adjacent& a : adj[order[i]])
      if (!seen[a.to]) {
        seen[a.to] = 1;
        parent[a.to] = order[i];
        up[a.to] = a.table;
        order.push_back(a.to);
      }

  std::vector<std::vector<double>> f(adj.size());
  for (Vertex v : order) f[v].assign(m, 1.0);
  std::vector<double> h(m), g(m);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (parent[v] < 0) continue;
    simd::hadamard(sizes, f[v].data(), h.data(), m);
    simd::matvec(up[v]->data(), h.data(), g.data(), m, m);
    simd::hadamard(f[parent[v]].data(), g.data(), f[parent[v]].data(), m);
  }
  return std::move(f[root]);
}

double forest_integral(int n, const std::vector<PairColors>& pairs, const StepGraphonSystem& W) {
  const auto adj = adjacency(n, pairs, W);
  std::vector<char> seen(n, 0);
  double total = 1.0;
  for (Vertex v = 0; v < n; ++v) {
    if (seen[v]) continue;
    const std::vector<double> f = rooted_vector(v, adj, W, seen);
    total *= simd::dot(W.sizes().data(), f.data(), f.size());
  }
  return total;
}

// Direct sum over all part assignments; `tables` is an n x n matrix of
// factor pointers (null for absent pairs), upper triangle used.
double brute_force_integral(int n, const std::vector<const Table*>& tables,
                            const StepGraphonSystem& W) {
  const int m = W.parts();
  const auto& s = W.sizes();
  if (n == 0) return 1.0;
  std::vector<int> x(n, 0);
  long double total = 0.0L;
  while (true) {
    long double term = 1.0L;
    for (int u = 0; u < n && term != 0.0L; ++u) {
      term *= s[x[u]];
      for (int v = u + 1; v < n && term != 0.0L; ++v)
        if (const Table* t = tables[u * n + v]) term *= (*t)(x[u], x[v]);
    }
    total += term;
    int pos = n - 1;
    while (pos >= 0 && ++x[pos] == m) x[pos--] = 0;
    if (pos < 0) break;
  }
  return static_cast<double>(total);
}

// Three vertices, all pairs present: sum_{a,c} s_a s_c C(a,c) (A diag(s) B)(a,c).
double triangle_integral(const std::vector<PairColors>& pairs, const StepGraphonSystem& W) {
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const int m = W.parts();
  const Table* t[3][3] = {};
  for (const PairColors& p : pairs) t[p.u][p.v] = &W.block(p.colors);
  Eigen::Map<const Mat> A(t[0][1]->data(), m, m), B(t[1][2]->data(), m, m), C(t[0][2]->data(), m, m);
  Eigen::Map<const Eigen::VectorXd> s(W.sizes().data(), m);
  const Mat AB = A * s.asDiagonal() * B;
  return (s.transpose() * AB.cwiseProduct(C) * s).value();
}

void check_brute_force_scale(int n, int m) {
  require_scale(n <= 3 || (n <= kBruteForceMaxVertices && m <= kBruteForceMaxParts),
                "non-forest template needs |V(H)| <= " + std::to_string(kBruteForceMaxVertices) +
                    " and m <= " + std::to_string(kBruteForceMaxParts) + " (got |V|=" +
                    std::to_string(n) + ", m=" + std::to_string(m) + ")");
}

void check_colors(const PreColoring& psi, const StepGraphonSystem& W) {
  require(psi.k <= W.colors(), "pre-coloring uses more colors than the system has");
  for (const auto& [id, c] : psi.assignments)
    require(c >= 1 && c <= W.colors(), "color " + std::to_string(c) + " outside [1,k]");
}

std::vector<Color> total_colors(const Multigraph& H, const PreColoring& psi) {
  psi.validate(H);
  require(psi.is_total(H), "a total coloring is required");
  return coloring_vector(H, psi);
}

}  // namespace

double pair_product_integral(int vertex_count, const std::vector<PairColors>& pairs,
                             const StepGraphonSystem& W) {
  if (pairs_form_forest(vertex_count, pairs)) return forest_integral(vertex_count, pairs, W);
  if (vertex_count == 3 && pairs.size() == 3) return triangle_integral(pairs, W);
  check_brute_force_scale(vertex_count, W.parts());
  std::vector<const Table*> tables(std::size_t(vertex_count) * vertex_count, nullptr);
  for (const PairColors& p : pairs) tables[p.u * vertex_count + p.v] = &W.block(p.colors);
  return brute_force_integral(vertex_count, tables, W);
}

double rainbow_density(const Multigraph& H, const PreColoring& psi, const StepGraphonSystem& W,
                       bool* no_extensions) {
  require(psi.rainbow, "rainbow density needs a rainbow pre-coloring");
  psi.validate(H);
  check_colors(psi, W);
  const int k = W.colors();
  if (no_extensions) *no_extensions = H.edge_count() > k;
  if (H.edge_count() > k) return 0.0;
  if (!pairs_form_forest(H.vertex_count(), pair_color_sets(H, std::vector<Color>(H.edge_count(), 1))))
    check_brute_force_scale(H.vertex_count(), W.parts());

  // Distinct extensions often produce the same pair-set assignment (parallel
  // edges permuted); evaluate each assignment once.
  std::map<std::vector<ColorSet>, long long> classes;
  std::vector<PairColors> shape;
  for_each_rainbow_extension(H, psi, k, [&](std::span<const Color> colors) {
    std::vector<PairColors> pairs = pair_color_sets(H, colors);
    std::vector<ColorSet> key(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) key[i] = pairs[i].colors;
    ++classes[key];
    if (shape.empty()) shape = std::move(pairs);
    return true;
  });
  long double total = 0.0L;
  for (const auto& [key, mult] : classes) {
    for (std::size_t i = 0; i < key.size(); ++i) shape[i].colors = key[i];
    total += static_cast<long double>(mult) * pair_product_integral(H.vertex_count(), shape, W);
  }
  return static_cast<double>(total);
}

double colored_density(const Multigraph& H, const PreColoring& psi, const StepGraphonSystem& W) {
  const std::vector<Color> colors = total_colors(H, psi);
  check_colors(psi, W);
  return pair_product_integral(H.vertex_count(), pair_color_sets(H, colors), W);
}

double induced_density(const Multigraph& H, const PreColoring& psi, const StepGraphonSystem& W) {
  const std::vector<Color> colors = total_colors(H, psi);
  check_colors(psi, W);
  const int n = H.vertex_count();
  const OverlineSystem O = moebius_overline(W);
  std::vector<ColorSet> sets(std::size_t(n) * n, 0);
  for (const PairColors& p : pair_color_sets(H, colors)) sets[p.u * n + p.v] = p.colors;
  std::vector<const Table*> tables(std::size_t(n) * n, nullptr);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) tables[u * n + v] = &O.tables[sets[u * n + v]];
  check_brute_force_scale(n, W.parts());
  return brute_force_integral(n, tables, W);
}

double density(const DensityRequest& req) {
  switch (req.mode) {
    case DensityMode::Rainbow:
      return rainbow_density(req.templ, req.psi, req.system);
    case DensityMode::Colored:
      return colored_density(req.templ, req.psi, req.system);
    case DensityMode::Induced:
      return induced_density(req.templ, req.psi, req.system);
  }
  return 0.0;
}

std::vector<double> rooted_density(const Multigraph& T, Vertex root, const PreColoring& psi,
                                   const StepGraphonSystem& W) {
  require(is_tree_support(T), "rooted density needs a tree");
  require(root >= 0 && root < T.vertex_count(), "root outside the tree");
  psi.validate(T);
  check_colors(psi, W);
  const int m = W.parts();
  std::vector<long double> acc(m, 0.0L);
  auto add = [&](std::span<const Color> colors) {
    const auto pairs = pair_color_sets(T, colors);
    const auto adj = adjacency(T.vertex_count(), pairs, W);
    std::vector<char> seen(T.vertex_count(), 0);
    const std::vector<double> f = rooted_vector(root, adj, W, seen);
    for (int a = 0; a < m; ++a) acc[a] += f[a];
    return true;
  };
  if (psi.is_total(T)) {
    add(coloring_vector(T, psi));
  } else {
    require(psi.rainbow, "partial pre-colorings are extended rainbow");
    for_each_rainbow_extension(T, psi, W.colors(), add);
  }
  return {acc.begin(), acc.end()};
}

double edge_density(const StepGraphonSystem& W, Color c) {
  require(c >= 1 && c <= W.colors(), "color outside [1,k]");
  std::vector<double> scratch(W.parts());
  return simd::quadratic_form(W.single(c).data(), W.sizes().data(), scratch.data(), W.parts());
}

std::vector<double> degree_profile(const StepGraphonSystem& W, Color c) {
  require(c >= 1 && c <= W.colors(), "color outside [1,k]");
  std::vector<double> d(W.parts());
  simd::matvec(W.single(c).data(), W.sizes().data(), d.data(), W.parts(), W.parts());
  return d;
}

double gamma(const StepGraphonSystem& W, Color c) {
  return 1.0 - std::sqrt(std::max(0.0, edge_density(W, c)));
}

double isolated_mass(const StepGraphonSystem& W, Color c) {
  const std::vector<double> d = degree_profile(W, c);
  double mass = 0.0;
  for (int a = 0; a < W.parts(); ++a)
    if (d[a] == 0.0) mass += W.sizes()[a];
  return mass;
}

namespace {

using detail::Embedder;
using detail::for_each_host_coloring;

void check_count_scale(const GraphSystem& G, const Multigraph& H) {
  require_scale(H.vertex_count() <= kCountMaxTemplateVertices,
                "copy counting needs |V(H)| <= " + std::to_string(kCountMaxTemplateVertices));
  require_scale(G.vertex_count() <= kCountMaxHostVertices,
                "copy counting needs n <= " + std::to_string(kCountMaxHostVertices));
}

}  // namespace

long long count_rainbow_copies(const GraphSystem& G, const Multigraph& H, const PreColoring& psi) {
  check_count_scale(G, H);
  if (H.edge_count() > G.colors()) return 0;
  Embedder emb(G, H, psi);
  long long count = 0;
  emb.run([&](const std::vector<int>& map) {
    for_each_host_coloring(G, H, psi, map, [&](const std::vector<Color>&) {
      ++count;
      return true;
    });
    return true;
  });
  return count;
}

long long count_rainbow_copies_unordered(const GraphSystem& G, const Multigraph& H,
                                         const PreColoring& psi) {
  check_count_scale(G, H);
  if (H.edge_count() > G.colors()) return 0;
  Embedder emb(G, H, psi);
  std::set<std::vector<std::tuple<int, int, Color>>> copies;
  emb.run([&](const std::vector<int>& map) {
    for_each_host_coloring(G, H, psi, map, [&](const std::vector<Color>& colors) {
      std::vector<std::tuple<int, int, Color>> key;
      for (int x : map) key.emplace_back(x, x, 0);
      for (int i = 0; i < H.edge_count(); ++i) {
        const Edge& e = H.edges()[i];
        key.emplace_back(std::min(map[e.u], map[e.v]), std::max(map[e.u], map[e.v]), colors[i]);
      }
      std::sort(key.begin(), key.end());
      copies.insert(std::move(key));
      return true;
    });
    return true;
  });
  return static_cast<long long>(copies.size());
}

}  // namespace rainbow
