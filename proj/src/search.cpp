#include "rainbow/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "embed.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/parallel.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

std::optional<RainbowCopy> find_rainbow_copy(const GraphSystem& G, const Multigraph& H,
                                             const PreColoring& psi) {
  require_scale(H.vertex_count() <= kSearchMaxTemplateVertices,
                "copy search needs |V(H)| <= " + std::to_string(kSearchMaxTemplateVertices));
  if (H.edge_count() > G.colors() || H.vertex_count() > G.vertex_count()) {
    psi.validate(H);
    return std::nullopt;
  }
  detail::Embedder emb(G, H, psi);
  std::optional<RainbowCopy> found;
  emb.run([&](const std::vector<int>& map) {
    detail::for_each_host_coloring(G, H, psi, map, [&](const std::vector<Color>& colors) {
      found = RainbowCopy{map, colors};
      return false;
    });
    return !found;
  });
  return found;
}

std::vector<int> thm14_cover_sizes(int n, std::span<const double> alphas) {
  std::vector<int> sizes;
  for (double a : alphas) {
    require(a >= 0.0 && a <= 1.0, "alpha values must lie in [0,1]");
    const double x = (1.0 - std::sqrt(a)) * n;
    sizes.push_back(std::min(n, static_cast<int>(std::ceil(x - 1e-9))));
  }
  return sizes;
}

GraphSystem construction_thm14(int n, std::span<const double> alphas) {
  const int k = static_cast<int>(alphas.size());
  require(k >= 1 && k <= kMaxColors, "need between 1 and 8 colors");
  require(n >= k, "need n >= k");
  double cover = 0.0;
  for (double a : alphas) {
    require(a >= 0.0 && a <= 1.0, "alpha values must lie in [0,1]");
    cover += 1.0 - std::sqrt(a);
  }
  require(cover >= 1.0 - 1e-12, "the sets V_i cannot cover [n]: sum of (1 - sqrt(alpha_i)) < 1");
  const std::vector<int> sizes = thm14_cover_sizes(n, alphas);

  GraphSystem G(n, k);
  int start = 0;
  for (int i = 0; i < k; ++i) {
    std::vector<char> in_v(n, 0);
    for (int j = 0; j < sizes[i]; ++j) in_v[(start + j) % n] = 1;
    start = (start + sizes[i]) % n;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!in_v[u] && !in_v[v]) G.add_edge(i + 1, u, v);
  }
  return G;
}

StepGraphonSystem construction_lemma72(int k) {
  require(k >= 1 && k <= kMaxColors, "need between 1 and 8 colors");
  std::vector<Table> factors;
  for (int i = 0; i < k; ++i) {
    Table t(k, 0.0);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) t(a, b) = (a != i && b != i) ? 1.0 : 0.0;
    factors.push_back(std::move(t));
  }
  return span(factors, std::vector<double>(k, 1.0 / k));
}

namespace {

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double c = 1.0;
  for (int j = 1; j <= r; ++j) c = c * (n - r + j) / j;
  return std::round(c);
}

}  // namespace

StepGraphonSystem construction_bipartite(int k, int l) {
  require(k >= 1 && k <= kMaxColors, "need between 1 and 8 colors");
  require(l >= 1 && l <= k + 1, "need 1 <= l <= k + 1");
  StepGraphonSystem W(k, {1.0});
  const double denom = binomial(k, l - 1);
  for (ColorSet I = 1; I < W.set_count(); ++I) {
    const int s = set_size(I);
    W.block(I)(0, 0) = s <= l - 1 ? binomial(k - s, l - 1 - s) / denom : 0.0;
  }
  return W;
}

namespace {

struct PairIndex {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> index;  // n x n -> pair number

  explicit PairIndex(int n_) : n(n_), index(std::size_t(n_) * n_, -1) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        index[u * n + v] = index[v * n + u] = static_cast<int>(pairs.size());
        pairs.push_back({u, v});
      }
  }
};

GraphSystem decode(std::uint32_t mask, int n, int k, const PairIndex& P) {
  GraphSystem G(n, k);
  const int np = static_cast<int>(P.pairs.size());
  for (int c = 0; c < k; ++c)
    for (int p = 0; p < np; ++p)
      if ((mask >> (c * np + p)) & 1) G.add_edge(c + 1, P.pairs[p].first, P.pairs[p].second);
  return G;
}

int min_color_count(std::uint32_t mask, int k, int np) {
  int best = np + 1;
  const std::uint32_t seg = np >= 32 ? ~0u : (1u << np) - 1;
  for (int c = 0; c < k; ++c) best = std::min(best, std::popcount((mask >> (c * np)) & seg));
  return best;
}

// Group images of bit positions: every element maps bit b to table[g][b].
std::vector<std::vector<int>> symmetry_images(int n, int k, const PairIndex& P,
                                              const std::vector<Color>& movable) {
  const int np = static_cast<int>(P.pairs.size());
  std::vector<int> vperm(n);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::vector<std::vector<int>> pair_perms;
  do {
    std::vector<int> pp(np);
    for (int p = 0; p < np; ++p) pp[p] = P.index[vperm[P.pairs[p].first] * n + vperm[P.pairs[p].second]];
    pair_perms.push_back(std::move(pp));
  } while (std::next_permutation(vperm.begin(), vperm.end()));

  std::vector<std::vector<int>> color_perms;
  std::vector<Color> image = movable;
  do {
    std::vector<int> cp(k);
    std::iota(cp.begin(), cp.end(), 0);
    for (std::size_t j = 0; j < movable.size(); ++j) cp[movable[j] - 1] = image[j] - 1;
    color_perms.push_back(std::move(cp));
  } while (std::next_permutation(image.begin(), image.end()));

  std::vector<std::vector<int>> out;
  for (const auto& cp : color_perms)
    for (const auto& pp : pair_perms) {
      std::vector<int> t(std::size_t(k) * np);
      for (int c = 0; c < k; ++c)
        for (int p = 0; p < np; ++p) t[c * np + p] = cp[c] * np + pp[p];
      out.push_back(std::move(t));
    }
  return out;
}

bool is_canonical(std::uint32_t mask, const std::vector<std::vector<int>>& images) {
  for (const auto& t : images) {
    std::uint32_t img = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) img |= 1u << t[std::countr_zero(rest)];
    if (img < mask) return false;
  }
  return true;
}

long long min_edges(const GraphSystem& G) { return static_cast<long long>(G.min_edge_count()); }

ExtremalResult randomized_extremal(int n, int k, const Multigraph& H, const PreColoring& psi,
                                   const ExtremalOptions& opt) {
  const PairIndex P(n);
  const int np = static_cast<int>(P.pairs.size());
  auto rng = make_engine(opt.seed, 0x657874);
  std::bernoulli_distribution coin(0.5);
  ExtremalResult best{-1, GraphSystem(n, k), false, 0};
  std::vector<std::pair<int, int>> slots;  // (color, pair)
  for (int c = 1; c <= k; ++c)
    for (int p = 0; p < np; ++p) slots.push_back({c, p});

  for (int it = 0; it < std::max(1, opt.iterations); ++it) {
    GraphSystem G(n, k);
    for (auto [c, p] : slots)
      if (coin(rng)) G.add_edge(c, P.pairs[p].first, P.pairs[p].second);
    // Repair: delete an edge of each copy found, preferring the richest color.
    while (auto copy = find_rainbow_copy(G, H, psi)) {
      ++best.checked;
      int pick = 0;
      std::size_t most = 0;
      for (int e = 0; e < H.edge_count(); ++e) {
        const std::size_t cnt = G.edge_count(copy->edge_colors[e]);
        if (cnt > most) most = cnt, pick = e;
      }
      const Edge& e = H.edges()[pick];
      const int u = copy->vertex_map[e.u], v = copy->vertex_map[e.v];
      G.set_pair(u, v, G.pair_colors(u, v) & ~color_bit(copy->edge_colors[pick]));
    }
    // Greedy completion in random order.
    std::shuffle(slots.begin(), slots.end(), rng);
    for (auto [c, p] : slots) {
      const auto [u, v] = P.pairs[p];
      if (G.has_edge(c, u, v)) continue;
      G.add_edge(c, u, v);
      ++best.checked;
      if (find_rainbow_copy(G, H, psi)) G.set_pair(u, v, G.pair_colors(u, v) & ~color_bit(c));
    }
    if (min_edges(G) > best.value) {
      best.value = min_edges(G);
      best.witness = G;
    }
  }
  return best;
}

}  // namespace

ExtremalResult exact_extremal_number(int n, int k, const Multigraph& H, const PreColoring& psi,
                                     const ExtremalOptions& opt) {
  require(n >= 1, "n must be positive");
  require(k >= 1 && k <= kMaxColors, "need between 1 and 8 colors");
  psi.validate(H);
  for (const auto& [id, c] : psi.assignments) require(c >= 1 && c <= k, "color outside [1,k]");
  const int np = n * (n - 1) / 2;
  const long long bits = static_cast<long long>(k) * np;
  if (bits > kExtremalMaxBits) {
    require_scale(opt.randomized, "exact enumeration needs k*C(n,2) <= " +
                                      std::to_string(kExtremalMaxBits) + " (got " +
                                      std::to_string(bits) + "); opt into randomized mode");
    return randomized_extremal(n, k, H, psi, opt);
  }

  const PairIndex P(n);
  std::vector<Color> movable;
  for (Color c = 1; c <= k; ++c) {
    bool used = false;
    for (const auto& [id, col] : psi.assignments) used = used || col == c;
    if (!used) movable.push_back(c);
  }
  const auto images = symmetry_images(n, k, P, movable);

  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::size_t chunks = std::min<std::uint64_t>(total, 64);
  struct Local {
    long long value = -1;
    std::uint32_t mask = 0;
    long long checked = 0;
  };
  std::vector<Local> local(chunks);
  parallel_chunks(chunks, [&](std::size_t ci) {
    const std::uint64_t lo = total * ci / chunks, hi = total * (ci + 1) / chunks;
    Local& L = local[ci];
    for (std::uint64_t m = lo; m < hi; ++m) {
      const auto mask = static_cast<std::uint32_t>(m);
      const int obj = min_color_count(mask, k, np);
      if (obj <= L.value) continue;
      if (!is_canonical(mask, images)) continue;
      ++L.checked;
      if (find_rainbow_copy(decode(mask, n, k, P), H, psi)) continue;
      L.value = obj;
      L.mask = mask;
    }
  });

  ExtremalResult res{-1, GraphSystem(n, k), true, 0};
  std::uint32_t best_mask = 0;
  for (const Local& L : local) {
    res.checked += L.checked;
    if (L.value > res.value) res.value = L.value, best_mask = L.mask;
  }
  if (res.value >= 0) res.witness = decode(best_mask, n, k, P);
  return res;
}

}  // namespace rainbow
