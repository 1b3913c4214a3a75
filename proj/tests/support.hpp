#pragma once

// Generators and brute-force oracles shared by the unit tests. The oracles
// deliberately avoid the library's own enumeration helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/graphon.hpp"

namespace testing {

using namespace rainbow;

struct Gen {
  std::mt19937_64 eng;
  explicit Gen(std::uint64_t seed) : eng(seed * 0x9e3779b97f4a7c15ULL + 17) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  bool coin(double p = 0.5) { return unit() < p; }

  std::vector<double> simplex(int m, bool allow_zero = false) {
    std::vector<double> x(m);
    std::exponential_distribution<double> e(1.0);
    for (double& v : x) v = (allow_zero && coin(0.15)) ? 0.0 : e(eng) + 1e-3;
    double s = 0.0;
    for (double v : x) s += v;
    if (s == 0.0) {
      x[0] = 1.0;
      s = 1.0;
    }
    for (double& v : x) v /= s;
    return x;
  }

  Table symmetric(int m, double lo = 0.0, double hi = 1.0) {
    Table t(m);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) t.set_sym(a, b, uniform(lo, hi));
    return t;
  }

  // Arbitrary tables in [0,1] (usually not admissible).
  StepGraphonSystem general(int k, int m) {
    StepGraphonSystem W(k, simplex(m));
    for (ColorSet I = 1; I < W.set_count(); ++I) W.block(I) = symmetric(m);
    return W;
  }

  StepGraphonSystem classical(int k, int m) {
    std::vector<Table> f;
    for (int i = 0; i < k; ++i) f.push_back(symmetric(m));
    return span(f, simplex(m));
  }

  // Each cell draws a distribution over subsets of [k] (the overline values)
  // and W_I sums it over supersets, so every system is admissible.
  StepGraphonSystem admissible(int k, int m, std::vector<double> sizes = {}) {
    if (sizes.empty()) sizes = simplex(m);
    StepGraphonSystem W(k, sizes);
    const std::size_t sets = std::size_t{1} << k;
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        std::vector<double> p = simplex(static_cast<int>(sets), true);
        for (ColorSet I = 1; I < sets; ++I) {
          double v = 0.0;
          for (ColorSet J = I; J < sets; ++J)
            if ((J & I) == I) v += p[J];
          W.block(I).set_sym(a, b, std::min(1.0, v));
        }
      }
    return W;
  }

  // Same partition, small perturbation of every cell's overline distribution.
  StepGraphonSystem nearby(const StepGraphonSystem& W, double eps) {
    const int k = W.colors(), m = W.parts();
    StepGraphonSystem U = admissible(k, m, W.sizes());
    StepGraphonSystem out(k, W.sizes());
    for (ColorSet I = 1; I < W.set_count(); ++I)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          out.block(I)(a, b) = (1.0 - eps) * W.block(I)(a, b) + eps * U.block(I)(a, b);
    return out;
  }

  GraphSystem graph_system(int n, int k, double p) {
    GraphSystem G(n, k);
    for (int c = 1; c <= k; ++c)
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (coin(p)) G.add_edge(c, u, v);
    return G;
  }

  Multigraph tree(int n) {
    Multigraph T(n);
    for (int v = 1; v < n; ++v) T.add_edge(integer(0, v - 1), v);
    return T;
  }
};

inline Multigraph path(int edges) {
  Multigraph P(edges + 1);
  for (int i = 0; i < edges; ++i) P.add_edge(i, i + 1);
  return P;
}

inline Multigraph star(int leaves) {
  Multigraph S(leaves + 1);
  for (int i = 1; i <= leaves; ++i) S.add_edge(0, i);
  return S;
}

inline Multigraph parallel_edges(int count) {
  Multigraph P(2);
  for (int i = 0; i < count; ++i) P.add_edge(0, 1);
  return P;
}

inline PreColoring empty_psi(int k) { return PreColoring{k, {}, true}; }

inline PreColoring total(const Multigraph& H, const std::vector<Color>& colors, int k,
                         bool rainbow = false) {
  PreColoring p{k, {}, rainbow};
  for (int e = 0; e < H.edge_count(); ++e) p.assignments[H.edges()[e].id] = colors[e];
  return p;
}

// All injective colorings of the edges extending psi, by filtering [k]^E.
inline std::vector<std::vector<Color>> oracle_extensions(const Multigraph& H, const PreColoring& psi,
                                                         int k) {
  const int E = H.edge_count();
  std::vector<std::vector<Color>> out;
  std::vector<Color> c(E, 1);
  if (E == 0) return {{}};
  while (true) {
    bool ok = true;
    for (int e = 0; e < E && ok; ++e) {
      auto it = psi.assignments.find(H.edges()[e].id);
      if (it != psi.assignments.end() && it->second != c[e]) ok = false;
      for (int f = 0; f < e && ok; ++f) ok = c[e] != c[f];
    }
    if (ok) out.push_back(c);
    int i = 0;
    while (i < E && c[i] == k) c[i++] = 1;
    if (i == E) break;
    ++c[i];
  }
  return out;
}

// Direct sum over all maps V(H) -> parts for one total coloring.
inline double oracle_colored(const Multigraph& H, const std::vector<Color>& colors,
                             const StepGraphonSystem& W) {
  const int n = H.vertex_count(), m = W.parts();
  std::vector<std::vector<ColorSet>> set(n, std::vector<ColorSet>(n, 0));
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int e = 0; e < H.edge_count(); ++e) {
    const auto& ed = H.edges()[e];
    const int u = std::min(ed.u, ed.v), v = std::max(ed.u, ed.v);
    set[u][v] |= color_bit(colors[e]);
    adj[u][v] = 1;
  }
  std::vector<int> x(n, 0);
  long double total = 0.0L;
  while (true) {
    long double term = 1.0L;
    for (int v = 0; v < n; ++v) term *= W.sizes()[x[v]];
    for (int u = 0; u < n && term != 0.0L; ++u)
      for (int v = u + 1; v < n; ++v)
        if (adj[u][v]) term *= W.block(set[u][v])(x[u], x[v]);
    total += term;
    int i = 0;
    while (i < n && x[i] == m - 1) x[i++] = 0;
    if (i == n) break;
    ++x[i];
  }
  return static_cast<double>(total);
}

inline double oracle_rainbow(const Multigraph& H, const PreColoring& psi, const StepGraphonSystem& W) {
  long double t = 0.0L;
  for (const auto& c : oracle_extensions(H, psi, W.colors())) t += oracle_colored(H, c, W);
  return static_cast<double>(t);
}

// sup over part subsets S, T by enumerating every pair.
inline double oracle_cut_norm(const std::vector<Table>& tuple, const std::vector<double>& sizes) {
  const int m = static_cast<int>(sizes.size());
  double best = 0.0;
  for (std::uint32_t S = 0; S < (1u << m); ++S)
    for (std::uint32_t T = 0; T < (1u << m); ++T) {
      double v = 0.0;
      for (const Table& A : tuple) {
        double s = 0.0;
        for (int a = 0; a < m; ++a)
          if ((S >> a) & 1)
            for (int b = 0; b < m; ++b)
              if ((T >> b) & 1) s += sizes[a] * sizes[b] * A(a, b);
        v += std::abs(s);
      }
      best = std::max(best, v);
    }
  return best;
}

inline std::vector<Table> blocks_of(const StepGraphonSystem& W) {
  std::vector<Table> out;
  for (ColorSet I = 1; I < W.set_count(); ++I) out.push_back(W.block(I));
  return out;
}

}  // namespace testing
