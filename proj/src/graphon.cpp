#include "rainbow/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

StepGraphonSystem::StepGraphonSystem(int k, std::vector<double> sizes)
    : k_(k), sizes_(std::move(sizes)) {
  require(k >= 0 && k <= kMaxColors, "color count must lie in [0," + std::to_string(kMaxColors) + "]");
  require(!sizes_.empty(), "a step system needs at least one part");
  const int m = parts();
  blocks_.assign(std::size_t{1} << k, Table(m, 0.0));
  blocks_[0] = Table(m, 1.0);
}

const Table& StepGraphonSystem::block(ColorSet I) const {
  require(I < blocks_.size(), "color set outside [k]");
  return blocks_[I];
}

Table& StepGraphonSystem::block(ColorSet I) {
  require(I != 0, "the empty-set block is fixed to 1");
  require(I < blocks_.size(), "color set outside [k]");
  return blocks_[I];
}

void StepGraphonSystem::validate() const {
  double total = 0.0;
  for (double s : sizes_) {
    require(std::isfinite(s) && s >= 0.0, "part sizes must be nonnegative");
    total += s;
  }
  require(std::abs(total - 1.0) <= kSizeTolerance, "part sizes must sum to 1");
  for (std::size_t I = 1; I < blocks_.size(); ++I) {
    const Table& t = blocks_[I];
    require(t.is_symmetric(), "block " + to_text(ColorSet(I)) + " is not symmetric");
    for (double v : t.values())
      require(std::isfinite(v) && v >= 0.0 && v <= 1.0,
              "block " + to_text(ColorSet(I)) + " has a value outside [0,1]");
  }
}

GraphSystem::GraphSystem(int n, int k) : n_(n), k_(k), masks_(std::size_t(n) * n, 0) {
  require(n >= 0, "negative vertex count");
  require(k >= 0 && k <= kMaxColors, "color count must lie in [0," + std::to_string(kMaxColors) + "]");
}

void GraphSystem::add_edge(Color c, int u, int v) {
  require(c >= 1 && c <= k_, "color outside [1,k]");
  set_pair(u, v, pair_colors(u, v) | color_bit(c));
}

void GraphSystem::set_pair(int u, int v, ColorSet colors) {
  require(u >= 0 && u < n_ && v >= 0 && v < n_, "vertex out of range");
  require(u != v || colors == 0, "graph systems have no loops");
  require(is_subset(colors, full_set(k_)), "color outside [1,k]");
  masks_[std::size_t(u) * n_ + v] = static_cast<std::uint8_t>(colors);
  masks_[std::size_t(v) * n_ + u] = static_cast<std::uint8_t>(colors);
}

std::size_t GraphSystem::intersection_count(ColorSet I) const {
  std::size_t count = 0;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (is_subset(I, pair_colors(u, v))) ++count;
  return count;
}

std::size_t GraphSystem::edge_count(Color c) const { return intersection_count(color_bit(c)); }

std::size_t GraphSystem::min_edge_count() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Color c = 1; c <= k_; ++c) best = std::min(best, edge_count(c));
  return k_ == 0 ? 0 : best;
}

std::vector<std::pair<int, int>> GraphSystem::edges_of(Color c) const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (has_edge(c, u, v)) out.push_back({u, v});
  return out;
}

StepGraphonSystem span(std::span<const Table> factors, std::vector<double> sizes) {
  const int k = static_cast<int>(factors.size());
  StepGraphonSystem W(k, std::move(sizes));
  const int m = W.parts();
  for (const Table& f : factors) require(f.size() == m, "span factors must share the partition");
  for (ColorSet I = 1; I <= full_set(k); ++I) {
    Table& t = W.block(I);
    // Lowest color times the product for the rest of I.
    const Color low = std::countr_zero(I) + 1;
    const ColorSet rest = I & (I - 1);
    const Table& f = factors[low - 1];
    const Table& r = std::as_const(W).block(rest);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) t(a, b) = f(a, b) * r(a, b);
  }
  return W;
}

OverlineSystem moebius_overline(const StepGraphonSystem& W) {
  const int k = W.colors();
  OverlineSystem O{k, W.parts(), {}};
  O.tables.reserve(W.set_count());
  for (ColorSet I = 0; I < W.set_count(); ++I) O.tables.push_back(W.block(I));
  const std::size_t cells = std::size_t(O.m) * O.m;
  // Bitwise superset differencing; after processing bit c every table holds
  // the inversion restricted to the colors seen so far.
  for (int c = 0; c < k; ++c) {
    const ColorSet bit = ColorSet{1} << c;
    for (ColorSet I = 0; I < O.tables.size(); ++I) {
      if (I & bit) continue;
      double* lo = O.tables[I].data();
      const double* hi = O.tables[I | bit].data();
      for (std::size_t x = 0; x < cells; ++x) lo[x] -= hi[x];
    }
  }
  return O;
}

std::vector<Table> reconstruct_from_overline(const OverlineSystem& O) {
  std::vector<Table> out = O.tables;
  const std::size_t cells = std::size_t(O.m) * O.m;
  for (int c = 0; c < O.k; ++c) {
    const ColorSet bit = ColorSet{1} << c;
    for (ColorSet I = 0; I < out.size(); ++I) {
      if (I & bit) continue;
      double* lo = out[I].data();
      const double* hi = out[I | bit].data();
      for (std::size_t x = 0; x < cells; ++x) lo[x] += hi[x];
    }
  }
  return out;
}

AdmissibilityReport is_admissible(const StepGraphonSystem& W, double tol) {
  require(tol >= 0.0, "tolerance must be nonnegative");
  const OverlineSystem O = moebius_overline(W);
  AdmissibilityReport rep;
  double worst = 0.0;
  for (ColorSet I = 0; I < O.tables.size(); ++I)
    for (int a = 0; a < O.m; ++a)
      for (int b = 0; b < O.m; ++b) {
        const double v = O.tables[I](a, b);
        if (v < -tol && v < worst) {
          worst = v;
          rep = {false, I, a, b, v};
        }
      }
  return rep;
}

bool is_classical(const StepGraphonSystem& W, double tol) {
  std::vector<Table> factors;
  for (Color c = 1; c <= W.colors(); ++c) factors.push_back(W.single(c));
  const StepGraphonSystem S = span(factors, W.sizes());
  for (ColorSet I = 1; I < W.set_count(); ++I)
    if (W.block(I).max_abs_diff(S.block(I)) > tol) return false;
  return true;
}

StepGraphonSystem stepping(const StepGraphonSystem& W, std::span<const int> coarsening) {
  const int m = W.parts();
  require(static_cast<int>(coarsening.size()) == m, "coarsening must map every part");
  int cells = 0;
  for (int c : coarsening) {
    require(c >= 0, "negative cell index");
    cells = std::max(cells, c + 1);
  }
  std::vector<char> hit(cells, 0);
  for (int c : coarsening) hit[c] = 1;
  require(std::all_of(hit.begin(), hit.end(), [](char h) { return h; }),
          "coarsening must be onto its cell range");

  std::vector<double> mass(cells, 0.0);
  for (int p = 0; p < m; ++p) mass[coarsening[p]] += W.sizes()[p];
  StepGraphonSystem out(W.colors(), mass);
  for (ColorSet I = 1; I < W.set_count(); ++I) {
    Table acc(cells, 0.0);
    const Table& t = W.block(I);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        acc(coarsening[a], coarsening[b]) += W.sizes()[a] * W.sizes()[b] * t(a, b);
    for (int x = 0; x < cells; ++x)
      for (int y = 0; y < cells; ++y) {
        const double denom = mass[x] * mass[y];
        acc(x, y) = denom > 0.0 ? std::clamp(acc(x, y) / denom, 0.0, 1.0) : 0.0;
      }
    out.block(I) = std::move(acc);
  }
  return out;
}

StepGraphonSystem from_graph_system(const GraphSystem& G) {
  const int n = G.vertex_count();
  require(n >= 1, "graph system has no vertices");
  StepGraphonSystem W(G.colors(), std::vector<double>(n, 1.0 / n));
  for (ColorSet I = 1; I < W.set_count(); ++I) {
    Table& t = W.block(I);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) t(u, v) = G.in_intersection(I, u, v) ? 1.0 : 0.0;
  }
  return W;
}

StepGraphonSystem permute_parts(const StepGraphonSystem& W, std::span<const int> perm) {
  const int m = W.parts();
  require(static_cast<int>(perm.size()) == m, "permutation size mismatch");
  std::vector<double> sizes(m);
  for (int p = 0; p < m; ++p) sizes[p] = W.sizes()[perm[p]];
  StepGraphonSystem out(W.colors(), sizes);
  for (ColorSet I = 1; I < W.set_count(); ++I)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out.block(I)(a, b) = W.block(I)(perm[a], perm[b]);
  return out;
}

Refinement common_refinement(const StepGraphonSystem& W, const StepGraphonSystem& U,
                             std::span<const double> coupling) {
  const int m = W.parts(), mp = U.parts();
  require(W.colors() == U.colors(), "systems have different color counts");
  require(coupling.size() == std::size_t(m) * mp, "coupling must be m x m'");
  constexpr double kMarginalTol = 1e-9;
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < mp; ++j) {
      require(coupling[i * mp + j] >= 0.0, "coupling entries must be nonnegative");
      row += coupling[i * mp + j];
    }
    require(std::abs(row - W.sizes()[i]) <= kMarginalTol, "coupling row marginal mismatch");
  }
  for (int j = 0; j < mp; ++j) {
    double col = 0.0;
    for (int i = 0; i < m; ++i) col += coupling[i * mp + j];
    require(std::abs(col - U.sizes()[j]) <= kMarginalTol, "coupling column marginal mismatch");
  }

  Refinement r;
  std::vector<double> sizes;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < mp; ++j)
      if (coupling[i * mp + j] > 0.0) {
        r.cells.push_back({i, j});
        sizes.push_back(coupling[i * mp + j]);
      }
  // Renormalise rounding drift so the refined sizes sum to exactly 1.
  const double total = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  for (double& s : sizes) s /= total;

  r.first = StepGraphonSystem(W.colors(), sizes);
  r.second = StepGraphonSystem(U.colors(), sizes);
  const int c = static_cast<int>(r.cells.size());
  for (ColorSet I = 1; I < W.set_count(); ++I) {
    Table& a = r.first.block(I);
    Table& b = r.second.block(I);
    for (int x = 0; x < c; ++x)
      for (int y = 0; y < c; ++y) {
        a(x, y) = W.block(I)(r.cells[x].first, r.cells[y].first);
        b(x, y) = U.block(I)(r.cells[x].second, r.cells[y].second);
      }
  }
  return r;
}

std::vector<Table> difference_tables(const StepGraphonSystem& W, const StepGraphonSystem& U) {
  require(W.colors() == U.colors() && W.parts() == U.parts(),
          "difference requires systems on one partition");
  std::vector<Table> out;
  for (ColorSet I = 1; I < W.set_count(); ++I) {
    Table d(W.parts());
    const double* a = W.block(I).data();
    const double* b = U.block(I).data();
    for (std::size_t x = 0; x < std::size_t(W.parts()) * W.parts(); ++x) d.data()[x] = a[x] - b[x];
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace rainbow
