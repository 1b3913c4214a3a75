#include "rainbow/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "rainbow/errors.hpp"

namespace rainbow {

StepGraphonSystem step_by_cells(const StepGraphonSystem& W, std::span<const int> cell_of) {
  const int m = W.parts();
  require(static_cast<int>(cell_of.size()) == m, "cell map must cover every part");
  const StepGraphonSystem coarse = stepping(W, cell_of);
  StepGraphonSystem out(W.colors(), W.sizes());
  for (ColorSet I = 1; I < W.set_count(); ++I) {
    Table& t = out.block(I);
    const Table& c = coarse.block(I);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) t(a, b) = c(cell_of[a], cell_of[b]);
  }
  return out;
}

double weak_regularity_bound(const StepGraphonSystem& W, int m1, int m2) {
  require(m1 >= 1 && m2 > m1, "need m2 > m1 >= 1");
  const auto& s = W.sizes();
  double norms = 0.0;
  for (ColorSet I = 1; I < W.set_count(); ++I) {
    double sq = 0.0;
    for (int a = 0; a < W.parts(); ++a)
      for (int b = 0; b < W.parts(); ++b) sq += s[a] * s[b] * W.block(I)(a, b) * W.block(I)(a, b);
    norms += std::sqrt(sq);
  }
  const double tuple = static_cast<double>(W.set_count() - 1);
  return std::sqrt(tuple) * 8.0 * norms / std::sqrt(std::log(double(m2) / m1));
}

namespace {

std::vector<Table> residuals(const StepGraphonSystem& W, const StepGraphonSystem& WP) {
  return difference_tables(W, WP);
}

double l2_squared(const std::vector<Table>& tables, const std::vector<double>& sizes) {
  double total = 0.0;
  const int m = static_cast<int>(sizes.size());
  for (const Table& t : tables)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) total += sizes[a] * sizes[b] * t(a, b) * t(a, b);
  return total;
}

// Renumbers cells densely in order of first appearance.
int compact(std::vector<int>& cell_of) {
  std::map<int, int> ids;
  for (int& c : cell_of) {
    auto [it, fresh] = ids.emplace(c, static_cast<int>(ids.size()));
    c = it->second;
  }
  return static_cast<int>(ids.size());
}

int count_split(const std::vector<int>& cell_of, const std::vector<char>& S,
                const std::vector<char>& T, bool use_s, bool use_t) {
  std::vector<int> next(cell_of.size());
  for (std::size_t v = 0; v < cell_of.size(); ++v)
    next[v] = cell_of[v] * 4 + (use_s && S[v] ? 1 : 0) + (use_t && T[v] ? 2 : 0);
  return compact(next);
}

}  // namespace

RegularityResult weak_regularity_partition(const GraphSystem& G, int max_parts, std::uint64_t seed,
                                           double tol) {
  require(max_parts >= 1, "max_parts must be positive");
  require(tol >= 0.0, "tolerance must be nonnegative");
  const int n = G.vertex_count();
  const StepGraphonSystem W = from_graph_system(G);
  RegularityResult res;
  res.cell_of.assign(n, 0);
  res.parts = 1;

  const int k = std::max(1, G.colors());
  const int cap = static_cast<int>(std::ceil(std::log2(std::max(2, max_parts)))) * k;
  for (int round = 0; round < cap; ++round) {
    const StepGraphonSystem WP = step_by_cells(W, res.cell_of);
    const auto R = residuals(W, WP);
    const CutWitness w = cut_norm_heuristic(R, W.sizes(), 8, seed + static_cast<std::uint64_t>(round));
    res.rounds.push_back({res.parts, w.value, l2_squared(R, W.sizes())});
    if (w.value < tol) break;

    std::vector<char> S(n, 0), T(n, 0);
    for (int v : w.S) S[v] = 1;
    for (int v : w.T) T[v] = 1;
    bool use_s = true, use_t = true;
    if (count_split(res.cell_of, S, T, true, true) > max_parts) {
      use_t = false;
      if (count_split(res.cell_of, S, T, true, false) > max_parts) {
        use_s = false;
        use_t = true;
        if (count_split(res.cell_of, S, T, false, true) > max_parts) break;
      }
    }
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v)
      next[v] = res.cell_of[v] * 4 + (use_s && S[v] ? 1 : 0) + (use_t && T[v] ? 2 : 0);
    const int parts = compact(next);
    if (parts == res.parts) break;  // the witness did not cut any cell
    res.cell_of = std::move(next);
    res.parts = parts;
  }

  const StepGraphonSystem WP = step_by_cells(W, res.cell_of);
  const auto R = residuals(W, WP);
  res.final_residual_l2 = l2_squared(R, W.sizes());
  res.certificate = cut_norm_interval(R, W.sizes(), seed);
  return res;
}

EquitablePartition equitable_refine(std::span<const double> masses, int m_prime) {
  require(m_prime >= 1, "m' must be positive");
  require(static_cast<int>(masses.size()) <= m_prime, "m' must be at least the number of parts");
  double total = 0.0;
  for (double x : masses) {
    require(x >= 0.0, "masses must be nonnegative");
    total += x;
  }
  require(std::abs(total - 1.0) <= 1e-9, "masses must sum to 1");
  const double unit = 1.0 / m_prime;
  constexpr double eps = 1e-12;

  EquitablePartition out{m_prime, {}};
  int cell = 0;
  struct Rest {
    int source;
    double offset, mass;
  };
  std::vector<Rest> pool;
  for (int p = 0; p < static_cast<int>(masses.size()); ++p) {
    const int whole = static_cast<int>(std::floor(masses[p] / unit + eps));
    for (int j = 0; j < whole; ++j) out.fragments.push_back({p, cell++, j * unit, unit});
    const double rest = masses[p] - whole * unit;
    if (rest > eps) pool.push_back({p, whole * unit, rest});
  }
  // Fill the remaining cells from the pooled remainders in order.
  double room = unit;
  for (const Rest& r : pool) {
    double left = r.mass, offset = r.offset;
    while (left > eps) {
      if (room <= eps) {
        ++cell;
        room = unit;
      }
      const double take = std::min(left, room);
      out.fragments.push_back({r.source, std::min(cell, m_prime - 1), offset, take});
      offset += take;
      left -= take;
      room -= take;
    }
  }
  std::sort(out.fragments.begin(), out.fragments.end(), [](const Fragment& a, const Fragment& b) {
    return std::tie(a.source, a.offset) < std::tie(b.source, b.offset);
  });
  return out;
}

EquitableOverlay equitable_overlay(const StepGraphonSystem& W, std::span<const int> coarsening,
                                   int m_prime) {
  const int m = W.parts();
  require(static_cast<int>(coarsening.size()) == m, "coarsening must map every part");
  int cells = 0;
  for (int c : coarsening) cells = std::max(cells, c + 1);
  std::vector<double> qmass(cells, 0.0);
  for (int a = 0; a < m; ++a) qmass[coarsening[a]] += W.sizes()[a];
  const EquitablePartition P = equitable_refine(qmass, m_prime);

  // Atoms: (part of W, cell of P) overlaps, with parts laid out
  // consecutively inside their Q cell.
  struct Atom {
    int part, cell;
    double mass;
  };
  std::vector<Atom> atoms;
  for (int q = 0; q < cells; ++q) {
    std::vector<int> members;
    for (int a = 0; a < m; ++a)
      if (coarsening[a] == q) members.push_back(a);
    double start = 0.0;
    for (int a : members) {
      const double lo = start, hi = start + W.sizes()[a];
      start = hi;
      for (const Fragment& f : P.fragments) {
        if (f.source != q) continue;
        const double overlap = std::min(hi, f.offset + f.mass) - std::max(lo, f.offset);
        if (overlap > 1e-15) atoms.push_back({a, f.cell, overlap});
      }
    }
  }
  std::vector<double> sizes;
  for (const Atom& t : atoms) sizes.push_back(t.mass);
  const double total = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  for (double& s : sizes) s /= total;

  const int A = static_cast<int>(atoms.size());
  EquitableOverlay out{StepGraphonSystem(W.colors(), sizes), StepGraphonSystem(W.colors(), sizes)};
  std::vector<int> cell_of(A);
  for (int x = 0; x < A; ++x) cell_of[x] = atoms[x].cell;
  for (ColorSet I = 1; I < W.set_count(); ++I)
    for (int x = 0; x < A; ++x)
      for (int y = 0; y < A; ++y) out.fine.block(I)(x, y) = W.block(I)(atoms[x].part, atoms[y].part);
  out.stepped = step_by_cells(out.fine, cell_of);
  return out;
}

}  // namespace rainbow
