#pragma once

// Step graphon systems: a partition of [0,1] into m parts with masses
// `sizes`, and for every color subset I a symmetric m x m table W_I with
// values in [0,1]. W_emptyset is the all-ones table and is never stored by
// callers; block(0) returns it read-only.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

inline constexpr double kSizeTolerance = 1e-12;
inline constexpr double kDefaultAdmissibilityTolerance = 1e-9;

class StepGraphonSystem {
 public:
  StepGraphonSystem() = default;
  // All non-empty blocks start at zero.
  StepGraphonSystem(int k, std::vector<double> sizes);

  int colors() const { return k_; }
  int parts() const { return static_cast<int>(sizes_.size()); }
  const std::vector<double>& sizes() const { return sizes_; }
  // Number of stored tables including the empty set, 2^k.
  std::size_t set_count() const { return blocks_.size(); }

  const Table& block(ColorSet I) const;
  Table& block(ColorSet I);  // I must be non-empty
  const Table& single(Color c) const { return block(color_bit(c)); }

  // Throws ValidationError unless sizes are nonnegative and sum to 1 within
  // kSizeTolerance, and every block is symmetric with entries in [0,1].
  void validate() const;

  friend bool operator==(const StepGraphonSystem&, const StepGraphonSystem&) = default;

 private:
  int k_ = 0;
  std::vector<double> sizes_;
  std::vector<Table> blocks_;  // indexed by ColorSet; [0] is all ones
};

// Moebius inversion of a step system: one table per I (including the empty
// set), entries in [-1,1]; the tables of a cell sum to 1.
struct OverlineSystem {
  int k = 0;
  int m = 0;
  std::vector<Table> tables;  // indexed by ColorSet, size 2^k

  const Table& operator[](ColorSet I) const { return tables[I]; }
};

// k graphs on a common vertex set 0..n-1, stored as one color-set byte per
// ordered pair. Diagonal entries are always empty.
class GraphSystem {
 public:
  GraphSystem() = default;
  GraphSystem(int n, int k);

  int vertex_count() const { return n_; }
  int colors() const { return k_; }

  ColorSet pair_colors(int u, int v) const { return masks_[std::size_t(u) * n_ + v]; }
  bool has_edge(Color c, int u, int v) const { return contains(pair_colors(u, v), c); }
  // uv is in every G_i, i in I
  bool in_intersection(ColorSet I, int u, int v) const {
    return u != v && is_subset(I, pair_colors(u, v));
  }

  void add_edge(Color c, int u, int v);
  void set_pair(int u, int v, ColorSet colors);
  void clear_pair(int u, int v) { set_pair(u, v, 0); }

  std::size_t edge_count(Color c) const;
  std::size_t intersection_count(ColorSet I) const;
  std::size_t min_edge_count() const;
  std::vector<std::pair<int, int>> edges_of(Color c) const;

  friend bool operator==(const GraphSystem&, const GraphSystem&) = default;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint8_t> masks_;
};

// span(W_1..W_k): W_I is the cellwise product of the factors in I.
StepGraphonSystem span(std::span<const Table> factors, std::vector<double> sizes);

// Superset Moebius transform, cellwise
//   overline_I = sum_{J >= I} (-1)^{|J \ I|} W_J.
OverlineSystem moebius_overline(const StepGraphonSystem& W);
// Inverse transform: W_I = sum_{J >= I} overline_J.
std::vector<Table> reconstruct_from_overline(const OverlineSystem& O);

struct AdmissibilityReport {
  bool admissible = true;
  // Most negative overline cell (set only when not admissible).
  ColorSet set = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

AdmissibilityReport is_admissible(const StepGraphonSystem& W,
                                  double tol = kDefaultAdmissibilityTolerance);
bool is_classical(const StepGraphonSystem& W, double tol = kDefaultAdmissibilityTolerance);

// Merges part p into cell coarsening[p] (cells 0..c-1 must all be hit).
// Block values become mass-weighted averages; zero-mass cells get 0.
StepGraphonSystem stepping(const StepGraphonSystem& W, std::span<const int> coarsening);

// Vertex u becomes a part of mass 1/n; cell (u,v) of W_I is 1 iff uv lies in
// every G_i, i in I. Diagonal cells are 0 for non-empty I.
StepGraphonSystem from_graph_system(const GraphSystem& G);

// Relabels parts: part p of the result is part perm[p] of W.
StepGraphonSystem permute_parts(const StepGraphonSystem& W, std::span<const int> perm);

// Both systems re-expressed on the cells (i,j) of positive coupling mass.
// Coupling is row-major m x m'. Rows must sum to W.sizes(), columns to
// U.sizes() within 1e-9.
struct Refinement {
  StepGraphonSystem first;
  StepGraphonSystem second;
  std::vector<std::pair<int, int>> cells;  // (part of W, part of U)
};
Refinement common_refinement(const StepGraphonSystem& W, const StepGraphonSystem& U,
                             std::span<const double> coupling);

// Same-shape difference W_I - U_I for every non-empty I (signed tables).
std::vector<Table> difference_tables(const StepGraphonSystem& W, const StepGraphonSystem& U);

}  // namespace rainbow
