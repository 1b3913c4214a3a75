#pragma once

// Weak regularity partitions of graph systems (Frieze-Kannan refinement)
// and equitable refinement of mass partitions.

#include <cstdint>
#include <span>
#include <vector>

#include "rainbow/cutnorm.hpp"
#include "rainbow/graphon.hpp"

namespace rainbow {

inline constexpr double kDefaultRegularityTolerance = 0.05;

struct RegularityRound {
  int parts = 0;            // cell count entering the round
  double discrepancy = 0.0;  // witnessed cut norm of the residual tuple
  double residual_l2 = 0.0;  // sum over I of ||G_I - (G_I)_P||_2^2
};

struct RegularityResult {
  std::vector<int> cell_of;  // vertex -> cell, cells numbered 0..parts-1
  int parts = 0;
  std::vector<RegularityRound> rounds;
  double final_residual_l2 = 0.0;
  Interval certificate;  // d_box(G, G_P)
};

RegularityResult weak_regularity_partition(const GraphSystem& G, int max_parts, std::uint64_t seed,
                                           double tol = kDefaultRegularityTolerance);

// Vertex-level stepping: every vertex pair gets the average of its cell pair.
StepGraphonSystem step_by_cells(const StepGraphonSystem& W, std::span<const int> cell_of);

// k'^{1/2} * 8 * sum_I ||W_I||_2 / sqrt(ln(m2/m1)) with k' the number of
// non-empty color sets.
double weak_regularity_bound(const StepGraphonSystem& W, int m1, int m2);

struct Fragment {
  int source = 0;       // part of the input partition
  int cell = 0;         // cell of the equitable partition
  double offset = 0.0;  // start of the fragment inside its source part
  double mass = 0.0;
};

struct EquitablePartition {
  int cells = 0;
  std::vector<Fragment> fragments;  // sorted by (source, offset)
};

// Each part is cut into pieces of mass 1/m' plus at most one remainder; the
// remainders are pooled in order and cut into the remaining cells.
EquitablePartition equitable_refine(std::span<const double> masses, int m_prime);

// W on its own parts, Q a coarsening of them. Returns W and W_P expressed on
// the common refinement of W's parts with the equitable refinement P of Q.
struct EquitableOverlay {
  StepGraphonSystem fine;
  StepGraphonSystem stepped;
};
EquitableOverlay equitable_overlay(const StepGraphonSystem& W, std::span<const int> coarsening,
                                   int m_prime);

}  // namespace rainbow
