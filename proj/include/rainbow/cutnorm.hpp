#pragma once

// Cut norm of tuples of signed step tables, d_box between systems on one
// partition, and two-sided bounds for the cut distance.

#include <cstdint>
#include <span>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/graphon.hpp"

namespace rainbow {

// Exact enumeration limit for cut_norm_exact.
inline constexpr int kCutNormExactMaxParts = 16;

struct CutWitness {
  double value = 0.0;
  std::vector<int> S;  // part indices, ascending
  std::vector<int> T;
};

// sup_{S,T} sum_i |sum_{a in S, b in T} s_a s_b A_i(a,b)|. Exact: for fixed
// T the objective is convex in the part inclusion fractions, so 0/1 part
// subsets attain it. Throws ScaleGuardError above 16 parts.
CutWitness cut_norm_exact(std::span<const Table> tuple, std::span<const double> sizes);

// Alternating S/T maximisation from random starts; the returned value is
// attained by the reported (S,T), hence a lower bound.
CutWitness cut_norm_heuristic(std::span<const Table> tuple, std::span<const double> sizes,
                              int restarts = 20, std::uint64_t seed = 0);

// Certified upper bound: sum over tables of min(weighted L1 mass,
// largest singular value of diag(sqrt s) A diag(sqrt s)).
double cut_norm_upper(std::span<const Table> tuple, std::span<const double> sizes);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Cut norm of the tuple as an interval: exact (lower == upper) up to 16
// parts, heuristic and certified upper bound beyond.
Interval cut_norm_interval(std::span<const Table> tuple, std::span<const double> sizes,
                           std::uint64_t seed = 0);

// d_box of two systems on the same partition (exact, m <= 16).
double d_box(const StepGraphonSystem& W, const StepGraphonSystem& U);
Interval d_box_interval(const StepGraphonSystem& W, const StepGraphonSystem& U,
                        std::uint64_t seed = 0);

struct CouplingSearchOptions {
  int restarts = 200;
  int patience = 50;  // non-improving proposals before a restart ends
  std::uint64_t seed = 0;
  // Local mass-transfer moves only when m * m' is at most this.
  int local_move_cells = 16;
};

struct CouplingResult {
  double value = 0.0;            // upper bound on delta_box
  std::vector<double> coupling;  // row-major m x m'
};

// Minimum over searched couplings of the d_box upper bound on the overlay.
CouplingResult delta_box_upper_search(const StepGraphonSystem& W, const StepGraphonSystem& U,
                                      const CouplingSearchOptions& opt = {});
double delta_box_upper(const StepGraphonSystem& W, const StepGraphonSystem& U, int restarts = 200,
                       std::uint64_t seed = 0);
// Overlay bound for one fixed coupling.
double coupling_upper_bound(const StepGraphonSystem& W, const StepGraphonSystem& U,
                            std::span<const double> coupling);

struct TemplateCase {
  Multigraph H;
  PreColoring psi;
};

// All multigraphs without isolated vertices having 1..max_edges edges (up to
// isomorphism, max_edges <= 3), each with the empty pre-coloring and every
// total rainbow coloring by colors in [k].
std::vector<TemplateCase> default_template_family(int k, int max_edges = 3);

// max over the family of |t*(W) - t*(U)| / |E(H)|.
double delta_box_lower(const StepGraphonSystem& W, const StepGraphonSystem& U,
                       const std::vector<TemplateCase>& family);
double delta_box_lower(const StepGraphonSystem& W, const StepGraphonSystem& U);

Interval delta_box(const StepGraphonSystem& W, const StepGraphonSystem& U,
                   const CouplingSearchOptions& opt = {});

// North-west-corner coupling of masses a and b along the given orders.
std::vector<double> northwest_coupling(std::span<const double> a, std::span<const double> b,
                                       std::span<const int> order_a, std::span<const int> order_b);

}  // namespace rainbow
