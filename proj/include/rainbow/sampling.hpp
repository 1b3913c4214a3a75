#pragma once

// W-random weighted systems H_S(n, W), random graph systems G(n, W) and the
// cut-distance convergence trace.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rainbow/cutnorm.hpp"
#include "rainbow/graphon.hpp"

namespace rainbow {

// n vertices carrying part labels of a step system; table_I(u,v) is
// W_I(label_u, label_v) off the diagonal and 0 on it.
class WeightedGraphSystem {
 public:
  WeightedGraphSystem() = default;
  WeightedGraphSystem(StepGraphonSystem profile, std::vector<int> labels);

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int colors() const { return profile_.colors(); }
  const std::vector<int>& labels() const { return labels_; }
  const StepGraphonSystem& profile() const { return profile_; }

  double weight(ColorSet I, int u, int v) const {
    return u == v ? 0.0 : profile_.block(I)(labels_[u], labels_[v]);
  }
  // Dense n x n table of color set I.
  Table table(ColorSet I) const;

 private:
  StepGraphonSystem profile_;
  std::vector<int> labels_;
};

// Uniform points x_1..x_n mapped to parts by the cumulative sizes.
std::vector<int> sample_labels(int n, const StepGraphonSystem& W, std::uint64_t seed);
WeightedGraphSystem sample_weighted(int n, const StepGraphonSystem& W, std::uint64_t seed);

// Each pair independently receives colors J with probability overline_J of
// its weights. Throws ValidationError (naming the violating cell) when the
// profile is not admissible.
GraphSystem sample_graph_system(const WeightedGraphSystem& H, std::uint64_t seed);

struct SampledGraph {
  GraphSystem graph;
  std::vector<int> labels;
};
// G(n, W): labels from stream 0 of the seed, pairs from stream 1.
SampledGraph sample_random_graph(int n, const StepGraphonSystem& W, std::uint64_t seed);

struct TraceRow {
  int n = 0;
  std::uint64_t seed = 0;
  Interval delta;
};

// For each n and each of `seeds` consecutive seeds: sample G(n, W) and bound
// its cut distance to W. The upper end uses the coupling that sends each
// vertex to the part of its latent label (north-west corner in label order).
std::vector<TraceRow> convergence_trace(const StepGraphonSystem& W, const std::vector<int>& ns,
                                        int seeds, std::uint64_t base_seed, bool with_lower = true);

// Median of the upper ends per n, in the order of `ns`.
std::vector<double> median_upper_by_n(const std::vector<TraceRow>& rows, const std::vector<int>& ns);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

// Upper bound on delta_box(W, G) from the label-sorted coupling.
double latent_coupling_upper(const StepGraphonSystem& W, const SampledGraph& G);

}  // namespace rainbow
