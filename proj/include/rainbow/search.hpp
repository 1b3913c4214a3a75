#pragma once

// Rainbow copy search in graph systems, the explicit constructions, and
// exact extremal numbers at tiny scale.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/graphon.hpp"

namespace rainbow {

inline constexpr int kSearchMaxTemplateVertices = 10;

struct RainbowCopy {
  std::vector<int> vertex_map;     // template vertex -> host vertex
  std::vector<Color> edge_colors;  // H.edges() order
};

// Backtracking, highest-degree template vertex first and fewest-candidates
// color first. |V(H)| <= 10.
std::optional<RainbowCopy> find_rainbow_copy(const GraphSystem& G, const Multigraph& H,
                                             const PreColoring& psi);

// |V_i| = ceil((1 - sqrt(alpha_i)) n), V_i laid out as consecutive
// wrap-around intervals covering [n]; G_i is complete on [n] \ V_i.
GraphSystem construction_thm14(int n, std::span<const double> alphas);
// Sizes |V_i| used by construction_thm14.
std::vector<int> thm14_cover_sizes(int n, std::span<const double> alphas);

// k equal parts; W_i is the indicator of (all parts but i)^2, W_I the
// product of its singletons.
StepGraphonSystem construction_lemma72(int k);

// One part; W_I = C(k-|I|, l-1-|I|) / C(k, l-1) for |I| <= l-1, else 0.
StepGraphonSystem construction_bipartite(int k, int l);

inline constexpr int kExtremalMaxBits = 24;

struct ExtremalOptions {
  // Past the 24-bit guard only a lower bound by randomized local search is
  // available, and only when requested.
  bool randomized = false;
  int iterations = 200;
  std::uint64_t seed = 0;
};

struct ExtremalResult {
  long long value = 0;  // max over free systems of min_i |E(G_i)|
  GraphSystem witness;
  bool exact = true;
  long long checked = 0;  // freeness checks performed
};

ExtremalResult exact_extremal_number(int n, int k, const Multigraph& H, const PreColoring& psi,
                                     const ExtremalOptions& opt = {});

}  // namespace rainbow
