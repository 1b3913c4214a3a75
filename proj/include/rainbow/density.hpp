#pragma once

// Exact evaluation of rainbow, colored, rooted and induced homomorphism
// densities of pre-colored multigraph templates on step graphon systems.

#include <optional>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/graphon.hpp"

namespace rainbow {

enum class DensityMode { Rainbow, Colored, Induced };

struct DensityRequest {
  Multigraph templ;
  PreColoring psi;
  StepGraphonSystem system;
  DensityMode mode = DensityMode::Rainbow;
};

// Limits of the direct m^|V| summation used for templates whose simple
// support has a cycle. Three-vertex templates are always allowed (m^3 work).
inline constexpr int kBruteForceMaxVertices = 8;
inline constexpr int kBruteForceMaxParts = 6;

// Sum over injective extensions of psi of the decorated homomorphism
// integral. Returns 0 (and sets *no_extensions when given) if |E(H)| > k.
double rainbow_density(const Multigraph& H, const PreColoring& psi, const StepGraphonSystem& W,
                       bool* no_extensions = nullptr);
// Single term for a total coloring (psi need not be rainbow).
double colored_density(const Multigraph& H, const PreColoring& psi, const StepGraphonSystem& W);
// Integral of the product over all vertex pairs of overline_{psi(E_ij)},
// non-adjacent pairs contributing overline_emptyset.
double induced_density(const Multigraph& H, const PreColoring& psi, const StepGraphonSystem& W);

double density(const DensityRequest& req);

// Per-part rooted density of a tree (sim(T) a tree). For partial rainbow
// pre-colorings the vectors of all injective extensions are summed.
std::vector<double> rooted_density(const Multigraph& T, Vertex root, const PreColoring& psi,
                                   const StepGraphonSystem& W);

// Integral of prod over the given pairs of W_{colors}(x_u, x_v), pairs listed
// by pair_color_sets. Chooses the tree DP when the pair graph is a forest.
double pair_product_integral(int vertex_count, const std::vector<PairColors>& pairs,
                             const StepGraphonSystem& W);

double edge_density(const StepGraphonSystem& W, Color c);
std::vector<double> degree_profile(const StepGraphonSystem& W, Color c);
double gamma(const StepGraphonSystem& W, Color c);
// Total mass of parts whose degree profile in color c is zero.
double isolated_mass(const StepGraphonSystem& W, Color c);

// Exhaustive rainbow copy counting on graph systems: |V(H)| <= 6, n <= 60.
inline constexpr int kCountMaxTemplateVertices = 6;
inline constexpr int kCountMaxHostVertices = 60;

// Injective vertex maps times injective color assignments realising (H, psi).
long long count_rainbow_copies(const GraphSystem& G, const Multigraph& H, const PreColoring& psi);
// Distinct realised copies: sets of (host pair, color) triples.
long long count_rainbow_copies_unordered(const GraphSystem& G, const Multigraph& H,
                                         const PreColoring& psi);

}  // namespace rainbow
