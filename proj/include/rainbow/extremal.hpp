#pragma once

// Rainbow Turan densities of trees at a fixed number of parts: enumerate the
// 0/1 step structures in which the tree has no rainbow homomorphism, then
// maximise the smallest edge density over the part masses.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/combinatorics.hpp"

namespace rainbow {

// Per-color symmetric 0/1 tables over m parts; diagonal cells are loops.
struct ZeroStructure {
  int k = 0;
  int m = 0;
  std::vector<std::vector<std::uint8_t>> tables;  // [color-1][a*m+b]

  bool at(Color c, int a, int b) const { return tables[c - 1][a * m + b] != 0; }
  void set(Color c, int a, int b, bool on);
  // Bit c*C + cell over the upper-triangle cells (a <= b), C = m(m+1)/2.
  std::uint64_t encode() const;
  static ZeroStructure decode(std::uint64_t bits, int k, int m);
  friend bool operator==(const ZeroStructure&, const ZeroStructure&) = default;
};

// True iff no vertex map V(T) -> parts together with an injective extension
// of psi puts every edge on a 1-cell of its color. T must be a forest
// (parallel edges allowed). Exact boolean dynamic program.
bool is_zero_structure(const Multigraph& T, const PreColoring& psi, const ZeroStructure& S);

enum class EnumerationMode { Auto, Exhaustive, Pruned };

inline constexpr int kExhaustiveMaxBits = 24;
inline constexpr int kPrunedMaxBits = 63;

struct EnumerationOptions {
  EnumerationMode mode = EnumerationMode::Auto;
  bool maximal_only = true;
  // One representative per orbit under part permutations and permutations
  // of the colors outside the image of psi.
  bool canonical = true;
};

std::vector<ZeroStructure> enumerate_zero_structures(const Multigraph& T, const PreColoring& psi,
                                                     int k, int m,
                                                     const EnumerationOptions& opt = {});

// f_c(x) = sum_{a,b} table_c[a][b] x_a x_b over the simplex; off-diagonal
// cells appear twice through symmetry, loops once.
struct MinQuadraticProgram {
  int m = 0;
  std::vector<std::vector<std::uint8_t>> forms;  // [c][a*m+b], symmetric 0/1

  int k() const { return static_cast<int>(forms.size()); }
  double value(int c, const std::vector<double>& x) const;
  double min_value(const std::vector<double>& x) const;
  friend bool operator==(const MinQuadraticProgram&, const MinQuadraticProgram&) = default;
};

MinQuadraticProgram program_of(const ZeroStructure& S);

inline constexpr int kOptimizerMaxParts = 32;

struct OptimizerOptions {
  int restarts = 64;
  int iterations = 400;
  std::uint64_t seed = 0;
  bool polish = true;
};

struct OptimizeResult {
  double value = 0.0;
  std::vector<double> point;
  std::vector<int> active;  // colors (1-based) within 1e-9 of the minimum
};

OptimizeResult optimize_min_density(const MinQuadraticProgram& P, const OptimizerOptions& opt = {});

// Euclidean projection onto the standard simplex.
std::vector<double> project_to_simplex(const std::vector<double>& y);

struct PiStarResult {
  double value = 0.0;
  ZeroStructure structure;
  std::vector<double> point;
  std::size_t structures = 0;
};

// Lower bound on the rainbow Turan density (exact once m reaches the
// structure bound). Throws ScaleGuardError when enumeration is infeasible.
PiStarResult pi_star_tree(const Multigraph& T, const PreColoring& psi, int k, int m,
                          const OptimizerOptions& opt = {},
                          const std::function<void(const ZeroStructure&, const MinQuadraticProgram&,
                                                   const OptimizeResult&)>& each = {});

// JSON (tables plus monomials) and a text rendering of the program.
std::string export_program_json(const MinQuadraticProgram& P);
std::string export_program_text(const MinQuadraticProgram& P);
MinQuadraticProgram parse_program_json(const std::string& text);

}  // namespace rainbow
