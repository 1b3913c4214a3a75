#include "rainbow/sampling.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

WeightedGraphSystem::WeightedGraphSystem(StepGraphonSystem profile, std::vector<int> labels)
    : profile_(std::move(profile)), labels_(std::move(labels)) {
  for (int l : labels_) require(l >= 0 && l < profile_.parts(), "vertex label outside the parts");
}

Table WeightedGraphSystem::table(ColorSet I) const {
  const int n = vertex_count();
  Table t(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) t(u, v) = weight(I, u, v);
  return t;
}

std::vector<int> sample_labels(int n, const StepGraphonSystem& W, std::uint64_t seed) {
  require(n >= 1, "n must be positive");
  const auto& s = W.sizes();
  std::vector<double> cum(s.size());
  std::partial_sum(s.begin(), s.end(), cum.begin());
  int last = 0;
  for (int a = 0; a < W.parts(); ++a)
    if (s[a] > 0.0) last = a;
  const std::uint64_t key = stream_key(seed, 0);
  std::vector<int> labels(n);
  for (int u = 0; u < n; ++u) {
    const double x = to_unit(counter_hash(key, static_cast<std::uint64_t>(u)));
    int a = 0;
    while (a < last && !(x < cum[a] && s[a] > 0.0)) ++a;
    labels[u] = a;
  }
  return labels;
}

WeightedGraphSystem sample_weighted(int n, const StepGraphonSystem& W, std::uint64_t seed) {
  W.validate();
  return WeightedGraphSystem(W, sample_labels(n, W, seed));
}

GraphSystem sample_graph_system(const WeightedGraphSystem& H, std::uint64_t seed) {
  const StepGraphonSystem& W = H.profile();
  const AdmissibilityReport rep = is_admissible(W);
  require(rep.admissible, "system is not admissible: overline_{" + to_text(rep.set) + "}(" +
                              std::to_string(rep.row) + "," + std::to_string(rep.col) +
                              ") = " + std::to_string(rep.value));
  const int m = W.parts(), n = H.vertex_count();
  const std::size_t sets = W.set_count();
  // Cumulative overline weights per cell, in ColorSet order.
  const OverlineSystem O = moebius_overline(W);
  std::vector<double> cum(std::size_t(m) * m * sets);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double acc = 0.0;
      for (ColorSet J = 0; J < sets; ++J) {
        acc += std::max(0.0, O.tables[J](a, b));
        cum[(std::size_t(a) * m + b) * sets + J] = acc;
      }
    }

  GraphSystem G(n, W.colors());
  const std::uint64_t key = stream_key(seed, 1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double* c = &cum[(std::size_t(H.labels()[u]) * m + H.labels()[v]) * sets];
      const double x = to_unit(counter_hash(key, std::uint64_t(u) * n + v)) * c[sets - 1];
      ColorSet J = 0;
      while (J + 1 < sets && !(x < c[J])) ++J;
      if (J) G.set_pair(u, v, J);
    }
  return G;
}

SampledGraph sample_random_graph(int n, const StepGraphonSystem& W, std::uint64_t seed) {
  const WeightedGraphSystem H = sample_weighted(n, W, seed);
  return {sample_graph_system(H, seed), H.labels()};
}

double latent_coupling_upper(const StepGraphonSystem& W, const SampledGraph& G) {
  const StepGraphonSystem U = from_graph_system(G.graph);
  const int n = G.graph.vertex_count();
  std::vector<int> ow(W.parts()), ou(n);
  std::iota(ow.begin(), ow.end(), 0);
  std::iota(ou.begin(), ou.end(), 0);
  std::stable_sort(ou.begin(), ou.end(), [&](int x, int y) { return G.labels[x] < G.labels[y]; });
  return coupling_upper_bound(W, U, northwest_coupling(W.sizes(), U.sizes(), ow, ou));
}

std::vector<TraceRow> convergence_trace(const StepGraphonSystem& W, const std::vector<int>& ns,
                                        int seeds, std::uint64_t base_seed, bool with_lower) {
  require(seeds >= 1, "need at least one seed");
  std::vector<TemplateCase> family;
  if (with_lower) family = default_template_family(W.colors());
  std::vector<TraceRow> rows;
  for (int n : ns) {
    require(n >= 1, "n must be positive");
    for (int r = 0; r < seeds; ++r) {
      const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(r);
      const SampledGraph G = sample_random_graph(n, W, seed);
      TraceRow row{n, seed, {}};
      row.delta.upper = latent_coupling_upper(W, G);
      if (with_lower) row.delta.lower = delta_box_lower(W, from_graph_system(G.graph), family);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<double> median_upper_by_n(const std::vector<TraceRow>& rows, const std::vector<int>& ns) {
  std::vector<double> out;
  for (int n : ns) {
    std::vector<double> v;
    for (const TraceRow& r : rows)
      if (r.n == n) v.push_back(r.delta.upper);
    require(!v.empty(), "no rows for n = " + std::to_string(n));
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    out.push_back(v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]));
  }
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "n,seed,delta_lower,delta_upper\n";
  char buf[64];
  for (const TraceRow& r : rows) {
    out << r.n << ',' << r.seed;
    std::snprintf(buf, sizeof buf, ",%.12f,%.12f\n", r.delta.lower, r.delta.upper);
    out << buf;
  }
}

}  // namespace rainbow
