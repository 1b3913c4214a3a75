// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rainbow/cutnorm.hpp"
#include "rainbow/density.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extremal.hpp"
#include "rainbow/regularity.hpp"
#include "rainbow/sampling.hpp"
#include "rainbow/search.hpp"
#include "support.hpp"

using namespace rainbow;
using namespace testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome star_densities() {
  std::string d;
  bool ok = true;
  const std::array<std::array<int, 2>, 2> cases{{{2, 2}, {3, 3}}};
  const std::array<double, 2> want{0.25, 4.0 / 9.0};
  const std::array<double, 2> tol{1e-9, 1e-6};
  for (int i = 0; i < 2; ++i) {
    const int leaves = cases[i][0], k = cases[i][0], m = cases[i][1];
    const auto t0 = Clock::now();
    const double v = pi_star_tree(star(leaves), empty_psi(k), k, m).value;
    const double secs = seconds_since(t0);
    ok = ok && std::abs(v - want[i]) <= tol[i] && secs <= 60.0;
    d += "K1," + std::to_string(leaves) + "=" + fmt("%.9f", v) + " (" + fmt("%.2f", secs) + "s) ";
  }
  return {ok, d};
}

Outcome bipartite_construction() {
  bool ok = true;
  std::string d;
  for (auto [k, l] : std::array<std::pair<int, int>, 2>{{{3, 2}, {4, 3}}}) {
    const auto B = construction_bipartite(k, l);
    const auto O = moebius_overline(B);
    double low = 1.0;
    for (ColorSet I = 0; I < B.set_count(); ++I) low = std::min(low, O[I](0, 0));
    const double t = rainbow_density(parallel_edges(l), empty_psi(k), B);
    bool dens = true;
    for (Color c = 1; c <= k; ++c) dens = dens && edge_density(B, c) == double(l - 1) / k;
    ok = ok && low >= -1e-12 && t == 0.0 && dens;
    d += "(" + std::to_string(k) + "," + std::to_string(l) + ") min overline " + fmt("%.3g", low) +
         " t*=" + fmt("%.3g", t) + (dens ? " density ok " : " density off ");
  }
  return {ok, d};
}

Outcome moebius_identities() {
  Gen g(1001);
  double prod = 0.0, rec = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = g.integer(1, 4), m = g.integer(1, 5);
    const auto W = g.classical(k, m);
    const auto O = moebius_overline(W);
    for (ColorSet I = 0; I < W.set_count(); ++I)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          double p = 1.0;
          for (Color c = 1; c <= k; ++c) p *= contains(I, c) ? W.single(c)(a, b) : 1.0 - W.single(c)(a, b);
          prod = std::max(prod, std::abs(O[I](a, b) - p));
        }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int k = g.integer(1, 4), m = g.integer(1, 5);
    const auto W = g.general(k, m);
    const auto R = reconstruct_from_overline(moebius_overline(W));
    for (ColorSet I = 0; I < W.set_count(); ++I) rec = std::max(rec, R[I].max_abs_diff(W.block(I)));
  }
  return {prod <= 1e-10 && rec <= 1e-12,
          "product max err " + fmt("%.2e", prod) + ", reconstruction max err " + fmt("%.2e", rec)};
}

// Every multigraph with <= 3 edges from the family, with every valid partial
// pre-coloring.
std::vector<TemplateCase> all_precolored(int k) {
  std::vector<TemplateCase> out;
  std::vector<Multigraph> shapes;
  for (const auto& t : default_template_family(k))
    if (t.psi.assignments.empty()) shapes.push_back(t.H);
  for (const Multigraph& H : shapes) {
    const int E = H.edge_count();
    std::vector<int> c(E, 0);
    while (true) {
      PreColoring psi{k, {}, true};
      for (int e = 0; e < E; ++e)
        if (c[e]) psi.assignments[H.edges()[e].id] = c[e];
      try {
        psi.validate(H);
        out.push_back({H, psi});
      } catch (const ValidationError&) {
      }
      int i = 0;
      while (i < E && c[i] == k) c[i++] = 0;
      if (i == E) break;
      ++c[i];
    }
  }
  return out;
}

Outcome counting_lemma() {
  Gen g(1004);
  int violations = 0;
  long long checks = 0;
  double worst = -1.0;
  std::array<std::vector<TemplateCase>, 4> family;
  for (int k = 1; k <= 3; ++k) family[k] = all_precolored(k);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = g.integer(1, 3), m = g.integer(1, 5);
    const auto W = g.admissible(k, m);
    const auto U = trial % 2 ? g.admissible(k, m, W.sizes()) : g.nearby(W, g.uniform(0.0, 0.5));
    const double d = d_box(W, U);
    for (const auto& t : family[k]) {
      const double diff = std::abs(rainbow_density(t.H, t.psi, W) - rainbow_density(t.H, t.psi, U));
      const double bound = t.H.edge_count() * d;
      ++checks;
      if (diff > bound + 1e-12) ++violations;
      if (bound > 0) worst = std::max(worst, diff / bound);
    }
  }
  return {violations == 0, std::to_string(checks) + " checks, " + std::to_string(violations) +
                               " violations, max ratio " + fmt("%.3f", worst)};
}

std::pair<Multigraph, PreColoring> tuple_template(const std::array<ColorSet, 3>& sets, int k) {
  const std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
  Multigraph H(3);
  PreColoring psi{k, {}, false};
  for (int p = 0; p < 3; ++p)
    for (Color c = 1; c <= k; ++c)
      if (contains(sets[p], c)) psi.assignments[H.add_edge(pairs[p].first, pairs[p].second)] = c;
  return {H, psi};
}

std::array<ColorSet, 3> tuple_of(int code) {
  return {ColorSet(code & 3), ColorSet((code >> 2) & 3), ColorSet((code >> 4) & 3)};
}

Outcome induced_relation() {
  Gen g(1005);
  double rel = 0.0, unity = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto U = g.general(2, g.integer(1, 4));
    std::array<double, 64> induced{};
    double all = 0.0;
    for (int code = 0; code < 64; ++code) {
      auto [H, psi] = tuple_template(tuple_of(code), 2);
      induced[code] = induced_density(H, psi, U);
      all += induced[code];
    }
    unity = std::max(unity, std::abs(all - 1.0));
    for (int code = 0; code < 64; ++code) {
      auto [H, psi] = tuple_template(tuple_of(code), 2);
      double sum = 0.0;
      for (int sup = 0; sup < 64; ++sup)
        if ((sup & code) == code) sum += induced[sup];
      rel = std::max(rel, std::abs(colored_density(H, psi, U) - sum));
    }
  }
  return {rel <= 1e-9 && unity <= 1e-9,
          "relation max err " + fmt("%.2e", rel) + ", partition of unity max err " + fmt("%.2e", unity)};
}

// Marginal of the intersection block: t_K2(W_I).
double edge_density_of_block(const StepGraphonSystem& W, ColorSet I) {
  double t = 0.0;
  for (int a = 0; a < W.parts(); ++a)
    for (int b = 0; b < W.parts(); ++b) t += W.sizes()[a] * W.sizes()[b] * W.block(I)(a, b);
  return t;
}

Outcome sampling_fidelity() {
  Gen g(1006);
  const int n = 2000;
  int misses = 0, checks = 0;
  double worst = 0.0;
  double loose = 0.0;  // against t_K2(W_I) without conditioning on the labels
  for (int trial = 0; trial < 20; ++trial) {
    const int k = g.integer(1, 3), m = g.integer(1, 4);
    const auto W = g.admissible(k, m);
    const auto S = sample_random_graph(n, W, 5000 + trial);
    std::vector<double> count(m, 0.0);
    for (int x : S.labels) count[x] += 1.0;
    for (ColorSet I = 1; I < W.set_count(); ++I) {
      // Given the labels, edges of block pair (a,b) are binomial.
      std::vector<double> edges(std::size_t(m) * m, 0.0);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (S.graph.in_intersection(I, u, v)) {
            const int a = std::min(S.labels[u], S.labels[v]), b = std::max(S.labels[u], S.labels[v]);
            edges[a * m + b] += 1.0;
          }
      double mean = 0.0, var = 0.0, total = 0.0;
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
          const double N = a == b ? count[a] * (count[a] - 1) / 2 : count[a] * count[b];
          const double p = W.block(I)(a, b);
          const double sd = std::sqrt(N * p * (1.0 - p));
          const double dev = std::abs(edges[a * m + b] - p * N);
          const double z = sd > 0 ? dev / sd : (dev > 1e-9 ? 1e300 : 0.0);
          ++checks;
          worst = std::max(worst, z);
          misses += z > 4.0;
          mean += p * N;
          var += N * p * (1.0 - p);
          total += edges[a * m + b];
        }
      const double z = var > 0 ? std::abs(total - mean) / std::sqrt(var) : (std::abs(total - mean) > 1e-9 ? 1e300 : 0.0);
      ++checks;
      worst = std::max(worst, z);
      misses += z > 4.0;
      const double pairs = n * (n - 1) / 2.0, t = edge_density_of_block(W, I);
      if (t > 0 && t < 1)
        loose = std::max(loose, std::abs(S.graph.intersection_count(I) - t * pairs) / std::sqrt(pairs * t * (1 - t)));
    }
  }

  int complements = 0;
  for (int run = 0; run < 20; ++run) {
    const int m = g.integer(1, 4);
    StepGraphonSystem C(2, g.simplex(m));
    C.block(1) = g.symmetric(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) C.block(2)(a, b) = 1.0 - C.block(1)(a, b);
    const auto G = sample_random_graph(n, C, 7000 + run).graph;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v) ok = G.has_edge(1, u, v) != G.has_edge(2, u, v);
    complements += ok;
  }

  StepGraphonSystem a(2, {1.0});
  a.block(1)(0, 0) = 0.6;
  a.block(2)(0, 0) = 0.5;
  a.block(3)(0, 0) = 0.3;
  const std::vector<StepGraphonSystem> systems{a, construction_lemma72(3), construction_bipartite(3, 2)};
  const std::vector<int> ns{100, 200, 400};
  bool monotone = true;
  std::string trend;
  for (const auto& W : systems) {
    const auto med = median_upper_by_n(convergence_trace(W, ns, 10, 0, false), ns);
    monotone = monotone && med[1] <= med[0] && med[2] <= med[1];
    trend += " [" + fmt("%.3f", med[0]) + "," + fmt("%.3f", med[1]) + "," + fmt("%.3f", med[2]) + "]";
  }
  return {misses == 0 && complements == 20 && monotone,
          std::to_string(checks - misses) + "/" + std::to_string(checks) +
              " label-conditional marginals within 4 sd (max " + fmt("%.2f", worst) + "; unconditional max " +
              fmt("%.1f", loose) + "), complement " + std::to_string(complements) + "/20, trend" + trend};
}

Outcome thm14_tightness() {
  Gen g(1007);
  int built = 0, free_ok = 0;
  for (int k = 1; k <= 4; ++k)
    for (int rep = 0; rep < 3; ++rep) {
      // 1 - sqrt(alpha_i) = x_i * scale with x on the simplex, scale >= 1.
      const auto x = g.simplex(k);
      const double scale = rep == 0 ? 1.0 : g.uniform(1.0, 1.3);
      std::vector<double> alpha(k);
      for (int i = 0; i < k; ++i) alpha[i] = std::pow(std::max(0.0, 1.0 - std::min(1.0, x[i] * scale)), 2);
      const auto G = construction_thm14(50, alpha);
      ++built;
      free_ok += !find_rainbow_copy(G, star(k), empty_psi(k)).has_value();
    }

  std::vector<std::vector<Multigraph>> trees(4);
  trees[1] = {path(1)};
  trees[2] = {path(2)};
  trees[3] = {path(3), star(3)};
  int runs = 0, failures = 0;
  for (int k = 1; k <= 3; ++k)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto x = g.simplex(k);
      const double cover = g.uniform(0.0, 0.8);
      std::vector<Table> f;
      for (int i = 0; i < k; ++i) {
        const double alpha = std::pow(1.0 - x[i] * cover, 2);
        f.push_back(Table(1, std::min(1.0, alpha + 0.1)));
      }
      const auto G = sample_random_graph(60, span(f, {1.0}), 9000 + 100 * k + seed).graph;
      for (const auto& T : trees[k]) {
        ++runs;
        failures += !find_rainbow_copy(G, T, empty_psi(k)).has_value();
      }
    }
  return {free_ok == built && failures == 0,
          std::to_string(free_ok) + "/" + std::to_string(built) + " constructions free, " +
              std::to_string(runs - failures) + "/" + std::to_string(runs) + " sampled systems contain the tree"};
}

Outcome cut_norm_checks() {
  Gen g(1008);
  int agree = 0, exceed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = g.integer(2, 10), t = g.integer(1, 3);
    std::vector<Table> tuple;
    for (int i = 0; i < t; ++i) tuple.push_back(g.symmetric(m, -1.0, 1.0));
    const auto s = g.simplex(m);
    const double ex = cut_norm_exact(tuple, s).value;
    const double h = cut_norm_heuristic(tuple, s, 20, trial).value;
    exceed += h > ex + 1e-12;
    agree += std::abs(h - ex) <= 1e-9;
  }
  int broken = 0, tested = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = g.integer(1, 2), m = g.integer(2, 10);
    const auto W = g.general(k, m);
    const auto Z0 = g.general(k, m);
    StepGraphonSystem Z(k, W.sizes());
    for (ColorSet I = 1; I < Z.set_count(); ++I) Z.block(I) = Z0.block(I);
    const int cells = g.integer(1, m - 1);
    std::vector<int> coarse(m);
    for (int a = 0; a < m; ++a) coarse[a] = a < cells ? a : g.integer(0, cells - 1);
    const double full = cut_norm_exact(difference_tables(W, Z), W.sizes()).value;
    const auto WP = stepping(W, coarse), ZP = stepping(Z, coarse);
    const double stepped = cut_norm_exact(difference_tables(WP, ZP), WP.sizes()).value;
    ++tested;
    broken += stepped > full + 1e-12;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int k = g.integer(1, 3), m = g.integer(1, 6);
    std::vector<Table> tuple;
    for (ColorSet I = 1; I < (ColorSet{1} << k); ++I) tuple.push_back(g.symmetric(m, -1.0, 1.0));
    const auto s = g.simplex(m);
    const double joint = cut_norm_exact(tuple, s).value;
    double sum = 0.0;
    for (const Table& t : tuple) sum += cut_norm_exact(std::vector<Table>{t}, s).value;
    ++tested;
    broken += sum / std::pow(2.0, k) > joint + 1e-12 || joint > sum + 1e-12;
  }
  return {agree >= 90 && exceed == 0 && broken == 0,
          "heuristic agrees on " + std::to_string(agree) + "/100, exceeds exact " + std::to_string(exceed) +
              ", inequality failures " + std::to_string(broken) + "/" + std::to_string(tested)};
}

Outcome regularity_check() {
  Gen g(1009);
  const auto G = g.graph_system(300, 2, 0.5);
  const auto t0 = Clock::now();
  const auto R = weak_regularity_partition(G, 64, 1, 0.0);
  const double secs = seconds_since(t0);
  const double bound = weak_regularity_bound(from_graph_system(G), 1, 64);
  return {R.parts <= 64 && R.certificate.upper <= bound && secs <= 300.0,
          std::to_string(R.parts) + " parts, certified [" + fmt("%.4f", R.certificate.lower) + ", " +
              fmt("%.4f", R.certificate.upper) + "] vs bound " + fmt("%.4f", bound) + " (" + fmt("%.1f", secs) +
              "s)"};
}

Outcome extremal_check() {
  const long long par = exact_extremal_number(3, 2, parallel_edges(2), empty_psi(2)).value;
  const long long p2 = exact_extremal_number(4, 2, path(2), empty_psi(2)).value;
  std::ifstream in(std::string(RAINBOW_DATA_DIR) + "/extremal_golden.json");
  if (!in) return {false, "golden file missing"};
  const long long golden = nlohmann::json::parse(in).at("path2_n4_k2").get<long long>();
  return {par == 1 && p2 == golden, "parallel n=3 k=2: " + std::to_string(par) + ", path n=4 k=2: " +
                                        std::to_string(p2) + " (golden " + std::to_string(golden) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"star densities", star_densities},
      {"bipartite construction", bipartite_construction},
      {"moebius identities", moebius_identities},
      {"counting lemma", counting_lemma},
      {"induced-density relation", induced_relation},
      {"sampling fidelity", sampling_fidelity},
      {"star-freeness tightness", thm14_tightness},
      {"cut norm", cut_norm_checks},
      {"regularity", regularity_check},
      {"tiny extremal numbers", extremal_check},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
