#include <numeric>

#include "doctest.h"
#include "rainbow/errors.hpp"
#include "rainbow/regularity.hpp"
#include "rainbow/sampling.hpp"
#include "support.hpp"

using namespace rainbow;
using namespace testing;

TEST_CASE("complete bipartite graph is recovered exactly") {
  GraphSystem G(4, 1);
  for (int u : {0, 1})
    for (int v : {2, 3}) G.add_edge(1, u, v);
  const auto r = weak_regularity_partition(G, 2, 0, 1e-9);
  CHECK(r.parts <= 2);
  CHECK(r.certificate.upper <= 1e-12);
}

TEST_CASE("single edge on one part") {
  GraphSystem G(2, 1);
  G.add_edge(1, 0, 1);
  const auto r = weak_regularity_partition(G, 1, 0);
  CHECK(r.parts == 1);
  CHECK(r.certificate.lower == doctest::Approx(0.125));
  CHECK(r.certificate.upper == doctest::Approx(0.125));
}

TEST_CASE("partition size, rounds and certificate") {
  Gen g(50);
  for (int trial = 0; trial < 6; ++trial) {
    const int parts = 1 << g.integer(1, 4);
    const auto G = g.graph_system(60, 2, 0.5);
    const auto r = weak_regularity_partition(G, parts, trial);
    CHECK(r.parts <= parts);
    CHECK(*std::max_element(r.cell_of.begin(), r.cell_of.end()) == r.parts - 1);
    CHECK(r.certificate.lower <= r.certificate.upper + 1e-12);
    for (std::size_t i = 1; i < r.rounds.size(); ++i) {
      CHECK(r.rounds[i].residual_l2 <= r.rounds[i - 1].residual_l2 + 1e-12);
      CHECK(r.rounds[i].parts >= r.rounds[i - 1].parts);
    }
    CHECK(r.rounds.size() <= static_cast<std::size_t>(std::ceil(std::log2(parts))) * 2);
  }
}

TEST_CASE("regularity bound on a random graph") {
  Gen g(51);
  const auto G = g.graph_system(120, 2, 0.5);
  const auto r = weak_regularity_partition(G, 64, 1);
  CHECK(r.certificate.upper <= weak_regularity_bound(from_graph_system(G), 1, 64));
}

TEST_CASE("equitable refinement") {
  const std::vector<double> masses{0.5, 0.3, 0.2};
  const auto P = equitable_refine(masses, 5);
  std::vector<double> cell(5, 0.0), source(3, 0.0);
  for (const auto& f : P.fragments) {
    cell[f.cell] += f.mass;
    source[f.source] += f.mass;
  }
  for (double c : cell) CHECK(c == doctest::Approx(0.2));
  for (int p = 0; p < 3; ++p) CHECK(source[p] == doctest::Approx(masses[p]));

  const std::vector<double> eq(4, 0.25);
  const auto I = equitable_refine(eq, 4);
  REQUIRE(I.fragments.size() == 4);
  for (int p = 0; p < 4; ++p) CHECK(I.fragments[p].cell == p);

  Gen g(52);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = g.integer(1, 6), mp = g.integer(m, 12);
    const auto x = g.simplex(m, true);
    const auto Q = equitable_refine(x, mp);
    std::vector<double> c(mp, 0.0);
    std::vector<int> pieces(m, 0);
    for (const auto& f : Q.fragments) {
      c[f.cell] += f.mass;
      ++pieces[f.source];
    }
    for (double v : c) CHECK(v == doctest::Approx(1.0 / mp).epsilon(1e-9));
  }
  CHECK_THROWS_AS(equitable_refine(masses, 2), ValidationError);
}

TEST_CASE("equitable overlay bookkeeping bound") {
  Gen g(53);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = g.integer(1, 2), m = g.integer(2, 5);
    const auto W = g.general(k, m);
    const int cells = g.integer(1, m - 1);
    std::vector<int> q(m);
    for (int a = 0; a < m; ++a) q[a] = a < cells ? a : g.integer(0, cells - 1);
    const int mp = g.integer(m, 8);
    const auto ov = equitable_overlay(W, q, mp);
    const auto WQ = step_by_cells(W, q);
    const double dq = d_box_interval(W, WQ).upper;
    const double dp = d_box_interval(ov.fine, ov.stepped).lower;
    CHECK(dp <= 2.0 * dq + 2.0 * k * cells / double(mp) + 1e-12);
  }
}

TEST_CASE("vertex stepping keeps the shape") {
  Gen g(54);
  const auto W = g.general(2, 5);
  const std::vector<int> cells{0, 0, 1, 1, 1};
  const auto S = step_by_cells(W, cells);
  CHECK(S.parts() == 5);
  CHECK(S.block(3)(0, 2) == S.block(3)(1, 4));
}
