#include "doctest.h"
#include "rainbow/errors.hpp"
#include "rainbow/extremal.hpp"
#include "support.hpp"

using namespace rainbow;
using namespace testing;

namespace {

ZeroStructure blank(int k, int m) {
  return ZeroStructure{k, m, std::vector<std::vector<std::uint8_t>>(k, std::vector<std::uint8_t>(m * m, 0))};
}

ZeroStructure star_free(int k) {
  ZeroStructure S = blank(k, k);
  for (Color c = 1; c <= k; ++c)
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (a != c - 1 && b != c - 1) S.set(c, a, b, true);
  return S;
}

// Direct check over all vertex maps and rainbow extensions.
bool oracle_zero(const Multigraph& T, const PreColoring& psi, const ZeroStructure& S) {
  const int n = T.vertex_count();
  for (const auto& colors : oracle_extensions(T, psi, S.k)) {
    std::vector<int> x(n, 0);
    while (true) {
      bool ok = true;
      for (int e = 0; e < T.edge_count() && ok; ++e) ok = S.at(colors[e], x[T.edges()[e].u], x[T.edges()[e].v]);
      if (ok) return false;
      int i = 0;
      while (i < n && x[i] == S.m - 1) x[i++] = 0;
      if (i == n) break;
      ++x[i];
    }
  }
  return true;
}

MinQuadraticProgram random_program(Gen& g, int m, int k) {
  MinQuadraticProgram P{m, {}};
  for (int c = 0; c < k; ++c) {
    std::vector<std::uint8_t> t(m * m, 0);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b)
        if (g.coin()) t[a * m + b] = t[b * m + a] = 1;
    P.forms.push_back(t);
  }
  return P;
}

double grid_oracle(const MinQuadraticProgram& P) {
  const int m = P.m;
  double best = -1.0;
  std::vector<double> arg;
  const int steps = 1000;
  if (m == 1) return P.min_value({1.0});
  for (int i = 0; i <= steps; ++i) {
    if (m == 2) {
      std::vector<double> x{i / double(steps), 1.0 - i / double(steps)};
      if (double v = P.min_value(x); v > best) best = v, arg = x;
      continue;
    }
    for (int j = 0; i + j <= steps; ++j) {
      std::vector<double> x{i / double(steps), j / double(steps), (steps - i - j) / double(steps)};
      if (double v = P.min_value(x); v > best) best = v, arg = x;
    }
  }
  // Local refinement on a 1e-5 grid around the best grid point.
  for (double h : {1e-4, 1e-5}) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          if (a == b || arg[b] < h) continue;
          auto y = arg;
          y[a] += h;
          y[b] -= h;
          if (double v = P.min_value(y); v > best + 1e-15) best = v, arg = y, moved = true;
        }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("structure encoding round trip") {
  Gen g(70);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = g.integer(1, 3), m = g.integer(1, 4);
    ZeroStructure S = blank(k, m);
    for (Color c = 1; c <= k; ++c)
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) S.set(c, a, b, g.coin());
    CHECK(ZeroStructure::decode(S.encode(), k, m) == S);
  }
}

TEST_CASE("zero structure examples") {
  for (int k = 2; k <= 4; ++k) CHECK(is_zero_structure(star(k), empty_psi(k), star_free(k)));
  ZeroStructure ones = blank(3, 2);
  for (Color c = 1; c <= 3; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) ones.set(c, a, b, true);
  CHECK_FALSE(is_zero_structure(path(3), empty_psi(3), ones));
  CHECK_FALSE(is_zero_structure(star(2), empty_psi(3), ones));

  ZeroStructure loops = blank(2, 2);
  loops.set(1, 1, 1, true);
  loops.set(2, 0, 0, true);
  CHECK(is_zero_structure(star(2), empty_psi(2), loops));
  Multigraph cyc(3);
  cyc.add_edge(0, 1);
  cyc.add_edge(1, 2);
  cyc.add_edge(0, 2);
  CHECK_THROWS_AS(is_zero_structure(cyc, empty_psi(3), ones), ValidationError);
}

TEST_CASE("zero test agrees with the direct check") {
  Gen g(71);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = g.integer(1, 3), m = g.integer(1, 3);
    Multigraph T = g.tree(g.integer(1, 4));
    if (trial % 5 == 0 && T.edge_count() > 0) T.add_edge(T.edges()[0].u, T.edges()[0].v);
    PreColoring psi = empty_psi(k);
    if (T.edge_count() > 0 && g.coin(0.3)) psi.assignments[T.edges()[0].id] = g.integer(1, k);
    ZeroStructure S = blank(k, m);
    for (Color c = 1; c <= k; ++c)
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) S.set(c, a, b, g.coin(0.6));
    CHECK(is_zero_structure(T, psi, S) == oracle_zero(T, psi, S));
  }
}

TEST_CASE("enumeration counts for the two-edge star on one part") {
  EnumerationOptions all{EnumerationMode::Auto, false, false};
  CHECK(enumerate_zero_structures(star(2), empty_psi(2), 2, 1, all).size() == 3);
  EnumerationOptions maximal{EnumerationMode::Auto, true, false};
  CHECK(enumerate_zero_structures(star(2), empty_psi(2), 2, 1, maximal).size() == 2);
  CHECK(enumerate_zero_structures(star(2), empty_psi(2), 2, 1).size() == 1);
  // With color 1 fixed by psi only part relabelling remains.
  PreColoring psi{2, {{0, 1}}, true};
  CHECK(enumerate_zero_structures(star(2), psi, 2, 1).size() == 2);
}

TEST_CASE("enumeration contains the star-free structure") {
  const auto list = enumerate_zero_structures(star(2), empty_psi(2), 2, 2);
  const ZeroStructure target = star_free(2);
  bool found = false;
  for (const auto& S : list) {
    // Compare up to swapping parts and swapping colors.
    for (int pswap = 0; pswap < 2; ++pswap)
      for (int cswap = 0; cswap < 2; ++cswap) {
        bool same = true;
        for (Color c = 1; c <= 2; ++c)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
              const Color c2 = cswap ? 3 - c : c;
              const int a2 = pswap ? 1 - a : a, b2 = pswap ? 1 - b : b;
              same = same && S.at(c2, a2, b2) == target.at(c, a, b);
            }
        found = found || same;
      }
  }
  CHECK(found);
}

TEST_CASE("too many edges for the colors") {
  const auto list = enumerate_zero_structures(path(3), empty_psi(2), 2, 2);
  REQUIRE(list.size() == 1);
  for (Color c = 1; c <= 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(list[0].at(c, a, b));
}

TEST_CASE("exhaustive and pruned enumeration agree") {
  Gen g(72);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = g.integer(2, 3), m = g.integer(1, 3);
    if (k * m * (m + 1) / 2 > 18) continue;
    const Multigraph T = g.tree(g.integer(2, k + 1));
    for (bool maximal : {true, false}) {
      EnumerationOptions ex{EnumerationMode::Exhaustive, maximal, true};
      EnumerationOptions pr{EnumerationMode::Pruned, maximal, true};
      const auto a = enumerate_zero_structures(T, empty_psi(k), k, m, ex);
      const auto b = enumerate_zero_structures(T, empty_psi(k), k, m, pr);
      CHECK(a == b);
      for (const auto& S : a) CHECK(oracle_zero(T, empty_psi(k), S));
    }
  }
  EnumerationOptions ex{EnumerationMode::Exhaustive, true, true};
  CHECK_THROWS_AS(enumerate_zero_structures(star(3), empty_psi(3), 3, 4, ex), ScaleGuardError);
}

TEST_CASE("optimizer examples") {
  MinQuadraticProgram P{2, {{0, 0, 0, 1}, {1, 0, 0, 0}}};
  const auto r = optimize_min_density(P);
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(r.point[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.active == std::vector<int>{1, 2});

  MinQuadraticProgram ones{3, {std::vector<std::uint8_t>(9, 1), std::vector<std::uint8_t>(9, 1)}};
  CHECK(optimize_min_density(ones).value == doctest::Approx(1.0));
  MinQuadraticProgram am{2, {{0, 1, 1, 0}}};
  CHECK(optimize_min_density(am).value == doctest::Approx(0.5).epsilon(1e-9));

  MinQuadraticProgram asym{2, {{0, 1, 0, 0}}};
  CHECK_THROWS_AS(optimize_min_density(asym), ValidationError);
}

TEST_CASE("optimizer matches a simplex grid on small programs") {
  Gen g(73);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = g.integer(1, 3), k = g.integer(1, 3);
    const auto P = random_program(g, m, k);
    OptimizerOptions opt;
    opt.seed = trial;
    const auto r = optimize_min_density(P, opt);
    CHECK(std::abs(r.value - grid_oracle(P)) <= 1e-5);
    double s = 0.0;
    for (double x : r.point) {
      CHECK(x >= 0.0);
      s += x;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.value - P.min_value(r.point)) <= 1e-10);
  }
}

TEST_CASE("optimizer is deterministic") {
  Gen g(74);
  const auto P = random_program(g, 5, 3);
  OptimizerOptions opt;
  opt.seed = 9;
  const auto a = optimize_min_density(P, opt), b = optimize_min_density(P, opt);
  CHECK(a.value == b.value);
  CHECK(a.point == b.point);
}

TEST_CASE("simplex projection") {
  CHECK(project_to_simplex({0.2, 0.3, 0.5}) == std::vector<double>{0.2, 0.3, 0.5});
  const auto p = project_to_simplex({2.0, 0.0, -1.0});
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[2] == 0.0);
}

TEST_CASE("pi star of stars") {
  const auto r2 = pi_star_tree(star(2), empty_psi(2), 2, 2);
  CHECK(r2.value == doctest::Approx(0.25).epsilon(1e-6));
  const auto r3 = pi_star_tree(star(3), empty_psi(3), 3, 3);
  CHECK(std::abs(r3.value - 4.0 / 9.0) <= 1e-6);
  CHECK(is_zero_structure(star(3), empty_psi(3), r3.structure));
  CHECK(std::abs(r3.value - program_of(r3.structure).min_value(r3.point)) <= 1e-10);
}

TEST_CASE("pi star is monotone in m and bounded by the star") {
  for (int k = 2; k <= 3; ++k) {
    const Multigraph T = path(k);
    double prev = -1.0;
    for (int m = 1; m <= 3; ++m) {
      if (k * m * (m + 1) / 2 > 18) break;
      const auto r = pi_star_tree(T, empty_psi(k), k, m);
      CHECK(r.value >= prev - 1e-9);
      CHECK(r.value <= std::pow((k - 1.0) / k, 2) + 1e-9);
      CHECK(is_zero_structure(T, empty_psi(k), r.structure));
      prev = r.value;
    }
  }
}

TEST_CASE("program export") {
  MinQuadraticProgram P{2, {{0, 0, 0, 1}, {1, 0, 0, 0}}};
  const auto j = export_program_json(P);
  CHECK(parse_program_json(j) == P);
  const auto text = export_program_text(P);
  CHECK(text.find("f_1 = x_2^2") != std::string::npos);
  CHECK(text.find("f_2 = x_1^2") != std::string::npos);
  MinQuadraticProgram E{0, {}};
  CHECK(parse_program_json(export_program_json(E)) == E);
  MinQuadraticProgram Q{3, {{0, 1, 0, 1, 0, 1, 0, 1, 1}}};
  CHECK(export_program_text(Q).find("2*x_1*x_2 + 2*x_2*x_3 + x_3^2") != std::string::npos);
  CHECK_THROWS_AS(parse_program_json("{\"m\":1}"), ValidationError);
}
