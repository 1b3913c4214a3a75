#include "rainbow/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/parallel.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/simd/kernels.hpp"

namespace rainbow {

void ZeroStructure::set(Color c, int a, int b, bool on) {
  tables[c - 1][a * m + b] = on;
  tables[c - 1][b * m + a] = on;
}

std::uint64_t ZeroStructure::encode() const {
  std::uint64_t bits = 0;
  int pos = 0;
  for (int c = 0; c < k; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b, ++pos)
        if (tables[c][a * m + b]) bits |= std::uint64_t{1} << pos;
  return bits;
}

ZeroStructure ZeroStructure::decode(std::uint64_t bits, int k, int m) {
  ZeroStructure S{k, m, std::vector<std::vector<std::uint8_t>>(k, std::vector<std::uint8_t>(m * m, 0))};
  int pos = 0;
  for (int c = 1; c <= k; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b, ++pos)
        if ((bits >> pos) & 1) S.set(c, a, b, true);
  return S;
}

namespace {

// Boolean homomorphism test for a fixed total coloring, given as pair color
// sets; tables[J] is the cellwise AND of the colors in J.
class HomChecker {
 public:
  HomChecker(const Multigraph& T, int m) : n_(T.vertex_count()), m_(m) {}

  bool has_hom(const std::vector<PairColors>& pairs,
               const std::vector<std::vector<std::uint8_t>>& and_tables) const {
    std::vector<std::vector<std::pair<Vertex, ColorSet>>> adj(n_);
    for (const PairColors& p : pairs) {
      adj[p.u].push_back({p.v, p.colors});
      adj[p.v].push_back({p.u, p.colors});
    }
    std::vector<char> seen(n_, 0);
    for (Vertex r = 0; r < n_; ++r) {
      if (seen[r]) continue;
      std::vector<Vertex> order{r}, parent(n_, -1);
      std::vector<ColorSet> up(n_, 0);
      seen[r] = 1;
      for (std::size_t i = 0; i < order.size(); ++i)
        for (auto [w, J] : adj[order[i]])
          if (!seen[w]) {
            seen[w] = 1;
            parent[w] = order[i];
            up[w] = J;
            order.push_back(w);
          }
      std::vector<std::vector<char>> f(n_);
      for (Vertex v : order) f[v].assign(m_, 1);
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Vertex v = *it;
        if (parent[v] < 0) continue;
        const auto& t = and_tables[up[v]];
        auto& fp = f[parent[v]];
        for (int a = 0; a < m_; ++a) {
          if (!fp[a]) continue;
          bool any = false;
          for (int b = 0; b < m_ && !any; ++b) any = t[a * m_ + b] && f[v][b];
          fp[a] = any;
        }
      }
      if (std::none_of(f[r].begin(), f[r].end(), [](char x) { return x != 0; })) return false;
    }
    return true;
  }

 private:
  int n_, m_;
};

// Distinct pair-set assignments over all rainbow extensions of psi.
std::vector<std::vector<PairColors>> extension_shapes(const Multigraph& T, const PreColoring& psi,
                                                      int k) {
  std::set<std::vector<ColorSet>> seen;
  std::vector<std::vector<PairColors>> out;
  for_each_rainbow_extension(T, psi, k, [&](std::span<const Color> colors) {
    auto pairs = pair_color_sets(T, colors);
    std::vector<ColorSet> key;
    for (const auto& p : pairs) key.push_back(p.colors);
    if (seen.insert(key).second) out.push_back(std::move(pairs));
    return true;
  });
  return out;
}

// Zero test on encoded structures, reusing the extension list.
class ZeroOracle {
 public:
  ZeroOracle(const Multigraph& T, const PreColoring& psi, int k, int m)
      : k_(k), m_(m), checker_(T, m), shapes_(extension_shapes(T, psi, k)) {
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) cells_.push_back({a, b});
  }

  int bits() const { return k_ * static_cast<int>(cells_.size()); }
  const std::vector<std::pair<int, int>>& cells() const { return cells_; }

  bool zero(std::uint64_t mask) const {
    const int C = static_cast<int>(cells_.size());
    std::vector<std::vector<std::uint8_t>> tables(std::size_t{1} << k_,
                                                  std::vector<std::uint8_t>(m_ * m_, 1));
    for (int c = 0; c < k_; ++c)
      for (int x = 0; x < C; ++x) {
        const bool on = (mask >> (c * C + x)) & 1;
        const auto [a, b] = cells_[x];
        for (ColorSet J = 0; J < tables.size(); ++J)
          if (J & (ColorSet{1} << c)) {
            tables[J][a * m_ + b] &= on;
            tables[J][b * m_ + a] &= on;
          }
      }
    for (const auto& pairs : shapes_)
      if (checker_.has_hom(pairs, tables)) return false;
    return true;
  }

 private:
  int k_, m_;
  HomChecker checker_;
  std::vector<std::vector<PairColors>> shapes_;
  std::vector<std::pair<int, int>> cells_;
};

void check_template(const Multigraph& T, const PreColoring& psi, int k) {
  require(is_forest_support(T), "zero structures are defined for trees (forest support)");
  psi.validate(T);
  require(psi.rainbow, "zero structures need a rainbow pre-coloring");
  for (const auto& [id, c] : psi.assignments) require(c >= 1 && c <= k, "color outside [1,k]");
}

std::vector<std::vector<int>> structure_images(int k, int m, const PreColoring& psi,
                                               const std::vector<std::pair<int, int>>& cells) {
  const int C = static_cast<int>(cells.size());
  std::vector<int> cell_index(m * m);
  for (int x = 0; x < C; ++x) {
    cell_index[cells[x].first * m + cells[x].second] = x;
    cell_index[cells[x].second * m + cells[x].first] = x;
  }
  std::vector<Color> movable;
  for (Color c = 1; c <= k; ++c) {
    bool used = false;
    for (const auto& [id, col] : psi.assignments) used = used || col == c;
    if (!used) movable.push_back(c);
  }
  std::vector<std::vector<int>> cell_perms;
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<int> cp(C);
    for (int x = 0; x < C; ++x) cp[x] = cell_index[p[cells[x].first] * m + p[cells[x].second]];
    cell_perms.push_back(std::move(cp));
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> out;
  std::vector<Color> image = movable;
  do {
    std::vector<int> col(k);
    std::iota(col.begin(), col.end(), 0);
    for (std::size_t j = 0; j < movable.size(); ++j) col[movable[j] - 1] = image[j] - 1;
    for (const auto& cp : cell_perms) {
      std::vector<int> t(std::size_t(k) * C);
      for (int c = 0; c < k; ++c)
        for (int x = 0; x < C; ++x) t[c * C + x] = col[c] * C + cp[x];
      out.push_back(std::move(t));
    }
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

bool canonical(std::uint64_t mask, const std::vector<std::vector<int>>& images) {
  for (const auto& t : images) {
    std::uint64_t img = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1)
      img |= std::uint64_t{1} << t[std::countr_zero(rest)];
    if (img < mask) return false;
  }
  return true;
}

}  // namespace

bool is_zero_structure(const Multigraph& T, const PreColoring& psi, const ZeroStructure& S) {
  check_template(T, psi, S.k);
  require(static_cast<int>(S.tables.size()) == S.k, "structure has the wrong number of tables");
  for (const auto& t : S.tables) require(static_cast<int>(t.size()) == S.m * S.m, "table size mismatch");
  const int m = S.m;
  std::vector<std::vector<std::uint8_t>> tables(std::size_t{1} << S.k, std::vector<std::uint8_t>(m * m, 1));
  for (ColorSet J = 1; J < tables.size(); ++J)
    for (int c = 1; c <= S.k; ++c)
      if (contains(J, c))
        for (int x = 0; x < m * m; ++x) tables[J][x] &= S.tables[c - 1][x];
  HomChecker checker(T, m);
  for (const auto& pairs : extension_shapes(T, psi, S.k))
    if (checker.has_hom(pairs, tables)) return false;
  return true;
}

std::vector<ZeroStructure> enumerate_zero_structures(const Multigraph& T, const PreColoring& psi,
                                                     int k, int m, const EnumerationOptions& opt) {
  check_template(T, psi, k);
  require(k >= 1 && k <= kMaxColors, "need between 1 and 8 colors");
  require(m >= 1, "need at least one part");
  const ZeroOracle oracle(T, psi, k, m);
  const int B = oracle.bits();
  EnumerationMode mode = opt.mode;
  if (mode == EnumerationMode::Auto)
    mode = B <= kExhaustiveMaxBits ? EnumerationMode::Exhaustive : EnumerationMode::Pruned;
  if (mode == EnumerationMode::Exhaustive)
    require_scale(B <= kExhaustiveMaxBits, "exhaustive enumeration needs k*m(m+1)/2 <= " +
                                               std::to_string(kExhaustiveMaxBits) + " (got " +
                                               std::to_string(B) + "); use the pruned mode");
  require_scale(B <= kPrunedMaxBits, "structure encoding exceeds 63 bits");
  require_scale(m <= 8, "part permutations are enumerated only for m <= 8");
  const auto images = opt.canonical ? structure_images(k, m, psi, oracle.cells())
                                    : std::vector<std::vector<int>>{};

  std::vector<std::uint64_t> found;
  if (mode == EnumerationMode::Exhaustive) {
    const std::uint64_t total = std::uint64_t{1} << B;
    // The zero property is closed under removing 1-cells, so a mask is zero
    // only if every one-bit-smaller mask is.
    std::vector<std::uint8_t> zero(total, 0);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      bool candidate = true;
      for (std::uint64_t rest = mask; rest && candidate; rest &= rest - 1)
        candidate = zero[mask & ~(rest & -rest)];
      zero[mask] = candidate && oracle.zero(mask);
    }
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      if (!zero[mask]) continue;
      if (opt.maximal_only) {
        bool maximal = true;
        for (int b = 0; b < B && maximal; ++b)
          if (!((mask >> b) & 1) && zero[mask | (std::uint64_t{1} << b)]) maximal = false;
        if (!maximal) continue;
      }
      if (opt.canonical && !canonical(mask, images)) continue;
      found.push_back(mask);
    }
  } else {
    std::uint64_t mask = 0;
    auto rec = [&](auto&& self, int b) -> void {
      if (b == B) {
        if (opt.maximal_only)
          for (int x = 0; x < B; ++x)
            if (!((mask >> x) & 1) && oracle.zero(mask | (std::uint64_t{1} << x))) return;
        if (opt.canonical && !canonical(mask, images)) return;
        found.push_back(mask);
        return;
      }
      const std::uint64_t bit = std::uint64_t{1} << b;
      if (oracle.zero(mask | bit)) {
        mask |= bit;
        self(self, b + 1);
        mask &= ~bit;
      }
      self(self, b + 1);
    };
    if (oracle.zero(0)) rec(rec, 0);
    std::sort(found.begin(), found.end());
  }

  std::vector<ZeroStructure> out;
  for (std::uint64_t mask : found) out.push_back(ZeroStructure::decode(mask, k, m));
  return out;
}

double MinQuadraticProgram::value(int c, const std::vector<double>& x) const {
  const auto& f = forms[c];
  double v = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (f[a * m + b]) v += x[a] * x[b];
  return v;
}

double MinQuadraticProgram::min_value(const std::vector<double>& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (int c = 0; c < k(); ++c) best = std::min(best, value(c, x));
  return best;
}

MinQuadraticProgram program_of(const ZeroStructure& S) {
  MinQuadraticProgram P{S.m, {}};
  for (const auto& t : S.tables) P.forms.push_back(t);
  return P;
}

std::vector<double> project_to_simplex(const std::vector<double>& y) {
  const int n = static_cast<int>(y.size());
  if (n == 0) return {};
  std::vector<double> u(y);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (int j = 0; j < n; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / (j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = std::max(0.0, y[j] - theta);
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= s;
  return x;
}

namespace {

class Objective {
 public:
  explicit Objective(const MinQuadraticProgram& P) : m_(P.m), k_(P.k()) {
    for (const auto& f : P.forms) A_.emplace_back(f.begin(), f.end());
    scratch_.resize(m_);
  }

  double form(int c, const std::vector<double>& x) {
    return simd::quadratic_form(A_[c].data(), x.data(), scratch_.data(), m_);
  }
  double min(const std::vector<double>& x, int* arg = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k_; ++c) {
      const double v = form(c, x);
      if (v < best) {
        best = v;
        if (arg) *arg = c;
      }
    }
    return best;
  }
  // 2 A_c x
  void gradient(int c, const std::vector<double>& x, std::vector<double>& g) {
    g.resize(m_);
    simd::matvec(A_[c].data(), x.data(), g.data(), m_, m_);
    for (double& v : g) v *= 2.0;
  }
  const std::vector<double>& table(int c) const { return A_[c]; }
  int m() const { return m_; }
  int k() const { return k_; }

 private:
  int m_, k_;
  std::vector<std::vector<double>> A_;
  std::vector<double> scratch_;
};

// Maximises h on [lo, hi] by golden-section search; returns the best of the
// bracket end points and the search result.
template <class H>
std::pair<double, double> golden_max(H&& h, double lo, double hi) {
  constexpr double r = 0.6180339887498949;
  double best_t = lo, best = h(lo);
  const double vh = h(hi);
  if (vh > best) best = vh, best_t = hi;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = h(c), fd = h(d);
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    if (fc >= fd) {
      b = d, d = c, fd = fc;
      c = b - r * (b - a);
      fc = h(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + r * (b - a);
      fd = h(d);
    }
  }
  const double mid = 0.5 * (a + b), fm = h(mid);
  if (fm > best) best = fm, best_t = mid;
  return {best_t, best};
}

void polish(Objective& obj, std::vector<double>& x, double& value) {
  const int m = obj.m();
  std::vector<double> y(m);
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double before = value;
    // Moves toward / away from a vertex of the simplex.
    for (int j = 0; j < m; ++j) {
      const double lo = x[j] < 1.0 ? -x[j] / (1.0 - x[j]) : 0.0;
      auto h = [&](double t) {
        for (int a = 0; a < m; ++a) y[a] = x[a] * (1.0 - t) + (a == j ? t : 0.0);
        return obj.min(y);
      };
      const auto [t, v] = golden_max(h, lo, 1.0);
      if (v > value) {
        for (int a = 0; a < m; ++a) x[a] = std::max(0.0, x[a] * (1.0 - t) + (a == j ? t : 0.0));
        value = v;
      }
    }
    // Mass transfers between two coordinates.
    for (int j = 0; j < m; ++j)
      for (int l = j + 1; l < m; ++l) {
        auto h = [&](double d) {
          y = x;
          y[j] += d;
          y[l] -= d;
          return obj.min(y);
        };
        const auto [d, v] = golden_max(h, -x[j], x[l]);
        if (v > value) {
          x[j] = std::max(0.0, x[j] + d);
          x[l] = std::max(0.0, x[l] - d);
          value = v;
        }
      }
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    for (double& v : x) v /= s;
    value = obj.min(x);
    if (value <= before + 1e-16) break;
  }
}

// Newton iteration on the KKT system of max t s.t. f_i(x) = t (i active),
// sum x = 1 on the support. Replaces x only when the value improves.
void kkt_refine(Objective& obj, std::vector<double>& x, double& value) {
  const int m = obj.m();
  std::vector<int> S, A;
  for (int a = 0; a < m; ++a)
    if (x[a] > 1e-9) S.push_back(a);
  for (int c = 0; c < obj.k(); ++c)
    if (obj.form(c, x) <= value + 1e-7) A.push_back(c);
  const int ns = static_cast<int>(S.size()), na = static_cast<int>(A.size());
  if (ns == 0 || na == 0) return;
  const int N = ns + na + 2;
  Eigen::VectorXd z(N);
  for (int i = 0; i < ns; ++i) z[i] = x[S[i]];
  for (int i = 0; i < na; ++i) z[ns + i] = 1.0 / na;
  std::vector<double> full(m, 0.0), g;
  auto unpack = [&](const Eigen::VectorXd& v) {
    std::fill(full.begin(), full.end(), 0.0);
    for (int i = 0; i < ns; ++i) full[S[i]] = v[i];
  };
  unpack(z);
  {
    double mu = 0.0;
    for (int i = 0; i < na; ++i) {
      obj.gradient(A[i], full, g);
      for (int a : S) mu += g[a] / (ns * double(na));
    }
    z[ns + na] = mu;
    z[ns + na + 1] = value;
  }
  for (int it = 0; it < 30; ++it) {
    unpack(z);
    Eigen::VectorXd F = Eigen::VectorXd::Zero(N);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < na; ++i) {
      const auto& T = obj.table(A[i]);
      obj.gradient(A[i], full, g);
      const double lam = z[ns + i];
      for (int r = 0; r < ns; ++r) {
        F[r] += lam * g[S[r]];
        J(r, ns + i) = g[S[r]];
        for (int c = 0; c < ns; ++c) J(r, c) += lam * 2.0 * T[S[r] * m + S[c]];
      }
      F[ns + i] = obj.form(A[i], full) - z[ns + na + 1];
      for (int c = 0; c < ns; ++c) J(ns + i, c) = g[S[c]];
      J(ns + i, ns + na + 1) = -1.0;
    }
    for (int r = 0; r < ns; ++r) {
      F[r] -= z[ns + na];
      J(r, ns + na) = -1.0;
    }
    double sx = 0.0, sl = 0.0;
    for (int i = 0; i < ns; ++i) sx += z[i], J(ns + na, i) = 1.0;
    for (int i = 0; i < na; ++i) sl += z[ns + i], J(ns + na + 1, ns + i) = 1.0;
    F[ns + na] = sx - 1.0;
    F[ns + na + 1] = sl - 1.0;
    if (F.norm() < 1e-15) break;
    const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-F);
    if (!step.allFinite()) return;
    z += step;
    if (step.norm() < 1e-15) break;
  }
  unpack(z);
  for (double v : full)
    if (!(v >= -1e-12)) return;
  for (double& v : full) v = std::max(0.0, v);
  const double s = std::accumulate(full.begin(), full.end(), 0.0);
  if (!(s > 0.0)) return;
  for (double& v : full) v /= s;
  const double nv = obj.min(full);
  if (nv > value) {
    x = full;
    value = nv;
  }
}

}  // namespace

OptimizeResult optimize_min_density(const MinQuadraticProgram& P, const OptimizerOptions& opt) {
  const int m = P.m;
  require(m >= 1, "program needs at least one variable");
  require_scale(m <= kOptimizerMaxParts, "optimizer supports at most 32 variables");
  for (const auto& f : P.forms) {
    require(static_cast<int>(f.size()) == m * m, "form size mismatch");
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        require(f[a * m + b] <= 1, "coefficients must be 0 or 1");
        require(f[a * m + b] == f[b * m + a], "coefficient tables must be symmetric");
      }
  }
  Objective obj(P);
  OptimizeResult res;
  res.point.assign(m, 1.0 / m);
  if (P.k() == 0) {
    res.value = std::numeric_limits<double>::infinity();
    return res;
  }
  auto rng = make_engine(opt.seed, 0x6f7074);
  std::exponential_distribution<double> expo(1.0);

  struct Run {
    double value;
    std::vector<double> x;
  };
  std::vector<Run> runs;
  std::vector<double> g;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    std::vector<double> x(m, 1.0 / m);
    if (r > 0) {
      for (double& v : x) v = expo(rng);
      const double s = std::accumulate(x.begin(), x.end(), 0.0);
      for (double& v : x) v /= s;
    }
    Run best{obj.min(x), x};
    for (int t = 1; t <= opt.iterations; ++t) {
      int arg = 0;
      obj.min(x, &arg);
      obj.gradient(arg, x, g);
      const double eta = 0.5 / std::sqrt(double(t));
      for (int a = 0; a < m; ++a) x[a] += eta * g[a];
      x = project_to_simplex(x);
      const double v = obj.min(x);
      if (v > best.value) best = {v, x};
    }
    runs.push_back(std::move(best));
  }
  std::stable_sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.value > b.value; });
  if (opt.polish) {
    const std::size_t top = std::min<std::size_t>(runs.size(), 4);
    for (std::size_t i = 0; i < top; ++i) {
      polish(obj, runs[i].x, runs[i].value);
      kkt_refine(obj, runs[i].x, runs[i].value);
      polish(obj, runs[i].x, runs[i].value);
    }
    std::stable_sort(runs.begin(), runs.begin() + top,
                     [](const Run& a, const Run& b) { return a.value > b.value; });
  }
  res.point = runs.front().x;
  res.value = P.min_value(res.point);
  for (int c = 0; c < P.k(); ++c)
    if (P.value(c, res.point) <= res.value + 1e-9) res.active.push_back(c + 1);
  return res;
}

PiStarResult pi_star_tree(const Multigraph& T, const PreColoring& psi, int k, int m,
                          const OptimizerOptions& opt,
                          const std::function<void(const ZeroStructure&, const MinQuadraticProgram&,
                                                   const OptimizeResult&)>& each) {
  require_scale(m <= kOptimizerMaxParts, "optimizer supports at most 32 parts");
  const std::vector<ZeroStructure> structures = enumerate_zero_structures(T, psi, k, m);
  PiStarResult res;
  res.structures = structures.size();
  std::vector<OptimizeResult> results(structures.size());
  parallel_chunks(structures.size(), [&](std::size_t i) {
    results[i] = optimize_min_density(program_of(structures[i]), opt);
  });
  bool have = false;
  for (std::size_t i = 0; i < structures.size(); ++i) {
    if (each) each(structures[i], program_of(structures[i]), results[i]);
    // Ties within 1e-12 keep the smaller encoding (structures come sorted).
    if (!have || results[i].value > res.value + 1e-12) {
      have = true;
      res.value = results[i].value;
      res.structure = structures[i];
      res.point = results[i].point;
    }
  }
  return res;
}

std::string export_program_json(const MinQuadraticProgram& P) {
  using nlohmann::json;
  json forms = json::array();
  for (int c = 0; c < P.k(); ++c) {
    json table = json::array(), monomials = json::array();
    for (int a = 0; a < P.m; ++a) {
      json row = json::array();
      for (int b = 0; b < P.m; ++b) row.push_back(int(P.forms[c][a * P.m + b]));
      table.push_back(row);
    }
    for (int a = 0; a < P.m; ++a)
      for (int b = a; b < P.m; ++b)
        if (P.forms[c][a * P.m + b])
          monomials.push_back({{"coef", a == b ? 1 : 2}, {"vars", {a + 1, b + 1}}});
    forms.push_back({{"color", c + 1}, {"table", table}, {"monomials", monomials}});
  }
  json out = {{"objective", "maximize min_i f_i(x)"},
              {"constraint", "simplex"},
              {"m", P.m},
              {"k", P.k()},
              {"forms", forms}};
  return out.dump(2);
}

std::string export_program_text(const MinQuadraticProgram& P) {
  std::ostringstream out;
  out << "maximize min(";
  for (int c = 0; c < P.k(); ++c) out << (c ? ", " : "") << "f_" << c + 1;
  out << ")\nsubject to ";
  for (int a = 0; a < P.m; ++a) out << (a ? " + " : "") << "x_" << a + 1;
  out << " = 1, x_a >= 0\n";
  for (int c = 0; c < P.k(); ++c) {
    out << "f_" << c + 1 << " =";
    bool any = false;
    for (int a = 0; a < P.m; ++a)
      for (int b = a; b < P.m; ++b) {
        if (!P.forms[c][a * P.m + b]) continue;
        out << (any ? " + " : " ");
        if (a == b) out << "x_" << a + 1 << "^2";
        else out << "2*x_" << a + 1 << "*x_" << b + 1;
        any = true;
      }
    if (!any) out << " 0";
    out << '\n';
  }
  return out.str();
}

MinQuadraticProgram parse_program_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("program JSON: ") + e.what());
  }
  require(j.contains("m") && j.contains("forms"), "program JSON needs \"m\" and \"forms\"");
  MinQuadraticProgram P;
  P.m = j.at("m").get<int>();
  require(P.m >= 0, "negative variable count");
  for (const json& f : j.at("forms")) {
    std::vector<std::uint8_t> t(std::size_t(P.m) * P.m, 0);
    const json& table = f.at("table");
    require(static_cast<int>(table.size()) == P.m, "form table has the wrong size");
    for (int a = 0; a < P.m; ++a) {
      require(static_cast<int>(table[a].size()) == P.m, "form table has the wrong size");
      for (int b = 0; b < P.m; ++b) {
        const int v = table[a][b].get<int>();
        require(v == 0 || v == 1, "coefficients must be 0 or 1");
        t[a * P.m + b] = static_cast<std::uint8_t>(v);
      }
    }
    if (f.contains("monomials")) {
      std::vector<std::uint8_t> u(t.size(), 0);
      for (const json& mono : f.at("monomials")) {
        const auto vars = mono.at("vars").get<std::vector<int>>();
        require(vars.size() == 2, "monomials have degree 2");
        const int a = vars[0] - 1, b = vars[1] - 1;
        require(a >= 0 && b >= 0 && a < P.m && b < P.m, "monomial variable out of range");
        u[a * P.m + b] = u[b * P.m + a] = 1;
      }
      require(u == t, "monomials disagree with the table");
    }
    P.forms.push_back(std::move(t));
  }
  if (j.contains("k")) require(j.at("k").get<int>() == P.k(), "\"k\" disagrees with the form count");
  return P;
}

}  // namespace rainbow
