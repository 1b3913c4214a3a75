#include "rainbow/cutnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "rainbow/density.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/simd/kernels.hpp"

namespace rainbow {
namespace {

// Mass-weighted tables restricted to the positive-mass parts.
struct Weighted {
  int m = 0;
  int s = 0;
  std::vector<int> parts;         // compact index -> original part
  std::vector<double> M;          // s tables, each m x m row-major
  const double* table(int i) const { return M.data() + std::size_t(i) * m * m; }
};

Weighted weigh(std::span<const Table> tuple, std::span<const double> sizes) {
  Weighted w;
  for (int a = 0; a < static_cast<int>(sizes.size()); ++a)
    if (sizes[a] > 0.0) w.parts.push_back(a);
  w.m = static_cast<int>(w.parts.size());
  w.s = static_cast<int>(tuple.size());
  w.M.resize(std::size_t(w.s) * w.m * w.m);
  for (int i = 0; i < w.s; ++i) {
    require(tuple[i].size() == static_cast<int>(sizes.size()), "tables and sizes disagree");
    double* out = w.M.data() + std::size_t(i) * w.m * w.m;
    for (int a = 0; a < w.m; ++a)
      for (int b = 0; b < w.m; ++b)
        out[a * w.m + b] = sizes[w.parts[a]] * sizes[w.parts[b]] * tuple[i](w.parts[a], w.parts[b]);
  }
  return w;
}

double evaluate(const Weighted& w, const std::vector<char>& S, const std::vector<char>& T) {
  double total = 0.0;
  for (int i = 0; i < w.s; ++i) {
    const double* t = w.table(i);
    double v = 0.0;
    for (int a = 0; a < w.m; ++a)
      if (S[a])
        for (int b = 0; b < w.m; ++b)
          if (T[b]) v += t[a * w.m + b];
    total += std::abs(v);
  }
  return total;
}

CutWitness make_witness(const Weighted& w, const std::vector<char>& S, const std::vector<char>& T) {
  CutWitness out;
  out.value = evaluate(w, S, T);
  for (int a = 0; a < w.m; ++a) {
    if (S[a]) out.S.push_back(w.parts[a]);
    if (T[a]) out.T.push_back(w.parts[a]);
  }
  return out;
}

// r_i(b) = sum_{a in S} M_i(a,b) for all i, laid out s x m.
void side_sums(const Weighted& w, const std::vector<char>& S, bool transpose, std::vector<double>& r) {
  r.assign(std::size_t(w.s) * w.m, 0.0);
  for (int i = 0; i < w.s; ++i) {
    const double* t = w.table(i);
    double* ri = r.data() + std::size_t(i) * w.m;
    for (int a = 0; a < w.m; ++a) {
      if (!S[a]) continue;
      if (!transpose) {
        simd::axpy(1.0, t + std::size_t(a) * w.m, ri, w.m);
      } else {
        for (int b = 0; b < w.m; ++b) ri[b] += t[std::size_t(b) * w.m + a];
      }
    }
  }
}

// Best opposite side for fixed row sums r: max over signs of the hinge sum.
// Exact over all 2^s sign patterns when s is small, otherwise a sign/side
// fixed-point iteration started from `other`.
double best_other_side(const Weighted& w, const std::vector<double>& r, std::vector<char>& other) {
  const int m = w.m, s = w.s;
  std::vector<double> g(m);
  auto side_from = [&](std::vector<char>& out) {
    for (int b = 0; b < m; ++b) out[b] = g[b] > 0.0;
  };
  if (s <= 12) {
    double best = -1.0;
    for (std::uint32_t sig = 0; sig < (1u << s); ++sig) {
      std::fill(g.begin(), g.end(), 0.0);
      for (int i = 0; i < s; ++i)
        simd::axpy((sig >> i) & 1 ? -1.0 : 1.0, r.data() + std::size_t(i) * m, g.data(), m);
      const double v = simd::positive_sum(g.data(), m);
      if (v > best) {
        best = v;
        side_from(other);
      }
    }
    return best;
  }
  double best = -1.0;
  for (int iter = 0; iter < 50; ++iter) {
    std::fill(g.begin(), g.end(), 0.0);
    for (int i = 0; i < s; ++i) {
      const double* ri = r.data() + std::size_t(i) * m;
      double v = 0.0;
      for (int b = 0; b < m; ++b)
        if (other[b]) v += ri[b];
      simd::axpy(v < 0.0 ? -1.0 : 1.0, ri, g.data(), m);
    }
    const double v = simd::positive_sum(g.data(), m);
    if (v <= best + 1e-15) break;
    best = v;
    side_from(other);
  }
  return best;
}

constexpr double kExactBudget = 17179869184.0;  // 2^34 elementary steps

}  // namespace

CutWitness cut_norm_exact(std::span<const Table> tuple, std::span<const double> sizes) {
  const Weighted w = weigh(tuple, sizes);
  const int m = w.m, s = w.s;
  require_scale(m <= kCutNormExactMaxParts,
                "exact cut norm needs at most " + std::to_string(kCutNormExactMaxParts) +
                    " positive-mass parts (got " + std::to_string(m) + "); use the heuristic");
  std::vector<char> bestS(m, 0), bestT(m, 0);
  if (s == 0 || m == 0) return make_witness(w, bestS, bestT);

  const bool by_signs = s <= m;
  const double work = std::ldexp(1.0, m) * std::ldexp(1.0, by_signs ? s - 1 : m) * std::max(s, m);
  require_scale(work <= kExactBudget, "exact cut norm enumeration exceeds its work budget; use the heuristic");

  double best = -1.0;
  std::uint32_t best_s_mask = 0, best_sig = 0;
  bool best_neg = false;
  std::uint32_t best_t_mask = 0;
  std::vector<double> r(std::size_t(s) * m, 0.0);
  std::vector<double> g(m), v(s);
  std::uint32_t smask = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << m); ++step) {
    // Gray-code walk over S: flip one part and update its row sums.
    const int a = std::countr_zero(step);
    const double sign = (smask >> a) & 1 ? -1.0 : 1.0;
    smask ^= 1u << a;
    for (int i = 0; i < s; ++i)
      simd::axpy(sign, w.table(i) + std::size_t(a) * m, r.data() + std::size_t(i) * m, m);

    if (by_signs) {
      // Sign pattern with sigma_0 = +1; the negated pattern is read off from
      // positive_sum(-g) = positive_sum(g) - sum(g).
      std::fill(g.begin(), g.end(), 0.0);
      for (int i = 0; i < s; ++i) simd::axpy(1.0, r.data() + std::size_t(i) * m, g.data(), m);
      std::uint32_t sig = 0;
      for (std::uint32_t t = 0;; ++t) {
        const double pos = simd::positive_sum(g.data(), m);
        double sum = 0.0;
        for (double x : g) sum += x;
        const double neg = pos - sum;
        if (pos > best) best = pos, best_s_mask = smask, best_sig = sig, best_neg = false;
        if (neg > best) best = neg, best_s_mask = smask, best_sig = sig, best_neg = true;
        if (t + 1 >= (1u << (s - 1))) break;
        const int i = std::countr_zero(t + 1) + 1;
        const double flip = (sig >> i) & 1 ? 2.0 : -2.0;
        sig ^= 1u << i;
        simd::axpy(flip, r.data() + std::size_t(i) * m, g.data(), m);
      }
    } else {
      std::fill(v.begin(), v.end(), 0.0);
      std::uint32_t tmask = 0;
      for (std::uint64_t tstep = 1; tstep < (std::uint64_t{1} << m); ++tstep) {
        const int b = std::countr_zero(tstep);
        const double tsign = (tmask >> b) & 1 ? -1.0 : 1.0;
        tmask ^= 1u << b;
        double total = 0.0;
        for (int i = 0; i < s; ++i) {
          v[i] += tsign * r[std::size_t(i) * m + b];
          total += std::abs(v[i]);
        }
        if (total > best) best = total, best_s_mask = smask, best_t_mask = tmask;
      }
    }
  }

  for (int a = 0; a < m; ++a) bestS[a] = (best_s_mask >> a) & 1;
  if (by_signs) {
    std::vector<char> S(bestS);
    side_sums(w, S, false, r);
    std::fill(g.begin(), g.end(), 0.0);
    for (int i = 0; i < s; ++i) {
      const double sg = ((best_sig >> i) & 1 ? -1.0 : 1.0) * (best_neg ? -1.0 : 1.0);
      simd::axpy(sg, r.data() + std::size_t(i) * m, g.data(), m);
    }
    for (int b = 0; b < m; ++b) bestT[b] = g[b] > 0.0;
  } else {
    for (int b = 0; b < m; ++b) bestT[b] = (best_t_mask >> b) & 1;
  }
  CutWitness out = make_witness(w, bestS, bestT);
  // Incremental sums drift by a few ulps; never report below the witness.
  out.value = std::max(out.value, 0.0);
  return out;
}

CutWitness cut_norm_heuristic(std::span<const Table> tuple, std::span<const double> sizes,
                              int restarts, std::uint64_t seed) {
  const Weighted w = weigh(tuple, sizes);
  const int m = w.m;
  std::vector<char> bestS(m, 0), bestT(m, 0);
  if (w.s == 0 || m == 0) return make_witness(w, bestS, bestT);
  auto rng = make_engine(seed, 0x637574);
  std::bernoulli_distribution coin(0.5);
  double best = -1.0;
  std::vector<double> r;
  for (int rs = 0; rs < std::max(1, restarts); ++rs) {
    std::vector<char> S(m, 1), T(m, 1);
    if (rs > 0)
      for (int a = 0; a < m; ++a) S[a] = coin(rng), T[a] = coin(rng);
    double value = -1.0;
    for (int iter = 0; iter < 100; ++iter) {
      side_sums(w, S, false, r);
      best_other_side(w, r, T);
      side_sums(w, T, true, r);
      best_other_side(w, r, S);
      const double now = evaluate(w, S, T);
      if (now <= value + 1e-15) break;
      value = now;
    }
    value = evaluate(w, S, T);
    if (value > best) {
      best = value;
      bestS = S;
      bestT = T;
    }
  }
  return make_witness(w, bestS, bestT);
}

double cut_norm_upper(std::span<const Table> tuple, std::span<const double> sizes) {
  using Mat = Eigen::MatrixXd;
  const int m = static_cast<int>(sizes.size());
  Eigen::VectorXd root(m);
  for (int a = 0; a < m; ++a) root[a] = std::sqrt(std::max(0.0, sizes[a]));
  double total = 0.0;
  for (const Table& t : tuple) {
    require(t.size() == m, "tables and sizes disagree");
    Mat B(m, m);
    double l1 = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        B(a, b) = root[a] * root[b] * t(a, b);
        l1 += sizes[a] * sizes[b] * std::abs(t(a, b));
      }
    double spectral;
    if (t.is_symmetric(0.0)) {
      Eigen::SelfAdjointEigenSolver<Mat> es(B, Eigen::EigenvaluesOnly);
      spectral = es.eigenvalues().cwiseAbs().maxCoeff();
    } else {
      Eigen::JacobiSVD<Mat> svd(B);
      spectral = svd.singularValues()(0);
    }
    // Guard against eigen-solver rounding on the certified side.
    spectral *= 1.0 + 1e-12;
    total += std::min(l1, spectral);
  }
  return total;
}

Interval cut_norm_interval(std::span<const Table> tuple, std::span<const double> sizes,
                           std::uint64_t seed) {
  const int positive = static_cast<int>(std::count_if(sizes.begin(), sizes.end(), [](double x) { return x > 0.0; }));
  if (positive <= 12 || (positive <= kCutNormExactMaxParts && tuple.size() <= 8)) {
    const double v = cut_norm_exact(tuple, sizes).value;
    return {v, v};
  }
  const double lo = cut_norm_heuristic(tuple, sizes, 10, seed).value;
  return {lo, std::max(lo, cut_norm_upper(tuple, sizes))};
}

double d_box(const StepGraphonSystem& W, const StepGraphonSystem& U) {
  const auto diff = difference_tables(W, U);
  require(W.sizes() == U.sizes(), "d_box needs identical part sizes");
  return cut_norm_exact(diff, W.sizes()).value;
}

Interval d_box_interval(const StepGraphonSystem& W, const StepGraphonSystem& U, std::uint64_t seed) {
  const auto diff = difference_tables(W, U);
  require(W.sizes() == U.sizes(), "d_box needs identical part sizes");
  return cut_norm_interval(diff, W.sizes(), seed);
}

std::vector<double> northwest_coupling(std::span<const double> a, std::span<const double> b,
                                       std::span<const int> order_a, std::span<const int> order_b) {
  const int m = static_cast<int>(a.size()), mp = static_cast<int>(b.size());
  std::vector<double> P(std::size_t(m) * mp, 0.0);
  std::vector<double> ra(a.begin(), a.end()), rb(b.begin(), b.end());
  int i = 0, j = 0;
  while (i < m && j < mp) {
    const int p = order_a[i], q = order_b[j];
    const double t = std::min(ra[p], rb[q]);
    P[std::size_t(p) * mp + q] += t;
    ra[p] -= t;
    rb[q] -= t;
    // Advance whichever side is exhausted; tiny leftovers count as exhausted.
    if (ra[p] <= 1e-15) ++i;
    else ++j;
  }
  // Push any rounding residue into the last cell so marginals match.
  for (int p = 0; p < m; ++p)
    if (ra[p] > 0.0 && ra[p] <= 1e-12) P[std::size_t(p) * mp + order_b[mp - 1]] += ra[p];
  return P;
}

double coupling_upper_bound(const StepGraphonSystem& W, const StepGraphonSystem& U,
                            std::span<const double> coupling) {
  const Refinement R = common_refinement(W, U, coupling);
  const auto diff = difference_tables(R.first, R.second);
  const auto& sizes = R.first.sizes();
  if (static_cast<int>(sizes.size()) <= kCutNormExactMaxParts && diff.size() <= 15)
    return cut_norm_exact(diff, sizes).value;
  return cut_norm_upper(diff, sizes);
}

namespace {

// Orders parts by their profile against the whole system, so relabelled
// copies of one system get matching orders.
std::vector<int> profile_order(const StepGraphonSystem& W) {
  const int m = W.parts();
  std::vector<std::vector<double>> key(m);
  for (int a = 0; a < m; ++a) {
    for (ColorSet I = 1; I < W.set_count(); ++I) {
      double d = 0.0;
      for (int b = 0; b < m; ++b) d += W.sizes()[b] * W.block(I)(a, b);
      key[a].push_back(d);
    }
    key[a].push_back(W.sizes()[a]);
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return key[x] < key[y]; });
  return order;
}

}  // namespace

CouplingResult delta_box_upper_search(const StepGraphonSystem& W, const StepGraphonSystem& U,
                                      const CouplingSearchOptions& opt) {
  require(W.colors() == U.colors(), "systems have different color counts");
  const int m = W.parts(), mp = U.parts();
  auto rng = make_engine(opt.seed, 0x64656c);

  CouplingResult best{std::numeric_limits<double>::infinity(), {}};
  auto consider = [&](std::vector<double> P) {
    double value = coupling_upper_bound(W, U, P);
    if (m * mp <= opt.local_move_cells && m > 1 && mp > 1) {
      std::uniform_int_distribution<int> pick_i(0, m - 1), pick_j(0, mp - 1);
      std::uniform_real_distribution<double> frac(0.0, 1.0);
      int stale = 0;
      while (stale < opt.patience) {
        const int i = pick_i(rng), i2 = pick_i(rng), j = pick_j(rng), j2 = pick_j(rng);
        if (i == i2 || j == j2) {
          ++stale;
          continue;
        }
        // Move mass from (i,j),(i2,j2) to (i,j2),(i2,j): marginals unchanged.
        const double cap = std::min(P[i * mp + j], P[i2 * mp + j2]);
        if (cap <= 0.0) {
          ++stale;
          continue;
        }
        const double t = frac(rng) < 0.5 ? cap : cap * frac(rng);
        std::vector<double> Q = P;
        Q[i * mp + j] -= t;
        Q[i2 * mp + j2] -= t;
        Q[i * mp + j2] += t;
        Q[i2 * mp + j] += t;
        if (t == cap) {
          if (P[i * mp + j] <= P[i2 * mp + j2]) Q[i * mp + j] = 0.0;
          else Q[i2 * mp + j2] = 0.0;
        }
        const double v = coupling_upper_bound(W, U, Q);
        if (v < value - 1e-15) {
          value = v;
          P = std::move(Q);
          stale = 0;
        } else {
          ++stale;
        }
      }
    }
    if (value < best.value) best = {value, std::move(P)};
  };

  std::vector<double> indep(std::size_t(m) * mp);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < mp; ++j) indep[i * mp + j] = W.sizes()[i] * U.sizes()[j];
  consider(indep);
  const std::vector<int> pw = profile_order(W), pu = profile_order(U);
  consider(northwest_coupling(W.sizes(), U.sizes(), pw, pu));
  std::vector<int> ow(m), ou(mp);
  std::iota(ow.begin(), ow.end(), 0);
  std::iota(ou.begin(), ou.end(), 0);
  consider(northwest_coupling(W.sizes(), U.sizes(), ow, ou));
  for (int r = 0; r < opt.restarts && best.value > 0.0; ++r) {
    std::shuffle(ow.begin(), ow.end(), rng);
    std::shuffle(ou.begin(), ou.end(), rng);
    consider(northwest_coupling(W.sizes(), U.sizes(), ow, ou));
  }
  return best;
}

double delta_box_upper(const StepGraphonSystem& W, const StepGraphonSystem& U, int restarts,
                       std::uint64_t seed) {
  CouplingSearchOptions opt;
  opt.restarts = restarts;
  opt.seed = seed;
  return delta_box_upper_search(W, U, opt).value;
}

std::vector<TemplateCase> default_template_family(int k, int max_edges) {
  require(max_edges >= 0 && max_edges <= 3, "template family supports at most 3 edges");
  using Shape = std::vector<std::pair<int, int>>;
  const std::vector<Shape> shapes = {
      {{0, 1}},
      {{0, 1}, {0, 1}},
      {{0, 1}, {1, 2}},
      {{0, 1}, {2, 3}},
      {{0, 1}, {0, 1}, {0, 1}},
      {{0, 1}, {0, 1}, {1, 2}},
      {{0, 1}, {0, 1}, {2, 3}},
      {{0, 1}, {1, 2}, {0, 2}},
      {{0, 1}, {1, 2}, {2, 3}},
      {{0, 1}, {0, 2}, {0, 3}},
      {{0, 1}, {1, 2}, {3, 4}},
      {{0, 1}, {2, 3}, {4, 5}},
  };
  std::vector<TemplateCase> out;
  for (const Shape& sh : shapes) {
    if (static_cast<int>(sh.size()) > max_edges) continue;
    int n = 0;
    for (auto [u, v] : sh) n = std::max({n, u + 1, v + 1});
    Multigraph H(n);
    for (auto [u, v] : sh) H.add_edge(u, v);
    out.push_back({H, PreColoring{k, {}, true}});
    for (const PreColoring& ext : enumerate_rainbow_extensions(H, PreColoring{k, {}, true}, k))
      out.push_back({H, ext});
  }
  return out;
}

double delta_box_lower(const StepGraphonSystem& W, const StepGraphonSystem& U,
                       const std::vector<TemplateCase>& family) {
  require(W.colors() == U.colors(), "systems have different color counts");
  double best = 0.0;
  for (const TemplateCase& c : family) {
    if (c.H.edge_count() == 0) continue;
    const double dw = rainbow_density(c.H, c.psi, W);
    const double du = rainbow_density(c.H, c.psi, U);
    best = std::max(best, std::abs(dw - du) / c.H.edge_count());
  }
  return best;
}

double delta_box_lower(const StepGraphonSystem& W, const StepGraphonSystem& U) {
  return delta_box_lower(W, U, default_template_family(W.colors()));
}

Interval delta_box(const StepGraphonSystem& W, const StepGraphonSystem& U,
                   const CouplingSearchOptions& opt) {
  const double lo = delta_box_lower(W, U);
  const double hi = delta_box_upper_search(W, U, opt).value;
  return {lo, hi};
}

}  // namespace rainbow
