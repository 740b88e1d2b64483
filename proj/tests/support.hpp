#pragma once

// Shared helpers and closed-form oracles for the golden networks. Edge
// indices follow the network files (b1 = index 0).

#include "dtflux/dtflux.hpp"

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace dtflux::testing {

inline EGraph net(const std::string& name) { return load_network(std::string(DTFLUX_NETWORK_DIR) + "/" + name + ".crn"); }

inline std::string net_path(const std::string& name) { return std::string(DTFLUX_NETWORK_DIR) + "/" + name + ".crn"; }

inline RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Row of length n from 1-based (index, coefficient) terms.
inline RatVector lin(std::size_t n, std::initializer_list<std::pair<int, int>> terms) {
  RatVector r(n);
  for (auto [i, c] : terms) r[static_cast<std::size_t>(i - 1)] += c;
  return r;
}

inline Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Random point of a cone: positive integer combination of its generators.
// With `sparse`, each ray weight is zero with probability one half, which
// lands points on faces as well as in the interior.
inline RatVector random_cone_point(const ConeGenerators& gens, std::size_t n, std::mt19937_64& rng,
                                   bool sparse = false) {
  RatVector x(n);
  std::uniform_int_distribution<int> w(1, 20), l(-20, 20), coin(0, 1);
  for (const auto& r : gens.rays) {
    if (sparse && coin(rng)) continue;
    Rational c(w(rng));
    for (std::size_t j = 0; j < n; ++j) x[j] += c * r[j];
  }
  for (const auto& r : gens.lineality) {
    Rational c(l(rng));
    for (std::size_t j = 0; j < n; ++j) x[j] += c * r[j];
  }
  return x;
}

// ---------------------------------------------------------------------------
// Property-suite helpers shared with the acceptance binary.

inline HCone random_cone(std::mt19937_64& rng, std::size_t n, std::size_t rows, int eq_rows = 0) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<RatVector> eq, ineq;
  for (std::size_t i = 0; i < rows; ++i) {
    RatVector r(n);
    for (auto& x : r) x = d(rng);
    (static_cast<int>(i) < eq_rows ? eq : ineq).push_back(r);
  }
  return make_cone(n, eq, ineq);
}

// x in cone(rays) + span(lineality), by exact LP.
inline bool in_conic_hull(const ConeGenerators& g, const RatVector& x) {
  const std::size_t nr = g.rays.size(), nl = g.lineality.size(), n = x.size();
  LinearProgram<Rational> lp(nr + nl, false);
  for (std::size_t k = 0; k < nr; ++k) lp.nonneg[k] = true;
  for (std::size_t j = 0; j < n; ++j) {
    RatVector row(nr + nl);
    for (std::size_t k = 0; k < nr; ++k) row[k] = g.rays[k][j];
    for (std::size_t k = 0; k < nl; ++k) row[nr + k] = g.lineality[k][j];
    lp.add_row(row, RowSense::eq, x[j]);
  }
  if (nr + nl == 0) return is_zero(x);
  return solve_lp(lp).status != LpStatus::infeasible;
}

inline ConeGenerators project_generators(const ConeGenerators& g, const std::vector<std::size_t>& keep) {
  ConeGenerators out;
  auto cut = [&](const RatVector& v) {
    RatVector w;
    for (auto k : keep) w.push_back(v[k]);
    return w;
  };
  for (const auto& r : g.rays) out.rays.push_back(cut(r));
  for (const auto& l : g.lineality) out.lineality.push_back(cut(l));
  return out;
}

// One random Fourier-Motzkin case (2..6 dims, 1..8 rows): the projection
// equals the projection of the double-description generators.
inline bool fm_dd_trial(std::mt19937_64& rng, int trial) {
  std::size_t n = 2 + trial % 5;
  std::size_t rows = 1 + (trial * 7) % 8;
  auto c = random_cone(rng, n, rows, trial % 4 == 0 ? 1 : 0);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j)
    if ((trial >> j) % 2 == 0 || j == 0) keep.push_back(j);
  FmOptions opt;
  opt.prune = trial % 3 != 0;
  auto proj = fm_project(c, keep, opt);
  auto pg = project_generators(generators(c), keep);
  for (const auto& r : pg.rays)
    if (!contains(proj, r)) return false;
  for (const auto& l : pg.lineality) {
    RatVector m = l;
    for (auto& x : m) x = -x;
    if (!contains(proj, l) || !contains(proj, m)) return false;
  }
  auto fg = generators(proj);
  for (const auto& r : fg.rays)
    if (!in_conic_hull(pg, r)) return false;
  for (const auto& l : fg.lineality)
    if (!in_conic_hull(pg, l)) return false;
  return true;
}

using CoordEdge = std::pair<RatVector, RatVector>;

inline std::set<CoordEdge> coord_edges(const EGraph& g) {
  std::set<CoordEdge> out;
  for (const auto& [s, t] : g.edges()) out.insert({g.vertices()[s], g.vertices()[t]});
  return out;
}

// Union of all weakly reversible H in G^comp admitting a positive realization.
inline std::set<CoordEdge> brute_force_gmax(const EGraph& g) {
  auto comp = source_complete_graph(g);
  const std::size_t k = comp.num_edges();
  std::set<CoordEdge> out;
  for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
    std::vector<Edge> es;
    for (std::size_t e = 0; e < k; ++e)
      if (mask >> e & 1) es.push_back(comp.edges()[e]);
    EGraph h(comp.dim(), comp.vertices(), es, comp.species());
    if (!has_wr_realization(g, h)) continue;
    auto ce = coord_edges(h);
    out.insert(ce.begin(), ce.end());
  }
  return out;
}

inline Vec random_state(std::mt19937_64& rng, std::size_t n, double spread = 2.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Vec x(n);
  for (auto& v : x) v = std::exp(u(rng));
  return x;
}

inline Vec as_double(const RatVector& x) {
  Vec out;
  for (const auto& v : x) out.push_back(to_double(v));
  return out;
}

inline double max_rel_diff(const Vec& a, const Vec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), 1e-300));
  return m;
}

// Disguised toric rate constants: kappa = Psi(x*, beta) with beta a positive
// point of F^dt. x* is then a positive equilibrium with flux beta.
struct DtRates {
  Vec kappa, xs, beta;
};

inline std::vector<DtRates> disguised_toric_rates(const EGraph& g, int count, std::mt19937_64& rng) {
  auto gens = generators(dt_flux_cone(g));
  std::vector<DtRates> out;
  while (static_cast<int>(out.size()) < count) {
    auto b = random_cone_point(gens, g.num_edges(), rng);
    bool pos = true;
    for (const auto& v : b) pos = pos && v > 0;
    if (!pos) continue;
    DtRates r;
    r.beta = as_double(b);
    double s = 0;
    for (double v : r.beta) s += v;
    for (double& v : r.beta) v /= s;
    r.xs = random_state(rng, g.dim(), 1.0);
    r.kappa = psi(g, r.xs, r.beta);
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Square-family cones written out by hand.

// {b >= 0: b1 = b3, b2 + b6 = b4 + b5} plus extra rows, written out by hand.
inline HCone square_family_cone(std::vector<RatVector> eq, std::vector<RatVector> ineq) {
  eq.push_back(lin(6, {{1, 1}, {3, -1}}));
  eq.push_back(lin(6, {{2, 1}, {6, 1}, {4, -1}, {5, -1}}));
  for (int j = 1; j <= 6; ++j) ineq.push_back(lin(6, {{j, 1}}));
  return make_cone(6, eq, ineq);
}

// |b4 - b6| <= b1 <= b4 + b5
inline HCone square_family_fdt() {
  return square_family_cone({}, {lin(6, {{1, 1}, {4, -1}, {6, 1}}), lin(6, {{1, 1}, {4, 1}, {6, -1}}),
                                 lin(6, {{4, 1}, {5, 1}, {1, -1}})});
}

inline HCone with_rows(const HCone& base, std::vector<RatVector> eq, std::vector<RatVector> ineq) {
  eq.insert(eq.end(), base.eq.begin(), base.eq.end());
  ineq.insert(ineq.end(), base.ineq.begin(), base.ineq.end());
  return make_cone(base.dim, eq, ineq, base.labels);
}

inline bool positive(const RatVector& x) {
  for (const auto& v : x)
    if (v <= 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Partly reversible square (PRS) and its affine images.

inline bool prs_fdt(const RatVector& b) {  // on F^eq
  Rational d = b[3] - b[5];
  if (d < 0) d = -d;
  return d <= b[0] && b[0] <= b[3] + b[4];
}

inline bool prs_kdt(const std::vector<double>& k) {
  double r = k[1] * k[3] / (k[0] * k[2]);
  return (1 - k[5] / k[0]) * (1 - k[4] / k[2]) <= r && r <= (1 + k[5] / k[0]) * (1 + k[4] / k[2]);
}

// Signed distance-like gap of the PRS locus (negative outside).
inline double prs_kdt_margin(const std::vector<double>& k) {
  double r = k[1] * k[3] / (k[0] * k[2]);
  return std::min(r - (1 - k[5] / k[0]) * (1 - k[4] / k[2]), (1 + k[5] / k[0]) * (1 + k[4] / k[2]) - r);
}

// ---------------------------------------------------------------------------
// Reversible square.

inline bool square_rev_fdt(const RatVector& b) {  // product form, on F^eq
  return (b[0] - b[7]) * (b[2] - b[5]) <= (b[1] + b[4]) * (b[3] + b[6]) &&
         (b[1] - b[4]) * (b[3] - b[6]) <= (b[0] + b[7]) * (b[2] + b[5]);
}

inline double square_rev_kdt_margin(const std::vector<double>& k) {
  double a = (k[1] + k[4]) * (k[3] + k[6]) - (k[0] - k[7]) * (k[2] - k[5]);
  double c = (k[0] + k[7]) * (k[2] + k[5]) - (k[1] - k[4]) * (k[3] - k[6]);
  return std::min(a / ((k[1] + k[4]) * (k[3] + k[6])), c / ((k[0] + k[7]) * (k[2] + k[5])));
}

inline bool square_rev_kdt(const std::vector<double>& k) { return square_rev_kdt_margin(k) >= 0; }

// Linear form of the same cone: the max/min system expanded into rows.
inline HCone square_rev_linear_fdt(const HCone& feq) {
  auto row = [](std::initializer_list<std::pair<int, int>> terms) { return lin(8, terms); };
  std::vector<RatVector> ineq = feq.ineq;
  // max(b1, b8) - b4 - b5 <= min(b3, b6)
  for (int p : {1, 8})
    for (int q : {3, 6}) ineq.push_back(row({{q, 1}, {4, 1}, {5, 1}, {p, -1}}));
  // -min(b2, b5) - min(b4, b7) <= b1 - b5 - b2 + b6
  for (int p : {2, 5})
    for (int q : {4, 7}) ineq.push_back(row({{1, 1}, {5, -1}, {2, -1}, {6, 1}, {p, 1}, {q, 1}}));
  return make_cone(8, feq.eq, ineq, feq.labels);
}

// Exact agreement of F^dt with the product form on positive points of F^eq.
// Points are plain generator sums, sparse sums (near faces of F^dt), or sums
// tilted toward a ray of F^eq that lies outside F^dt.
struct ProductFormAgreement {
  int inside = 0, outside = 0, boundary = 0, disagree = 0, first_disagreement = -1;
};

inline ProductFormAgreement square_rev_product_form_agreement(int n_points, std::uint64_t seed) {
  auto g = net("square_rev");
  auto feq = eq_flux_cone(g);
  auto fdt = dt_flux_cone(g);
  auto eq_gens = generators(feq);
  auto dt_gens = generators(fdt);
  std::vector<RatVector> escaping;
  for (const auto& r : eq_gens.rays)
    if (!contains(fdt, r)) escaping.push_back(r);
  ProductFormAgreement a;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1), tilt(1, 60);
  std::uniform_int_distribution<std::size_t> pick(0, escaping.empty() ? 0 : escaping.size() - 1);
  int n = 0;
  while (n < n_points) {
    RatVector x;
    int mode = escaping.empty() ? n % 2 : n % 3;
    if (mode == 0) {
      x = random_cone_point(eq_gens, 8, rng);
    } else if (mode == 1) {
      x = random_cone_point(coin(rng) ? dt_gens : eq_gens, 8, rng, true);
    } else {
      x = random_cone_point(eq_gens, 8, rng);
      const auto& r = escaping[pick(rng)];
      Rational w(tilt(rng));
      for (std::size_t j = 0; j < 8; ++j) x[j] += w * r[j];
    }
    if (!positive(x)) continue;
    bool exact = contains(fdt, x);
    if (exact != square_rev_fdt(x) && a.disagree++ == 0) a.first_disagreement = n;
    if (exact)
      ++a.inside;
    else
      ++a.outside;
    const auto& b = x;
    if ((b[0] - b[7]) * (b[2] - b[5]) == (b[1] + b[4]) * (b[3] + b[6]) ||
        (b[1] - b[4]) * (b[3] - b[6]) == (b[0] + b[7]) * (b[2] + b[5]))
      ++a.boundary;
    ++n;
  }
  return a;
}

inline bool square_rev_tilde_kt(const std::vector<double>& k, double rel_tol) {
  double K1 = k[2] * k[3] * (k[1] + k[4]) + k[4] * k[5] * (k[3] + k[6]);
  double K2 = k[5] * k[6] * (k[0] + k[7]) + k[0] * k[3] * (k[2] + k[5]);
  double K3 = k[6] * k[7] * (k[1] + k[4]) + k[0] * k[1] * (k[3] + k[6]);
  double K4 = k[1] * k[2] * (k[0] + k[7]) + k[4] * k[7] * (k[2] + k[5]);
  return std::abs(K1 * K3 - K2 * K4) <= rel_tol * (K1 * K3 + K2 * K4);
}

// ---------------------------------------------------------------------------
// Reversible Lotka-Volterra autocatalator.

inline bool lva_fdt(const RatVector& b) { return b[1] >= b[0]; }

inline double lva_kdt_margin(const std::vector<double>& k) {
  return std::log(k[1] * k[3] * k[5] / (k[0] * k[2] * k[4]));
}

inline bool lva_kdt(const std::vector<double>& k) { return lva_kdt_margin(k) >= 0; }

// ---------------------------------------------------------------------------
// Bogdanov-Takens network.

inline bool bt_fdt(const RatVector& b) { return b[1] >= b[0]; }

inline double bt_kdt_margin(const std::vector<double>& k) {
  double lhs = k[4] / k[0], rhs = k[0] * k[0] / (k[1] * k[1]) + k[3] / k[1];
  return (lhs - rhs) / (lhs + rhs);
}

inline bool bt_kdt(const std::vector<double>& k) { return bt_kdt_margin(k) >= 0; }

// ---------------------------------------------------------------------------
// Four-dimensional network.

inline bool fourd_fdt(const RatVector& b) {  // on F^eq
  Rational s = b[6];
  for (std::size_t i = 0; i < 3; ++i) {
    Rational hi = b[2 * i], lo = b[2 * i + 1];
    s += hi - rmax(lo, (hi + lo) / 2);
  }
  return s >= 0;
}

}  // namespace dtflux::testing
