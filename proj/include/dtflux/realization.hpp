#pragma once

#include "dtflux/cone.hpp"
#include "dtflux/egraph.hpp"
#include "dtflux/simplex.hpp"

#include <map>
#include <string>
#include <vector>

namespace dtflux {

// Joint linear system in (beta, gamma): beta over edges of g, gamma over
// edges of h. de_rows: per source vertex and species, the net reaction vector
// sums of g and h agree. vb_rows: gamma is a circulation on h.
struct LiftedSystem {
  EGraph g, h;
  std::size_t n_beta = 0, n_gamma = 0;
  std::vector<RatVector> de_rows;
  std::vector<RatVector> vb_rows;
  std::vector<std::string> labels;
  std::vector<std::string> warnings;

  std::size_t num_vars() const { return n_beta + n_gamma; }
};

inline LiftedSystem build_lifted_system(const EGraph& g, const EGraph& h) {
  if (g.dim() != h.dim()) throw NetworkError("lifted system: graphs live in different dimensions");
  LiftedSystem s;
  s.g = g;
  s.h = h;
  s.n_beta = g.num_edges();
  s.n_gamma = h.num_edges();
  const std::size_t nv = s.num_vars(), n = g.dim();
  for (std::size_t e = 0; e < s.n_beta; ++e) s.labels.push_back("b" + std::to_string(e + 1));
  for (std::size_t e = 0; e < s.n_gamma; ++e) s.labels.push_back("g" + std::to_string(e + 1));

  std::vector<RatVector> g_sources;
  for (auto i : g.source_vertices()) g_sources.push_back(g.vertices()[i]);
  for (const auto& v : h.vertices())
    if (std::find(g_sources.begin(), g_sources.end(), v) == g_sources.end()) {
      s.warnings.push_back("vertex of h is not a source vertex of g");
      break;
    }

  // Group by distinct source coordinates, g's sources first.
  std::vector<RatVector> sources = g_sources;
  for (auto i : h.source_vertices())
    if (std::find(sources.begin(), sources.end(), h.vertices()[i]) == sources.end())
      sources.push_back(h.vertices()[i]);
  for (const auto& y0 : sources) {
    std::vector<RatVector> block(n, RatVector(nv));
    for (std::size_t e = 0; e < s.n_beta; ++e) {
      if (g.vertices()[g.edges()[e].first] != y0) continue;
      auto d = g.reaction_vector(e);
      for (std::size_t k = 0; k < n; ++k) block[k][e] += d[k];
    }
    for (std::size_t e = 0; e < s.n_gamma; ++e) {
      if (h.vertices()[h.edges()[e].first] != y0) continue;
      auto d = h.reaction_vector(e);
      for (std::size_t k = 0; k < n; ++k) block[k][s.n_beta + e] -= d[k];
    }
    for (auto& r : block)
      if (!is_zero(r)) s.de_rows.push_back(std::move(r));
  }
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    RatVector r(nv);
    for (std::size_t e = 0; e < s.n_gamma; ++e) {
      if (h.edges()[e].second == v) r[s.n_beta + e] += 1;
      if (h.edges()[e].first == v) r[s.n_beta + e] -= 1;
    }
    if (!is_zero(r)) s.vb_rows.push_back(std::move(r));
  }
  return s;
}

// {(beta, gamma) >= 0 : de_rows, vb_rows}
inline HCone lifted_cone(const LiftedSystem& s) {
  auto eq = s.de_rows;
  eq.insert(eq.end(), s.vb_rows.begin(), s.vb_rows.end());
  return nonneg_cone(s.num_vars(), std::move(eq), s.labels);
}

namespace detail {

// Feasibility of beta >= 1, gamma >= 0, gamma_e >= 1 for e in `forced`.
inline LpResult<Rational> lifted_lp(const LiftedSystem& s, const std::vector<std::size_t>& forced) {
  LinearProgram<Rational> lp(s.num_vars(), true);
  for (const auto& r : s.de_rows) lp.add_row(r, RowSense::eq, Rational(0));
  for (const auto& r : s.vb_rows) lp.add_row(r, RowSense::eq, Rational(0));
  auto unit = [&](std::size_t j) {
    RatVector r(s.num_vars());
    r[j] = 1;
    return r;
  };
  for (std::size_t e = 0; e < s.n_beta; ++e) lp.add_row(unit(e), RowSense::ge, Rational(1));
  for (auto e : forced) lp.add_row(unit(s.n_beta + e), RowSense::ge, Rational(1));
  return solve_lp(lp);
}

}  // namespace detail

struct GmaxEdgeTest {
  Edge edge;           // vertex indices of the source-complete graph
  bool feasible = false;
  std::string status;  // "lp-feasible", "witness", "lp-infeasible", "no-realization"
};

struct GmaxResult {
  EGraph graph;        // on the source vertices of g
  bool realizable = false;  // some weakly reversible realization with at least one edge exists
  std::vector<GmaxEdgeTest> tests;
};

inline GmaxResult compute_gmax(const EGraph& g) {
  EGraph comp = source_complete_graph(g);
  auto sys = build_lifted_system(g, comp);
  GmaxResult out;
  const std::size_t k = comp.num_edges();
  out.tests.resize(k);
  for (std::size_t e = 0; e < k; ++e) out.tests[e].edge = comp.edges()[e];
  std::vector<bool> known(k, false);
  auto absorb = [&](const LpResult<Rational>& r) {
    for (std::size_t e = 0; e < k; ++e)
      if (!known[e] && r.x[sys.n_beta + e] > 0) {
        known[e] = true;
        out.tests[e].feasible = true;
        out.tests[e].status = "witness";
      }
  };
  auto base = detail::lifted_lp(sys, {});
  out.realizable = base.status != LpStatus::infeasible;
  std::vector<Edge> edges;
  if (!out.realizable) {
    for (auto& t : out.tests) t.status = "no-realization";
  } else {
    absorb(base);
    for (std::size_t e = 0; e < k; ++e) {
      if (known[e]) continue;
      auto r = detail::lifted_lp(sys, {e});
      known[e] = true;
      if (r.status == LpStatus::infeasible) {
        out.tests[e].status = "lp-infeasible";
        continue;
      }
      out.tests[e].feasible = true;
      out.tests[e].status = "lp-feasible";
      absorb(r);
    }
    for (const auto& t : out.tests)
      if (t.feasible) edges.push_back(t.edge);
    // Zero net flux at every source is realized only by the edgeless graph,
    // which does not count as a realization.
    if (edges.empty()) out.realizable = false;
  }
  out.graph = EGraph(g.dim(), comp.vertices(), std::move(edges), g.species());
  return out;
}

inline EGraph gmax(const EGraph& g) { return compute_gmax(g).graph; }

inline bool has_wr_realization(const EGraph& g, const EGraph& h) {
  if (!is_weakly_reversible(h)) return false;
  auto sys = build_lifted_system(g, h);
  LinearProgram<Rational> lp(sys.num_vars(), true);
  for (const auto& r : sys.de_rows) lp.add_row(r, RowSense::eq, Rational(0));
  for (std::size_t j = 0; j < sys.num_vars(); ++j) {
    RatVector r(sys.num_vars());
    r[j] = 1;
    lp.add_row(std::move(r), RowSense::ge, Rational(1));
  }
  return solve_lp(lp).status != LpStatus::infeasible;
}

// One application of the collinear reduction: y1 -> y3 with y2 strictly
// between, y2 = y1 + t (y3 - y1), 0 < t < 1.
struct CollinearSubstitution {
  std::size_t y1, y2, y3;  // vertex indices of h
  Rational t;
  Rational c12, c21, c23;  // flux of y1->y3 moved onto y1->y2, y2->y1, y2->y3
};

struct ReducedGraph {
  EGraph graph;
  std::vector<CollinearSubstitution> table;
};

namespace detail {

// t with p = a + t (c - a) and 0 < t < 1, if it exists.
inline std::optional<Rational> between(const RatVector& a, const RatVector& p, const RatVector& c) {
  std::optional<Rational> t;
  for (std::size_t k = 0; k < a.size(); ++k) {
    Rational d = c[k] - a[k], q = p[k] - a[k];
    if (d == 0) {
      if (q != 0) return std::nullopt;
      continue;
    }
    Rational tk = q / d;
    if (t && *t != tk) return std::nullopt;
    t = tk;
  }
  if (!t || *t <= 0 || *t >= 1) return std::nullopt;
  return t;
}

}  // namespace detail

inline ReducedGraph collinear_reduce(const EGraph& h) {
  std::set<Edge> edges(h.edges().begin(), h.edges().end());
  ReducedGraph out;
  const auto& V = h.vertices();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : edges) {
      const auto [a, c] = e;  // copies: the set is modified below
      std::size_t best = V.size();
      Rational best_t;
      for (std::size_t b = 0; b < V.size(); ++b) {
        if (b == a || b == c) continue;
        auto t = detail::between(V[a], V[b], V[c]);
        if (t && (best == V.size() || *t < best_t)) {
          best = b;
          best_t = *t;
        }
      }
      if (best == V.size()) continue;
      CollinearSubstitution sub{a, best, c, best_t, 1 / best_t, (1 - best_t) / best_t, Rational(1)};
      out.table.push_back(sub);
      edges.erase({a, c});
      edges.insert({a, best});
      edges.insert({best, a});
      edges.insert({best, c});
      changed = true;
      break;
    }
  }
  out.graph = EGraph(h.dim(), V, std::vector<Edge>(edges.begin(), edges.end()), h.species());
  return out;
}

// Maps an edge flux on h to the reduced graph, following the substitutions.
template <class T>
std::vector<T> transfer_flux(const EGraph& h, const ReducedGraph& r, const std::vector<T>& gamma) {
  if (gamma.size() != h.num_edges()) throw std::invalid_argument("flux length mismatch");
  std::map<Edge, T> f;
  for (std::size_t e = 0; e < h.num_edges(); ++e) f[h.edges()[e]] += gamma[e];
  auto conv = [](const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>)
      return q;
    else
      return static_cast<T>(to_double(q));
  };
  for (const auto& s : r.table) {
    T moved = f[{s.y1, s.y3}];
    f.erase({s.y1, s.y3});
    f[{s.y1, s.y2}] += conv(s.c12) * moved;
    f[{s.y2, s.y1}] += conv(s.c21) * moved;
    f[{s.y2, s.y3}] += conv(s.c23) * moved;
  }
  std::vector<T> out(r.graph.num_edges(), T(0));
  for (std::size_t e = 0; e < r.graph.num_edges(); ++e) {
    auto it = f.find(r.graph.edges()[e]);
    if (it != f.end()) out[e] = it->second;
  }
  return out;
}

}  // namespace dtflux
