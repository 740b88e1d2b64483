#pragma once

#include "dtflux/cone.hpp"
#include "dtflux/egraph.hpp"
#include "dtflux/realization.hpp"
#include "dtflux/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace dtflux {

inline std::vector<std::string> edge_labels(const EGraph& g) {
  std::vector<std::string> out;
  for (std::size_t e = 0; e < g.num_edges(); ++e) out.push_back("b" + std::to_string(e + 1));
  return out;
}

namespace detail {

inline std::vector<RatVector> species_balance_rows(const EGraph& g) {
  std::vector<RatVector> rows(g.dim(), RatVector(g.num_edges()));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto d = g.reaction_vector(e);
    for (std::size_t k = 0; k < g.dim(); ++k) rows[k][e] = d[k];
  }
  return rows;
}

inline std::vector<RatVector> vertex_balance_rows(const EGraph& g) {
  std::vector<RatVector> rows(g.num_vertices(), RatVector(g.num_edges()));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    rows[g.edges()[e].second][e] += 1;
    rows[g.edges()[e].first][e] -= 1;
  }
  return rows;
}

}  // namespace detail

// Closure of the equilibrium flux cone.
inline HCone eq_flux_cone(const EGraph& g) {
  return normalize(nonneg_cone(g.num_edges(), detail::species_balance_rows(g), edge_labels(g)));
}

// Closure of the toric (vertex-balanced) flux cone.
inline HCone toric_flux_cone(const EGraph& g) {
  auto eq = detail::species_balance_rows(g);
  auto vb = detail::vertex_balance_rows(g);
  eq.insert(eq.end(), vb.begin(), vb.end());
  return normalize(nonneg_cone(g.num_edges(), std::move(eq), edge_labels(g)));
}

inline HCone dt_flux_cone_wrt(const EGraph& g, const EGraph& h, const FmOptions& opt = {}) {
  auto sys = build_lifted_system(g, h);
  std::vector<std::size_t> keep(sys.n_beta);
  std::iota(keep.begin(), keep.end(), 0);
  HCone c = fm_project(lifted_cone(sys), keep, opt);
  c.labels = edge_labels(g);
  return c;
}

inline HCone zero_cone(std::size_t dim, std::vector<std::string> labels) {
  std::vector<RatVector> eq;
  for (std::size_t j = 0; j < dim; ++j) {
    RatVector r(dim);
    r[j] = 1;
    eq.push_back(r);
  }
  HCone c = make_cone(dim, eq, {}, std::move(labels));
  c.normalized = true;
  return c;
}

struct DtConeOptions {
  bool reduce = false;  // project through the collinear reduction of G^max
  FmOptions fm;
};

// Closure of F^dt(g). The zero cone when g has no weakly reversible realization.
inline HCone dt_flux_cone(const EGraph& g, const DtConeOptions& opt = {}) {
  auto gm = compute_gmax(g);
  if (!gm.realizable) return zero_cone(g.num_edges(), edge_labels(g));
  EGraph h = opt.reduce ? collinear_reduce(gm.graph).graph : gm.graph;
  return dt_flux_cone_wrt(g, h, opt.fm);
}

// Lifted-LP membership test for F^dt(g), built once per network.
class DtMembershipOracle {
 public:
  explicit DtMembershipOracle(const EGraph& g, bool reduce = false) : g_(g) {
    auto gm = compute_gmax(g);
    realizable_ = gm.realizable;
    h_ = reduce ? collinear_reduce(gm.graph).graph : gm.graph;
    auto sys = build_lifted_system(g, h_);
    nb_ = sys.n_beta;
    ng_ = sys.n_gamma;
    auto rows = sys.de_rows;
    rows.insert(rows.end(), sys.vb_rows.begin(), sys.vb_rows.end());
    for (const auto& r : rows) {
      std::vector<double> a(ng_), b(nb_);
      for (std::size_t j = 0; j < nb_; ++j) b[j] = -to_double(r[j]);
      for (std::size_t j = 0; j < ng_; ++j) a[j] = to_double(r[nb_ + j]);
      a_rows_.push_back(std::move(a));
      b_rows_.push_back(std::move(b));
    }
  }

  bool realizable() const { return realizable_; }
  const EGraph& realization_graph() const { return h_; }

  struct Result {
    MembershipStatus status;
    std::vector<double> gamma;  // on realization_graph(), scaled back to beta's units
  };

  // Feasible gamma >= 0 with residual tolerance tol (beta scaled to max 1);
  // strict interior when some feasible gamma has min entry > tol.
  Result classify(const std::vector<double>& beta, double tol = 1e-9) const {
    if (beta.size() != nb_) throw std::invalid_argument("flux vector length mismatch");
    Result out;
    if (!realizable_) {
      out.status = {Membership::outside, -std::numeric_limits<double>::infinity()};
      return out;
    }
    double scale = 0;
    for (double v : beta) scale = std::max(scale, std::abs(v));
    if (scale == 0) scale = 1;
    // gamma = t * 1 + delta, maximize t in [0, 1].
    LinearProgram<double> lp(ng_ + 1, true);
    for (std::size_t i = 0; i < a_rows_.size(); ++i) {
      std::vector<double> row(ng_ + 1);
      double tsum = 0, rhs = 0;
      for (std::size_t j = 0; j < ng_; ++j) {
        row[j] = a_rows_[i][j];
        tsum += a_rows_[i][j];
      }
      row[ng_] = tsum;
      for (std::size_t j = 0; j < nb_; ++j) rhs += b_rows_[i][j] * beta[j] / scale;
      lp.add_row(std::move(row), RowSense::eq, rhs);
    }
    std::vector<double> cap(ng_ + 1);
    cap[ng_] = 1;
    lp.add_row(cap, RowSense::le, 1.0);
    lp.objective.assign(ng_ + 1, 0.0);
    lp.objective[ng_] = -1;
    LpOptions<double> o;
    o.feas_tol = tol;
    auto res = solve_lp(lp, o);
    if (res.status == LpStatus::infeasible) {
      out.status = {Membership::outside, -res.infeasibility};
      return out;
    }
    double t = res.x[ng_];
    out.gamma.resize(ng_);
    for (std::size_t j = 0; j < ng_; ++j) out.gamma[j] = (res.x[j] + t) * scale;
    out.status.slack = t;
    out.status.kind = t > tol ? Membership::strict_interior : Membership::boundary;
    return out;
  }

 private:
  EGraph g_, h_;
  bool realizable_ = false;
  std::size_t nb_ = 0, ng_ = 0;
  std::vector<std::vector<double>> a_rows_, b_rows_;
};

inline MembershipStatus dt_flux_membership(const EGraph& g, const std::vector<double>& beta, double tol = 1e-9) {
  DtMembershipOracle oracle(g);
  if (!oracle.realizable()) throw ConeError("F^dt is empty: no weakly reversible realization exists");
  return oracle.classify(beta, tol).status;
}

struct LocusDims {
  std::optional<std::size_t> dim_fdt;  // nullopt when F^dt is empty
  std::size_t dim_s = 0;
  std::optional<std::size_t> dim_kdt;
  bool formula_guaranteed = false;     // kinetic condition holds
};

inline LocusDims locus_dims(const EGraph& g, const HCone& fdt) {
  LocusDims d;
  d.dim_s = stoichiometric_subspace(g).dim;
  d.formula_guaranteed = kinetic_condition_check(g);
  if (has_positive_point(fdt)) {
    d.dim_fdt = cone_dim(fdt);
    d.dim_kdt = d.dim_s + *d.dim_fdt;
  }
  return d;
}

inline LocusDims locus_dims(const EGraph& g) { return locus_dims(g, dt_flux_cone(g)); }

}  // namespace dtflux
