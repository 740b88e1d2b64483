#pragma once

#include "dtflux/exactlin.hpp"
#include "dtflux/rational.hpp"
#include "dtflux/simplex.hpp"

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtflux {

class ConeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {x in R^dim : eq x = 0, ineq x >= 0}
struct HCone {
  std::size_t dim = 0;
  std::vector<RatVector> eq;
  std::vector<RatVector> ineq;
  std::vector<std::string> labels;
  bool normalized = false;  // implicit equalities moved to eq, no redundant rows
};

// Positive rescaling so that the first nonzero entry is +-1 (+1 for equalities).
inline RatVector canonical_row(RatVector r, bool equality) {
  auto it = std::find_if(r.begin(), r.end(), [](const Rational& x) { return x != 0; });
  if (it == r.end()) return r;
  Rational f = abs(*it);
  if (equality && *it < 0) f = -f;
  for (auto& x : r)
    if (x != 0) x /= f;
  return r;
}

namespace detail {

inline void dedupe(std::vector<RatVector>& rows) {
  std::vector<RatVector> out;
  std::set<std::vector<std::string>> seen;
  for (auto& r : rows) {
    std::vector<std::string> key;
    key.reserve(r.size());
    for (const auto& x : r) key.push_back(x.str());
    if (seen.insert(key).second) out.push_back(std::move(r));
  }
  rows = std::move(out);
}

inline bool lex_less(const RatVector& a, const RatVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

inline std::vector<std::string> default_labels(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

}  // namespace detail

inline HCone make_cone(std::size_t dim, std::vector<RatVector> eq, std::vector<RatVector> ineq,
                       std::vector<std::string> labels = {}) {
  HCone c;
  c.dim = dim;
  if (labels.empty()) labels = detail::default_labels(dim, "x");
  if (labels.size() != dim) throw std::invalid_argument("cone label count mismatch");
  c.labels = std::move(labels);
  for (auto* rows : {&eq, &ineq}) {
    bool is_eq = rows == &eq;
    for (auto& r : *rows) {
      if (r.size() != dim) throw std::invalid_argument("cone row length mismatch");
      if (is_zero(r)) continue;
      (is_eq ? c.eq : c.ineq).push_back(canonical_row(std::move(r), is_eq));
    }
  }
  detail::dedupe(c.eq);
  detail::dedupe(c.ineq);
  return c;
}

// Nonnegative orthant intersected with {eq x = 0}.
inline HCone nonneg_cone(std::size_t dim, std::vector<RatVector> eq, std::vector<std::string> labels = {}) {
  std::vector<RatVector> ineq;
  for (std::size_t i = 0; i < dim; ++i) {
    RatVector r(dim);
    r[i] = 1;
    ineq.push_back(r);
  }
  return make_cone(dim, std::move(eq), std::move(ineq), std::move(labels));
}

struct FarkasCertificate {
  RatVector eq_multipliers;    // free
  RatVector ineq_multipliers;  // >= 0
};

struct FeasibilityResult {
  bool feasible = false;
  RatVector witness;
  FarkasCertificate certificate;
};

// Feasibility of {eq x = 0, ineq x >= 0, ineq_s x >= 1 for s in strict}.
inline FeasibilityResult lp_feasible(std::size_t dim, const std::vector<RatVector>& eq,
                                     const std::vector<RatVector>& ineq,
                                     const std::vector<std::size_t>& strict = {}) {
  std::vector<bool> is_strict(ineq.size(), false);
  for (auto s : strict) {
    if (s >= ineq.size()) throw std::out_of_range("strict index out of range");
    is_strict[s] = true;
  }
  // Rows with a single positive entry become variable bounds.
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> unit_row(dim, none);
  std::vector<bool> as_bound(ineq.size(), false);
  for (std::size_t i = 0; i < ineq.size(); ++i) {
    std::size_t nz = 0, at = 0;
    for (std::size_t j = 0; j < dim; ++j)
      if (ineq[i][j] != 0) {
        ++nz;
        at = j;
      }
    if (nz == 1 && ineq[i][at] > 0 && unit_row[at] == none) {
      unit_row[at] = i;
      as_bound[i] = !is_strict[i];
    }
  }
  LinearProgram<Rational> lp(dim);
  for (std::size_t j = 0; j < dim; ++j) lp.nonneg[j] = unit_row[j] != none;
  std::vector<std::size_t> lp_row_eq, lp_row_ineq;
  for (std::size_t i = 0; i < eq.size(); ++i) {
    lp.add_row(eq[i], RowSense::eq, Rational(0));
    lp_row_eq.push_back(i);
  }
  for (std::size_t i = 0; i < ineq.size(); ++i) {
    if (as_bound[i]) continue;
    lp.add_row(ineq[i], RowSense::ge, Rational(is_strict[i] ? 1 : 0));
    lp_row_ineq.push_back(i);
  }
  auto res = solve_lp(lp);
  FeasibilityResult out;
  if (res.status != LpStatus::infeasible) {
    out.feasible = true;
    out.witness = res.x;
    return out;
  }
  out.certificate.eq_multipliers.assign(eq.size(), Rational(0));
  out.certificate.ineq_multipliers.assign(ineq.size(), Rational(0));
  RatVector comb(dim);
  for (std::size_t k = 0; k < lp.rows.size(); ++k) {
    const Rational& u = res.farkas[k];
    if (u == 0) continue;
    if (k < lp_row_eq.size())
      out.certificate.eq_multipliers[lp_row_eq[k]] = u;
    else
      out.certificate.ineq_multipliers[lp_row_ineq[k - lp_row_eq.size()]] += u;
    for (std::size_t j = 0; j < dim; ++j)
      if (lp.rows[k][j] != 0) comb[j] += u * lp.rows[k][j];
  }
  for (std::size_t j = 0; j < dim; ++j) {
    if (comb[j] == 0) continue;
    std::size_t r = unit_row[j];
    out.certificate.ineq_multipliers[r] += -comb[j] / ineq[r][j];
  }
  return out;
}

// True when the multipliers combine the rows into 0 >= (positive).
inline bool verify_certificate(std::size_t dim, const std::vector<RatVector>& eq,
                               const std::vector<RatVector>& ineq,
                               const std::vector<std::size_t>& strict, const FarkasCertificate& c) {
  if (c.eq_multipliers.size() != eq.size() || c.ineq_multipliers.size() != ineq.size()) return false;
  RatVector comb(dim);
  for (std::size_t i = 0; i < eq.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) comb[j] += c.eq_multipliers[i] * eq[i][j];
  for (std::size_t i = 0; i < ineq.size(); ++i) {
    if (c.ineq_multipliers[i] < 0) return false;
    for (std::size_t j = 0; j < dim; ++j) comb[j] += c.ineq_multipliers[i] * ineq[i][j];
  }
  if (!is_zero(comb)) return false;
  Rational rhs = 0;
  for (auto s : strict) rhs += c.ineq_multipliers[s];
  return rhs > 0;
}

struct ImplicitEqualities {
  std::vector<std::size_t> rows;  // indices of ineq rows that vanish on the whole cone
  RatVector point;                // satisfies every other ineq row with value >= 1
};

inline ImplicitEqualities implicit_equalities(std::size_t dim, const std::vector<RatVector>& eq,
                                              const std::vector<RatVector>& ineq) {
  const std::size_t k = ineq.size();
  LinearProgram<Rational> lp(dim + k);
  for (std::size_t j = 0; j < k; ++j) lp.nonneg[dim + j] = true;
  for (const auto& r : ineq) {
    std::size_t nz = 0, at = 0;
    for (std::size_t j = 0; j < dim; ++j)
      if (r[j] != 0) {
        ++nz;
        at = j;
      }
    if (nz == 1 && r[at] > 0) lp.nonneg[at] = true;
  }
  for (const auto& r : eq) {
    RatVector row(r);
    row.resize(dim + k);
    lp.add_row(std::move(row), RowSense::eq, Rational(0));
  }
  for (std::size_t i = 0; i < k; ++i) {
    RatVector row(ineq[i]);
    row.resize(dim + k);
    row[dim + i] = -1;
    lp.add_row(row, RowSense::ge, Rational(0));
    RatVector cap(dim + k);
    cap[dim + i] = 1;
    lp.add_row(std::move(cap), RowSense::le, Rational(1));
  }
  lp.objective.assign(dim + k, Rational(0));
  for (std::size_t i = 0; i < k; ++i) lp.objective[dim + i] = -1;
  auto res = solve_lp(lp);
  if (res.status != LpStatus::optimal) throw ConeError("implicit equality LP failed");
  ImplicitEqualities out;
  out.point.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(dim));
  for (std::size_t i = 0; i < k; ++i)
    if (res.x[dim + i] == 0) out.rows.push_back(i);
  return out;
}

// Drops inequality rows implied by the remaining ones, scanning in order.
inline void remove_redundant(std::size_t dim, const std::vector<RatVector>& eq, std::vector<RatVector>& ineq) {
  for (std::size_t i = 0; i < ineq.size();) {
    std::vector<RatVector> trial;
    trial.reserve(ineq.size());
    for (std::size_t j = 0; j < ineq.size(); ++j)
      if (j != i) trial.push_back(ineq[j]);
    RatVector neg = ineq[i];
    for (auto& x : neg) x = -x;
    trial.push_back(neg);
    if (!lp_feasible(dim, eq, trial, {trial.size() - 1}).feasible)
      ineq.erase(ineq.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
}

// Implicit equalities become equations, equations are reduced to RREF,
// inequalities are reduced modulo the equations, scaled and made irredundant.
inline HCone normalize(const HCone& c) {
  if (c.normalized) return c;
  auto imp = implicit_equalities(c.dim, c.eq, c.ineq);
  std::vector<bool> implicit(c.ineq.size(), false);
  for (auto i : imp.rows) implicit[i] = true;
  RatMatrix e(0, c.dim);
  for (const auto& r : c.eq) e.append_row(r);
  for (std::size_t i = 0; i < c.ineq.size(); ++i)
    if (implicit[i]) e.append_row(c.ineq[i]);
  auto [red, pivots] = rref(e);
  HCone out;
  out.dim = c.dim;
  out.labels = c.labels;
  for (std::size_t k = 0; k < pivots.size(); ++k) out.eq.push_back(red.row(k));
  for (std::size_t i = 0; i < c.ineq.size(); ++i) {
    if (implicit[i]) continue;
    RatVector r = c.ineq[i];
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      Rational f = r[pivots[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < c.dim; ++j)
        if (red(k, j) != 0) r[j] -= f * red(k, j);
    }
    if (is_zero(r)) continue;
    out.ineq.push_back(canonical_row(std::move(r), false));
  }
  detail::dedupe(out.ineq);
  std::sort(out.ineq.begin(), out.ineq.end(), [](const RatVector& a, const RatVector& b) {
    return detail::lex_less(b, a);
  });
  remove_redundant(out.dim, out.eq, out.ineq);
  out.normalized = true;
  return out;
}

inline std::size_t cone_dim(const HCone& c) {
  HCone n = normalize(c);
  return n.dim - n.eq.size();
}

// A point with every non-implicit inequality strictly positive; nullopt for {0}.
inline std::optional<RatVector> relative_interior_point(const HCone& c) {
  auto imp = implicit_equalities(c.dim, c.eq, c.ineq);
  if (imp.rows.size() < c.ineq.size()) return imp.point;
  // Every inequality is tight: the cone is a linear subspace.
  RatMatrix e(0, c.dim);
  for (const auto& r : c.eq) e.append_row(r);
  for (const auto& r : c.ineq) e.append_row(r);
  auto ker = kernel_basis(e);
  if (ker.empty()) return std::nullopt;
  RatVector p(c.dim);
  for (const auto& v : ker)
    for (std::size_t j = 0; j < c.dim; ++j) p[j] += v[j];
  return p;
}

inline bool contains(const HCone& c, const RatVector& x) {
  if (x.size() != c.dim) throw std::invalid_argument("point dimension mismatch");
  for (const auto& r : c.eq)
    if (dot(r, x) != 0) return false;
  for (const auto& r : c.ineq)
    if (dot(r, x) < 0) return false;
  return true;
}

enum class Membership { strict_interior, boundary, outside };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::strict_interior: return "strict_interior";
    case Membership::boundary: return "boundary";
    default: return "outside";
  }
}

struct MembershipStatus {
  Membership kind = Membership::outside;
  double slack = 0;  // smallest normalized inequality slack (infinity if none)
};

// Floating point classification relative to the cone's own span. Interior
// means relative interior.
inline MembershipStatus membership(const HCone& cone, const std::vector<double>& p, double tol = 1e-9) {
  if (p.size() != cone.dim) throw std::invalid_argument("point dimension mismatch");
  const HCone& c = cone.normalized ? cone : normalize(cone);
  double scale = 0;
  for (double v : p) scale = std::max(scale, std::abs(v));
  if (scale == 0) scale = 1;
  auto eval = [&](const RatVector& r) {
    double s = 0, nr = 0;
    for (std::size_t j = 0; j < c.dim; ++j) {
      double a = to_double(r[j]);
      s += a * p[j] / scale;
      nr += a * a;
    }
    return s / std::sqrt(nr);
  };
  MembershipStatus out;
  out.slack = std::numeric_limits<double>::infinity();
  bool bad = false;
  for (const auto& r : c.eq)
    if (std::abs(eval(r)) > tol) bad = true;
  for (const auto& r : c.ineq) out.slack = std::min(out.slack, eval(r));
  if (bad || out.slack < -tol)
    out.kind = Membership::outside;
  else if (out.slack > tol)
    out.kind = Membership::strict_interior;
  else
    out.kind = Membership::boundary;
  bool all_zero = std::all_of(p.begin(), p.end(), [](double v) { return v == 0; });
  if (all_zero && c.dim > c.eq.size()) out.kind = Membership::boundary;
  return out;
}

struct FmOptions {
  bool prune = true;  // LP redundancy removal after each elimination
};

// Exact projection onto the coordinates in `keep` (kept in the given order).
inline HCone fm_project(const HCone& c, const std::vector<std::size_t>& keep, const FmOptions& opt = {}) {
  const std::size_t n = c.dim;
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) throw std::out_of_range("fm_project: keep index out of range");
    if (kept[k]) throw std::invalid_argument("fm_project: duplicate keep index");
    kept[k] = true;
  }
  // Column order: eliminated variables first, then kept ones.
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < n; ++j)
    if (!kept[j]) order.push_back(j);
  const std::size_t ne = order.size();
  for (auto k : keep) order.push_back(k);
  auto permute = [&](const RatVector& r) {
    RatVector out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = r[order[j]];
    return out;
  };

  RatMatrix e(0, n);
  for (const auto& r : c.eq) e.append_row(permute(r));
  auto [red, pivots] = rref(e, ne);
  std::vector<RatVector> eq_rows;
  for (std::size_t k = pivots.size(); k < red.rows(); ++k) {
    RatVector r = red.row(k);
    if (!is_zero(r)) eq_rows.push_back(std::move(r));
  }
  std::vector<RatVector> rows;
  for (const auto& r0 : c.ineq) {
    RatVector r = permute(r0);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      Rational f = r[pivots[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (red(k, j) != 0) r[j] -= f * red(k, j);
    }
    if (!is_zero(r)) rows.push_back(canonical_row(std::move(r), false));
  }
  detail::dedupe(rows);

  std::vector<bool> alive(ne, true);
  for (auto p : pivots) alive[p] = false;
  while (true) {
    std::size_t best = ne, best_cost = 0;
    for (std::size_t v = 0; v < ne; ++v) {
      if (!alive[v]) continue;
      std::size_t np = 0, nn = 0;
      for (const auto& r : rows) {
        if (r[v] > 0) ++np;
        if (r[v] < 0) ++nn;
      }
      std::size_t cost = np * nn;
      if (best == ne || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    if (best == ne) break;
    alive[best] = false;
    std::vector<RatVector> next, pos, neg;
    for (auto& r : rows) {
      if (r[best] > 0)
        pos.push_back(std::move(r));
      else if (r[best] < 0)
        neg.push_back(std::move(r));
      else
        next.push_back(std::move(r));
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational a = p[best], b = -q[best];
        RatVector r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = b * p[j] + a * q[j];
        r[best] = 0;
        if (!is_zero(r)) next.push_back(canonical_row(std::move(r), false));
      }
    detail::dedupe(next);
    if (opt.prune) remove_redundant(n, eq_rows, next);
    rows = std::move(next);
  }

  HCone out;
  out.dim = keep.size();
  for (auto k : keep) out.labels.push_back(c.labels.empty() ? "x" + std::to_string(k + 1) : c.labels[k]);
  auto tail = [&](const RatVector& r) { return RatVector(r.begin() + static_cast<std::ptrdiff_t>(ne), r.end()); };
  for (const auto& r : eq_rows) out.eq.push_back(tail(r));
  for (const auto& r : rows) out.ineq.push_back(tail(r));
  return normalize(out);
}

struct ConeGenerators {
  std::vector<RatVector> lineality;
  std::vector<RatVector> rays;
};

// Double description method; throws ConeError when the ray budget is exceeded.
inline ConeGenerators generators(const HCone& c, std::size_t max_rays = 200000) {
  using Bits = boost::dynamic_bitset<>;
  const std::size_t n = c.dim, m = c.ineq.size();
  RatMatrix e(0, n);
  for (const auto& r : c.eq) e.append_row(r);
  std::vector<RatVector> lin = e.rows() ? kernel_basis(e) : std::vector<RatVector>{};
  if (!e.rows())
    for (std::size_t j = 0; j < n; ++j) {
      RatVector v(n);
      v[j] = 1;
      lin.push_back(v);
    }
  std::vector<RatVector> rays;
  std::vector<Bits> zero;

  for (std::size_t i = 0; i < m; ++i) {
    const RatVector& a = c.ineq[i];
    std::size_t li = lin.size();
    for (std::size_t k = 0; k < lin.size(); ++k)
      if (dot(a, lin[k]) != 0) {
        li = k;
        break;
      }
    if (li < lin.size()) {
      RatVector l = lin[li];
      Rational al = dot(a, l);
      if (al < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(li));
      for (auto& v : lin) {
        Rational f = dot(a, v) / al;
        if (f != 0)
          for (std::size_t j = 0; j < n; ++j) v[j] -= f * l[j];
      }
      for (std::size_t r = 0; r < rays.size(); ++r) {
        Rational f = dot(a, rays[r]) / al;
        if (f != 0) {
          for (std::size_t j = 0; j < n; ++j) rays[r][j] -= f * l[j];
          rays[r] = primitive(rays[r]);
        }
        zero[r].set(i);
      }
      Bits z(m);
      for (std::size_t p = 0; p < i; ++p) z.set(p);
      rays.push_back(primitive(l));
      zero.push_back(z);
      continue;
    }
    std::vector<std::size_t> P, N;
    std::vector<Rational> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      if (val[r] > 0) P.push_back(r);
      if (val[r] < 0) N.push_back(r);
    }
    std::vector<RatVector> next;
    std::vector<Bits> nzero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (val[r] < 0) continue;
      next.push_back(rays[r]);
      Bits z = zero[r];
      if (val[r] == 0) z.set(i);
      nzero.push_back(z);
    }
    for (auto p : P)
      for (auto q : N) {
        Bits z = zero[p] & zero[q];
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && z.is_subset_of(zero[r])) adjacent = false;
        if (!adjacent) continue;
        RatVector v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = val[p] * rays[q][j] - val[q] * rays[p][j];
        next.push_back(primitive(v));
        z.set(i);
        nzero.push_back(z);
        if (next.size() > max_rays) throw ConeError("double description ray budget exceeded");
      }
    rays = std::move(next);
    zero = std::move(nzero);
  }
  detail::dedupe(rays);
  for (auto& v : lin) v = primitive(v);
  return {std::move(lin), std::move(rays)};
}

inline bool cone_subset(const HCone& a, const HCone& b) {
  if (a.dim != b.dim) throw std::invalid_argument("cone dimension mismatch");
  auto g = generators(a);
  for (const auto& l : g.lineality) {
    for (const auto& r : b.eq)
      if (dot(r, l) != 0) return false;
    for (const auto& r : b.ineq)
      if (dot(r, l) != 0) return false;
  }
  for (const auto& x : g.rays)
    if (!contains(b, x)) return false;
  return true;
}

inline bool cone_equal(const HCone& a, const HCone& b) { return cone_subset(a, b) && cone_subset(b, a); }

inline HCone intersect(const HCone& a, const HCone& b) {
  if (a.dim != b.dim) throw std::invalid_argument("cone dimension mismatch");
  auto eq = a.eq;
  eq.insert(eq.end(), b.eq.begin(), b.eq.end());
  auto ineq = a.ineq;
  ineq.insert(ineq.end(), b.ineq.begin(), b.ineq.end());
  return make_cone(a.dim, eq, ineq, a.labels);
}

// True when the cone meets the open positive orthant.
inline bool has_positive_point(const HCone& c) {
  auto ineq = c.ineq;
  std::vector<std::size_t> strict;
  for (std::size_t j = 0; j < c.dim; ++j) {
    RatVector r(c.dim);
    r[j] = 1;
    strict.push_back(ineq.size());
    ineq.push_back(r);
  }
  return lp_feasible(c.dim, c.eq, ineq, strict).feasible;
}

inline nlohmann::json to_json(const HCone& c) {
  auto rows = [](const std::vector<RatVector>& rs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rs) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& x : r) row.push_back(to_string(x));
      out.push_back(row);
    }
    return out;
  };
  return {{"labels", c.labels}, {"eq", rows(c.eq)}, {"ineq", rows(c.ineq)}};
}

inline HCone cone_from_json(const nlohmann::json& j) {
  auto labels = j.at("labels").get<std::vector<std::string>>();
  auto rows = [&](const nlohmann::json& rs) {
    std::vector<RatVector> out;
    for (const auto& r : rs) {
      RatVector v;
      for (const auto& x : r) v.push_back(parse_rational(x.get<std::string>()));
      out.push_back(std::move(v));
    }
    return out;
  };
  return make_cone(labels.size(), rows(j.at("eq")), rows(j.at("ineq")), labels);
}

// One line per row, e.g. "b1 + b2 >= b4".
inline std::string to_text(const HCone& c) {
  auto side = [&](const RatVector& r, int sgn) {
    std::string s;
    for (std::size_t j = 0; j < r.size(); ++j) {
      Rational v = r[j] * sgn;
      if (v <= 0) continue;
      if (!s.empty()) s += " + ";
      if (v != 1) s += v.str() + "*";
      s += c.labels[j];
    }
    return s.empty() ? std::string("0") : s;
  };
  std::ostringstream os;
  for (const auto& r0 : c.eq) {
    RatVector r = primitive(r0);
    os << side(r, 1) << " = " << side(r, -1) << "\n";
  }
  for (const auto& r0 : c.ineq) {
    RatVector r = primitive(r0);
    os << side(r, 1) << " >= " << side(r, -1) << "\n";
  }
  return os.str();
}

}  // namespace dtflux
