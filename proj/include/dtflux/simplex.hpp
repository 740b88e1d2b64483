#pragma once

#include "dtflux/rational.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <stdexcept>
#include <vector>

namespace dtflux {

template <class T>
struct LpTraits;

template <>
struct LpTraits<Rational> {
  static bool zero(const Rational& x, const Rational&) { return x == 0; }
  static bool pos(const Rational& x, const Rational&) { return x > 0; }
  static bool neg(const Rational& x, const Rational&) { return x < 0; }
  static Rational default_tol() { return Rational(0); }
};

template <>
struct LpTraits<double> {
  static bool zero(double x, double tol) { return std::abs(x) <= tol; }
  static bool pos(double x, double tol) { return x > tol; }
  static bool neg(double x, double tol) { return x < -tol; }
  static double default_tol() { return 1e-11; }
};

enum class RowSense { eq, ge, le };
enum class LpStatus { optimal, infeasible, unbounded };

// min c.x  s.t.  rows (sense) rhs,  x_j >= 0 where nonneg[j], free otherwise.
template <class T>
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> nonneg;
  std::vector<std::vector<T>> rows;
  std::vector<RowSense> senses;
  std::vector<T> rhs;
  std::vector<T> objective;  // empty means feasibility only

  explicit LinearProgram(std::size_t n = 0, bool all_nonneg = false)
      : num_vars(n), nonneg(n, all_nonneg) {}

  void add_row(std::vector<T> coeffs, RowSense s, T b) {
    if (coeffs.size() != num_vars) throw std::invalid_argument("LP row length mismatch");
    rows.push_back(std::move(coeffs));
    senses.push_back(s);
    rhs.push_back(std::move(b));
  }
};

template <class T>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<T> x;
  T objective{};
  // When infeasible: multipliers u per row with u >= 0 on ge rows, u <= 0 on
  // le rows, sum u_i row_i = c where c_j <= 0 (nonneg) or c_j = 0 (free),
  // and sum u_i rhs_i > 0.
  std::vector<T> farkas;
  T infeasibility{};  // phase one optimum
  std::size_t pivots = 0;
};

template <class T>
struct LpOptions {
  T tol = LpTraits<T>::default_tol();      // pivot / reduced cost tolerance
  T feas_tol = LpTraits<T>::default_tol(); // phase one acceptance
  std::size_t max_pivots = 1000000;
};

namespace detail {

template <class T>
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t ncols) : m_(m), n_(ncols), a_(m, std::vector<T>(ncols + 1)), obj_(ncols + 1), basis_(m) {}

  T& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  T& rhs(std::size_t i) { return a_[i][n_]; }
  T& cost(std::size_t j) { return obj_[j]; }
  T& value() { return obj_[n_]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c, const T& tol) {
    using Tr = LpTraits<T>;
    T inv = T(1) / a_[r][c];
    auto& prow = a_[r];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j) {
      if (!Tr::zero(prow[j], T(0))) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    prow[c] = T(1);
    auto eliminate = [&](std::vector<T>& row) {
      if (Tr::zero(row[c], T(0))) return;
      T f = row[c];
      for (auto j : nz) row[j] -= f * prow[j];
      row[c] = T(0);
      if constexpr (std::is_floating_point_v<T>) {
        for (auto j : nz)
          if (std::abs(row[j]) < tol * 1e-3) row[j] = 0;
      }
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(a_[i]);
    eliminate(obj_);
    basis_[r] = c;
  }

  // Bland's rule. Returns false when unbounded.
  enum class Outcome { optimal, unbounded, limit };
  Outcome run(const std::vector<bool>& allowed, const T& tol, std::size_t& pivots, std::size_t max_pivots) {
    using Tr = LpTraits<T>;
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && Tr::neg(obj_[j], tol)) {
          enter = j;
          break;
        }
      if (enter == n_) return Outcome::optimal;
      std::size_t leave = m_;
      T best{};
      for (std::size_t i = 0; i < m_; ++i) {
        if (!Tr::pos(a_[i][enter], tol)) continue;
        T ratio = a_[i][n_] / a_[i][enter];
        if (leave == m_ || ratio < best || (!(best < ratio) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return Outcome::unbounded;
      pivot(leave, enter, tol);
      if (++pivots > max_pivots) return Outcome::limit;
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<T>> a_;
  std::vector<T> obj_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

// Two-phase dense tableau simplex with Bland's rule.
template <class T>
LpResult<T> solve_lp(const LinearProgram<T>& lp, const LpOptions<T>& opt = {}) {
  using Tr = LpTraits<T>;
  const std::size_t n = lp.num_vars, m = lp.rows.size();
  if (lp.nonneg.size() != n) throw std::invalid_argument("LP bound vector length mismatch");
  if (!lp.objective.empty() && lp.objective.size() != n)
    throw std::invalid_argument("LP objective length mismatch");

  // Column layout: structural (+ split negative parts), slacks, artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, static_cast<std::size_t>(-1));
  std::size_t nc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = nc++;
    if (!lp.nonneg[j]) neg_col[j] = nc++;
  }
  std::vector<std::size_t> slack_col(m, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < m; ++i)
    if (lp.senses[i] != RowSense::eq) slack_col[i] = nc++;
  const std::size_t art0 = nc;
  nc += m;

  detail::Tableau<T> tab(m, nc);
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    sign[i] = Tr::neg(lp.rhs[i], T(0)) ? -1 : 1;
    T s = T(sign[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const T& v = lp.rows[i][j];
      if (Tr::zero(v, T(0))) continue;
      tab.at(i, pos_col[j]) = s * v;
      if (neg_col[j] != static_cast<std::size_t>(-1)) tab.at(i, neg_col[j]) = -s * v;
    }
    if (lp.senses[i] == RowSense::ge) tab.at(i, slack_col[i]) = -s;
    if (lp.senses[i] == RowSense::le) tab.at(i, slack_col[i]) = s;
    tab.rhs(i) = s * lp.rhs[i];
    tab.at(i, art0 + i) = T(1);
    tab.basic(i) = art0 + i;
  }
  // Phase one objective: sum of artificials, expressed in nonbasic columns.
  for (std::size_t j = 0; j < art0; ++j) {
    T s{};
    for (std::size_t i = 0; i < m; ++i) s -= tab.at(i, j);
    tab.cost(j) = s;
  }
  {
    T s{};
    for (std::size_t i = 0; i < m; ++i) s -= tab.rhs(i);
    tab.value() = s;
  }

  LpResult<T> res;
  std::vector<bool> allowed(nc, true);
  auto out1 = tab.run(allowed, opt.tol, res.pivots, opt.max_pivots);
  if (out1 == decltype(out1)::limit) throw std::runtime_error("simplex pivot limit exceeded");
  res.infeasibility = -tab.value();
  if (Tr::pos(res.infeasibility, opt.feas_tol)) {
    res.status = LpStatus::infeasible;
    res.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) res.farkas[i] = (T(1) - tab.cost(art0 + i)) * T(sign[i]);
    return res;
  }

  // Drive artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basic(i) < art0) continue;
    std::size_t best = art0;
    for (std::size_t j = 0; j < art0; ++j) {
      if (Tr::zero(tab.at(i, j), opt.tol)) continue;
      using std::abs;
      if (best == art0 || abs(tab.at(i, best)) < abs(tab.at(i, j))) best = j;
      if constexpr (!std::is_floating_point_v<T>) break;
    }
    if (best != art0) tab.pivot(i, best, opt.tol);
  }
  for (std::size_t j = art0; j < nc; ++j) allowed[j] = false;

  // Phase two.
  std::vector<T> c(nc);
  if (!lp.objective.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      c[pos_col[j]] = lp.objective[j];
      if (neg_col[j] != static_cast<std::size_t>(-1)) c[neg_col[j]] = -lp.objective[j];
    }
  }
  for (std::size_t j = 0; j <= nc; ++j) {
    T v = j < nc ? c[j] : T(0);
    for (std::size_t i = 0; i < m; ++i) {
      const T& cb = c[tab.basic(i)];
      if (!Tr::zero(cb, T(0))) v -= cb * (j < nc ? tab.at(i, j) : tab.rhs(i));
    }
    if (j < nc)
      tab.cost(j) = v;
    else
      tab.value() = v;
  }
  auto out2 = tab.run(allowed, opt.tol, res.pivots, opt.max_pivots);
  if (out2 == decltype(out2)::limit) throw std::runtime_error("simplex pivot limit exceeded");

  std::vector<T> col_val(nc);
  for (std::size_t i = 0; i < m; ++i) col_val[tab.basic(i)] = tab.rhs(i);
  res.x.assign(n, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    res.x[j] = col_val[pos_col[j]];
    if (neg_col[j] != static_cast<std::size_t>(-1)) res.x[j] -= col_val[neg_col[j]];
  }
  res.objective = -tab.value();
  res.status = out2 == decltype(out2)::unbounded ? LpStatus::unbounded : LpStatus::optimal;
  return res;
}

// Checks the infeasibility certificate of solve_lp (exact for rationals).
template <class T>
bool verify_farkas(const LinearProgram<T>& lp, const std::vector<T>& u, T tol = T(0)) {
  using Tr = LpTraits<T>;
  if (u.size() != lp.rows.size()) return false;
  std::vector<T> c(lp.num_vars);
  T b{};
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (lp.senses[i] == RowSense::ge && Tr::neg(u[i], tol)) return false;
    if (lp.senses[i] == RowSense::le && Tr::pos(u[i], tol)) return false;
    for (std::size_t j = 0; j < lp.num_vars; ++j) c[j] += u[i] * lp.rows[i][j];
    b += u[i] * lp.rhs[i];
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.nonneg[j] ? Tr::pos(c[j], tol) : !Tr::zero(c[j], tol)) return false;
  }
  return Tr::pos(b, tol);
}

}  // namespace dtflux
