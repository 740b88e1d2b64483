#pragma once

#include "dtflux/egraph.hpp"
#include "dtflux/fluxcone.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtflux {

using Vec = std::vector<double>;

// Double-precision view of a network for mass-action evaluations.
class MassAction {
 public:
  explicit MassAction(const EGraph& g) : g_(g), n_(g.dim()), m_(g.num_edges()) {
    src_.resize(m_, Vec(n_));
    d_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(m_));
    for (std::size_t e = 0; e < m_; ++e) {
      const auto& y = g.vertices()[g.edges()[e].first];
      auto d = g.reaction_vector(e);
      for (std::size_t k = 0; k < n_; ++k) {
        src_[e][k] = to_double(y[k]);
        d_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(e)) = to_double(d[k]);
      }
    }
    s_dim_ = stoichiometric_subspace(g).dim;
    if (n_ > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(d_, Eigen::ComputeFullU);
      basis_ = svd.matrixU().leftCols(static_cast<Eigen::Index>(s_dim_));
      complement_ = svd.matrixU().rightCols(static_cast<Eigen::Index>(n_ - s_dim_));
    }
  }

  const EGraph& graph() const { return g_; }
  std::size_t species() const { return n_; }
  std::size_t reactions() const { return m_; }
  std::size_t stoich_dim() const { return s_dim_; }
  const Eigen::MatrixXd& reaction_matrix() const { return d_; }
  const Eigen::MatrixXd& stoich_basis() const { return basis_; }        // orthonormal basis of S
  const Eigen::MatrixXd& conservation_basis() const { return complement_; }  // of S^perp

  double monomial(std::size_t e, const Vec& x) const {
    double v = 1;
    for (std::size_t k = 0; k < n_; ++k) {
      double y = src_[e][k];
      if (y == 0) continue;
      v *= y == 1 ? x[k] : std::pow(x[k], y);
    }
    return v;
  }

  Vec flux(const Vec& kappa, const Vec& x) const {
    check(kappa, x);
    Vec b(m_);
    for (std::size_t e = 0; e < m_; ++e) b[e] = kappa[e] * monomial(e, x);
    return b;
  }

  Vec f(const Vec& kappa, const Vec& x) const {
    Vec b = flux(kappa, x), out(n_, 0.0);
    for (std::size_t e = 0; e < m_; ++e)
      for (std::size_t k = 0; k < n_; ++k)
        out[k] += b[e] * d_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(e));
    return out;
  }

  Eigen::MatrixXd jacobian(const Vec& kappa, const Vec& x) const {
    check(kappa, x);
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t e = 0; e < m_; ++e) {
      double rate = kappa[e] * monomial(e, x);
      for (std::size_t c = 0; c < n_; ++c) {
        double y = src_[e][c];
        if (y == 0) continue;
        double dr = rate * y / x[c];
        for (std::size_t r = 0; r < n_; ++r)
          j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
              dr * d_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e));
      }
    }
    return j;
  }

  // Sum of |flux| * |reaction vector|, the natural size of f at x.
  double flux_scale(const Vec& kappa, const Vec& x) const {
    Vec b = flux(kappa, x);
    double s = 0;
    for (std::size_t e = 0; e < m_; ++e) s += std::abs(b[e]) * d_.col(static_cast<Eigen::Index>(e)).norm();
    return s;
  }

 private:
  void check(const Vec& kappa, const Vec& x) const {
    if (kappa.size() != m_) throw std::invalid_argument("rate vector length mismatch");
    if (x.size() != n_) throw std::invalid_argument("state vector length mismatch");
  }

  EGraph g_;
  std::size_t n_, m_, s_dim_ = 0;
  std::vector<Vec> src_;
  Eigen::MatrixXd d_, basis_, complement_;
};

inline Vec species_formation(const EGraph& g, const Vec& kappa, const Vec& x) { return MassAction(g).f(kappa, x); }
inline Eigen::MatrixXd jacobian(const EGraph& g, const Vec& kappa, const Vec& x) {
  return MassAction(g).jacobian(kappa, x);
}
inline Vec flux_at(const EGraph& g, const Vec& kappa, const Vec& x) { return MassAction(g).flux(kappa, x); }

inline Vec psi(const MassAction& sys, const Vec& x, const Vec& beta) {
  Vec ones(beta.size(), 1.0);
  Vec mono = sys.flux(ones, x);
  Vec k(beta.size());
  for (std::size_t e = 0; e < beta.size(); ++e) k[e] = beta[e] / mono[e];
  return k;
}
inline Vec psi(const EGraph& g, const Vec& x, const Vec& beta) { return psi(MassAction(g), x, beta); }

inline double horn_jackson(const Vec& x, const Vec& xs) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * (std::log(x[i] / xs[i]) - 1);
  return s;
}

inline double lyapunov_derivative(const MassAction& sys, const Vec& kappa, const Vec& x, const Vec& xs) {
  Vec fx = sys.f(kappa, x);
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::log(x[i] / xs[i]) * fx[i];
  return s;
}
inline double lyapunov_derivative(const EGraph& g, const Vec& kappa, const Vec& x, const Vec& xs) {
  return lyapunov_derivative(MassAction(g), kappa, x, xs);
}

// ---------------------------------------------------------------------------
// Equilibria

struct EquilibriumOptions {
  double tol = 1e-12;            // ||f|| <= tol * flux scale (relative; x -> 0 is never accepted)
  int max_newton = 60;           // per Newton phase
  int max_integration_steps = 100000;
  int restarts = 64;             // multistart Newton rounds in total
  int early_restarts = 8;        // of which run before integration
};

struct EquilibriumResult {
  bool converged = false;
  Vec x;
  double residual = std::numeric_limits<double>::infinity();
  int newton_iterations = 0;
  int integration_steps = 0;
  std::string message;
};

namespace detail {

class EquilibriumSolver {
 public:
  EquilibriumSolver(const MassAction& sys, const Vec& kappa, const Vec& x0, const EquilibriumOptions& opt)
      : sys_(sys), kappa_(kappa), x0_(x0), opt_(opt), n_(sys.species()) {
    W_ = sys.conservation_basis();
    B_ = sys.stoich_basis();
    double xm = 0;
    for (double v : x0) xm = std::max(xm, std::abs(v));
    cscale_ = 1 + xm;
    x0v_ = to_eigen(x0);
  }

  EquilibriumResult solve() {
    EquilibriumResult r;
    Eigen::VectorXd z(static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i) z[static_cast<Eigen::Index>(i)] = std::log(x0_[i]);
    const Eigen::VectorXd z0 = z;
    int newton = 0, steps = 0;
    if (newton_phase(z, newton)) return finish(z, r, newton, steps, true, "");
    // Deterministic multistart in log coordinates around x0 over a widening
    // box; conservation rows pull every start onto the class. The first few
    // starts run before integration, which is slow on stiff networks.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd best = z;
    double best_res = relative_merit(z);
    int k = 0;
    auto multistart = [&](int upto) {
      for (; k < std::min(upto, opt_.restarts); ++k) {
        double width = 4.0 + 12.0 * k / std::max(1, opt_.restarts - 1);
        Eigen::VectorXd zs = z0;
        for (Eigen::Index i = 0; i < zs.size(); ++i) zs[i] += width * u(rng);
        if (newton_phase(zs, newton)) {
          best = zs;
          return true;
        }
        double m = relative_merit(zs);
        if (std::isfinite(m) && m < best_res) {
          best_res = m;
          best = zs;
        }
      }
      return false;
    };
    if (multistart(opt_.early_restarts)) return finish(best, r, newton, steps, true, "");
    // Stable equilibria: follow the flow, then polish.
    for (int round = 0; round < 3 && steps < opt_.max_integration_steps; ++round) {
      if (!integrate_phase(z, steps)) break;
      if (newton_phase(z, newton)) return finish(z, r, newton, steps, true, "");
    }
    // Saddles, bistability or extreme rate ratios.
    if (multistart(opt_.restarts)) return finish(best, r, newton, steps, true, "");
    // Repelling equilibria inside a stable limit cycle: follow the flow backward.
    Eigen::VectorXd zb = z0;
    for (int round = 0; round < 3 && steps < opt_.max_integration_steps; ++round) {
      if (!integrate_phase(zb, steps, -1.0)) break;
      if (newton_phase(zb, newton)) return finish(zb, r, newton, steps, true, "");
    }
    return finish(best, r, newton, steps, false, "no positive equilibrium found in class");
  }

 private:
  static Eigen::VectorXd to_eigen(const Vec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }
  static Vec to_vec(const Eigen::VectorXd& v) { return Vec(v.data(), v.data() + v.size()); }

  // Species-formation rows are measured relative to the local flux size, so
  // the merit has no spurious minimum where all fluxes vanish.
  double fscale(const Eigen::VectorXd& x) const {
    double s = sys_.flux_scale(kappa_, to_vec(x));
    return s > 0 ? s : 1;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& z, double scale) const {
    Eigen::VectorXd x = z.array().exp();
    Vec fx = sys_.f(kappa_, to_vec(x));
    Eigen::VectorXd F(static_cast<Eigen::Index>(n_));
    auto c = W_.cols(), s = B_.cols();
    if (c > 0) F.head(c) = W_.transpose() * (x - x0v_) / cscale_;
    if (s > 0) F.tail(s) = B_.transpose() * to_eigen(fx) / scale;
    return F;
  }

  double relative_merit(const Eigen::VectorXd& z) const {
    Eigen::VectorXd x = z.array().exp();
    return residual(z, fscale(x)).squaredNorm();
  }

  bool converged(const Eigen::VectorXd& z, double* res = nullptr) const {
    Eigen::VectorXd x = z.array().exp();
    Vec xv = to_vec(x);
    Vec fx = sys_.f(kappa_, xv);
    double fn = to_eigen(fx).norm();
    if (res) *res = fn;
    if (!std::isfinite(fn)) return false;
    double cons = W_.cols() > 0 ? (W_.transpose() * (x - x0v_)).norm() : 0.0;
    if (cons > 1e-10 * cscale_) return false;
    return fn <= opt_.tol * sys_.flux_scale(kappa_, xv);
  }

  // Damped Newton on the residual; gives up after max_newton iterations or
  // when the relative merit stalls (less than halved over 10 iterations).
  // The line search holds the flux scale of the current iterate fixed, so
  // the Newton step is a descent direction for its merit.
  bool newton_phase(Eigen::VectorXd& z, int& iters) {
    double checkpoint = relative_merit(z);
    if (!std::isfinite(checkpoint)) return false;
    for (int it = 0; it < opt_.max_newton; ++it) {
      if (converged(z)) return true;
      if (it > 0 && it % 10 == 0) {
        double m = relative_merit(z);
        if (m > 0.5 * checkpoint) return false;
        checkpoint = m;
      }
      ++iters;
      Eigen::VectorXd x = z.array().exp();
      const double scale = fscale(x);
      Eigen::VectorXd F = residual(z, scale);
      const double merit = F.squaredNorm();
      Eigen::MatrixXd J(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
      auto c = W_.cols(), s = B_.cols();
      if (c > 0) J.topRows(c) = W_.transpose() * x.asDiagonal() / cscale_;
      if (s > 0) J.bottomRows(s) = B_.transpose() * sys_.jacobian(kappa_, to_vec(x)) * x.asDiagonal() / scale;
      Eigen::VectorXd dz = J.colPivHouseholderQr().solve(-F);
      if (!dz.allFinite()) return false;
      double big = dz.cwiseAbs().maxCoeff();
      if (big > 2) dz *= 2 / big;
      double lambda = 1;
      bool accepted = false;
      while (lambda > 1e-10) {
        Eigen::VectorXd zt = z + lambda * dz;
        double mt = residual(zt, scale).squaredNorm();
        if (std::isfinite(mt) && mt <= (1 - 1e-4 * lambda) * merit) {
          z = zt;
          accepted = true;
          break;
        }
        lambda /= 2;
      }
      if (!accepted || lambda * big < 1e-14) return converged(z);
    }
    return converged(z);
  }

  // Explicit adaptive integration of dx/dt = direction * f(x) until the
  // residual has dropped substantially. False when the trajectory leaves the
  // orthant.
  bool integrate_phase(Eigen::VectorXd& z, int& steps, double direction = 1.0) {
    using namespace boost::numeric::odeint;
    using State = std::vector<double>;
    Vec x = to_vec(z.array().exp());
    auto rhs = [&](const State& s, State& dsdt, double) {
      dsdt = sys_.f(kappa_, s);
      for (auto& v : dsdt) v *= direction;
    };
    auto stepper = make_controlled(1e-10, 1e-8, runge_kutta_dopri5<State>());
    double start_res = to_eigen(sys_.f(kappa_, x)).norm();
    double scale = sys_.flux_scale(kappa_, x);
    double xm = *std::max_element(x.begin(), x.end());
    double t = 0, dt = 1e-3 * xm / std::max(scale, 1e-300);
    int local = 0;
    while (steps < opt_.max_integration_steps && local < 20000) {
      State trial = x;
      double tt = t, dtt = dt;
      auto res = stepper.try_step(rhs, trial, tt, dtt);
      ++steps;
      ++local;
      if (res == fail) {
        dt = dtt;
        continue;
      }
      bool positive = std::all_of(trial.begin(), trial.end(), [](double v) { return v > 0 && std::isfinite(v); });
      if (!positive) {
        dt /= 4;
        if (dt < 1e-300) return false;
        continue;
      }
      x = trial;
      t = tt;
      dt = dtt;
      double r = to_eigen(sys_.f(kappa_, x)).norm();
      if (r < 1e-4 * start_res) break;
    }
    // Project back onto the class.
    Eigen::VectorXd xv = to_eigen(x);
    if (W_.cols() > 0) xv -= W_ * (W_.transpose() * (xv - x0v_));
    if ((xv.array() <= 0).any()) return false;
    z = xv.array().log();
    return true;
  }

  EquilibriumResult& finish(const Eigen::VectorXd& z, EquilibriumResult& r, int newton, int steps, bool ok,
                            const std::string& msg) {
    r.x = to_vec(z.array().exp());
    converged(z, &r.residual);
    r.newton_iterations = newton;
    r.integration_steps = steps;
    r.converged = ok;
    r.message = msg;
    return r;
  }

  const MassAction& sys_;
  Vec kappa_, x0_;
  EquilibriumOptions opt_;
  std::size_t n_;
  Eigen::MatrixXd W_, B_;
  Eigen::VectorXd x0v_;
  double cscale_ = 1;
};

}  // namespace detail

inline EquilibriumResult find_equilibrium(const MassAction& sys, const Vec& kappa, const Vec& x0,
                                          const EquilibriumOptions& opt = {}) {
  if (x0.size() != sys.species()) throw std::invalid_argument("state vector length mismatch");
  if (kappa.size() != sys.reactions()) throw std::invalid_argument("rate vector length mismatch");
  for (double v : x0)
    if (!(v > 0)) throw std::invalid_argument("initial state must be positive");
  for (double v : kappa)
    if (!(v > 0)) throw std::invalid_argument("rate constants must be positive");
  return detail::EquilibriumSolver(sys, kappa, x0, opt).solve();
}

inline EquilibriumResult find_equilibrium(const EGraph& g, const Vec& kappa, const Vec& x0,
                                          const EquilibriumOptions& opt = {}) {
  return find_equilibrium(MassAction(g), kappa, x0, opt);
}

class EquilibriumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::pair<Vec, Vec> psi_inverse(const MassAction& sys, const Vec& kappa, const Vec& x0,
                                       const EquilibriumOptions& opt = {}) {
  auto r = find_equilibrium(sys, kappa, x0, opt);
  if (!r.converged)
    throw EquilibriumError(r.message + " (last residual " + std::to_string(r.residual) + ")");
  return {r.x, sys.flux(kappa, r.x)};
}
inline std::pair<Vec, Vec> psi_inverse(const EGraph& g, const Vec& kappa, const Vec& x0,
                                       const EquilibriumOptions& opt = {}) {
  return psi_inverse(MassAction(g), kappa, x0, opt);
}

// Largest real part among eigenvalues of the Jacobian restricted to S.
inline double max_real_eigenvalue_on_s(const MassAction& sys, const Vec& kappa, const Vec& x) {
  const auto& B = sys.stoich_basis();
  if (B.cols() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd r = B.transpose() * sys.jacobian(kappa, x) * B;
  Eigen::EigenSolver<Eigen::MatrixXd> es(r, false);
  return es.eigenvalues().real().maxCoeff();
}

// ---------------------------------------------------------------------------
// Toric tests

// Spanning-tree weights of a rate-weighted graph on `nv` vertices: entry i is
// the determinant of the Laplacian with row and column i removed.
template <class T>
std::vector<T> laplacian_tree_weights(std::size_t nv, const std::vector<Edge>& edges, const std::vector<T>& rates) {
  std::vector<std::vector<T>> L(nv, std::vector<T>(nv, T(0)));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [s, t] = edges[e];
    L[s][s] += rates[e];
    L[t][s] -= rates[e];
  }
  std::vector<T> out(nv);
  for (std::size_t skip = 0; skip < nv; ++skip) {
    std::vector<std::vector<T>> m;
    for (std::size_t i = 0; i < nv; ++i) {
      if (i == skip) continue;
      std::vector<T> row;
      for (std::size_t j = 0; j < nv; ++j)
        if (j != skip) row.push_back(L[i][j]);
      m.push_back(row);
    }
    const std::size_t k = m.size();
    T det = T(1);
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < k; ++i) {
        using std::abs;
        if (abs(m[i][c]) > abs(m[p][c])) p = i;
      }
      if (m[p][c] == T(0)) {
        det = T(0);
        break;
      }
      if (p != c) {
        std::swap(m[p], m[c]);
        det = -det;
      }
      det *= m[c][c];
      for (std::size_t i = c + 1; i < k; ++i) {
        if (m[i][c] == T(0)) continue;
        T f = m[i][c] / m[c][c];
        for (std::size_t j = c; j < k; ++j) m[i][j] -= f * m[c][j];
      }
    }
    out[skip] = det;
  }
  return out;
}

// Vertex balancing is solvable iff every linkage class is strongly connected
// and log psi lies in the span of the vertex coordinates plus class offsets.
template <class T>
bool is_toric(const EGraph& g, const std::vector<T>& kappa, double tol = 1e-9) {
  if (kappa.size() != g.num_edges()) throw std::invalid_argument("rate vector length mismatch");
  auto c = connectivity(g);
  if (!c.weakly_reversible) return false;
  const std::size_t nv = g.num_vertices(), n = g.dim(), L = c.num_weak;
  Eigen::VectorXd logpsi(static_cast<Eigen::Index>(nv));
  for (const auto& grp : c.weak_groups()) {
    std::vector<std::size_t> local(nv, 0);
    for (std::size_t i = 0; i < grp.size(); ++i) local[grp[i]] = i;
    std::vector<Edge> edges;
    std::vector<T> rates;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      auto [s, t] = g.edges()[e];
      if (c.weak[s] != c.weak[grp[0]]) continue;
      edges.push_back({local[s], local[t]});
      rates.push_back(kappa[e]);
    }
    auto psi_vals = laplacian_tree_weights<T>(grp.size(), edges, rates);
    for (std::size_t i = 0; i < grp.size(); ++i) {
      double v;
      if constexpr (std::is_same_v<T, Rational>)
        v = to_double(psi_vals[i]);
      else
        v = psi_vals[i];
      if (!(v > 0)) throw std::logic_error("tree weight of a strongly connected class is not positive");
      logpsi[static_cast<Eigen::Index>(grp[i])] = std::log(v);
    }
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nv), static_cast<Eigen::Index>(n + L));
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t k = 0; k < n; ++k) A(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(k)) = to_double(g.vertices()[v][k]);
    A(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(n + c.weak[v])) = -1;
  }
  Eigen::VectorXd sol = A.completeOrthogonalDecomposition().solve(logpsi);
  double res = (A * sol - logpsi).norm();
  return res <= tol * (1 + logpsi.norm());
}

enum class Verdict { inside, outside, failed };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::inside: return "inside";
    case Verdict::outside: return "outside";
    default: return "failed";
  }
}

struct DisguisedToricResult {
  Verdict verdict = Verdict::failed;
  bool value = false;  // closure membership; false when failed
  MembershipStatus status;
  Vec x, beta, gamma;  // witness: equilibrium, its flux, realizing flux on G^max
  std::string diagnostic;
};

struct DisguisedToricOptions {
  double tol = 1e-9;
  EquilibriumOptions equilibrium;
  Vec x0;  // default all ones
};

inline DisguisedToricResult is_disguised_toric(const MassAction& sys, const DtMembershipOracle& oracle, const Vec& kappa,
                                               const DisguisedToricOptions& opt = {}) {
  DisguisedToricResult out;
  if (!oracle.realizable()) {
    out.verdict = Verdict::outside;
    out.status = {Membership::outside, -std::numeric_limits<double>::infinity()};
    out.diagnostic = "no weakly reversible realization: F^dt is empty";
    return out;
  }
  Vec x0 = opt.x0.empty() ? Vec(sys.species(), 1.0) : opt.x0;
  auto eq = find_equilibrium(sys, kappa, x0, opt.equilibrium);
  out.x = eq.x;
  if (!eq.converged) {
    out.diagnostic = eq.message + " (last residual " + std::to_string(eq.residual) + ")";
    return out;
  }
  out.beta = sys.flux(kappa, eq.x);
  auto m = oracle.classify(out.beta, opt.tol);
  out.status = m.status;
  out.gamma = m.gamma;
  out.value = m.status.kind != Membership::outside;
  out.verdict = out.value ? Verdict::inside : Verdict::outside;
  return out;
}

inline DisguisedToricResult is_disguised_toric(const EGraph& g, const Vec& kappa, const DisguisedToricOptions& opt = {}) {
  return is_disguised_toric(MassAction(g), DtMembershipOracle(g), kappa, opt);
}

}  // namespace dtflux
