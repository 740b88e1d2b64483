#pragma once

#include "dtflux/cone.hpp"
#include "dtflux/dynamics.hpp"
#include "dtflux/egraph.hpp"
#include "dtflux/fluxcone.hpp"
#include "dtflux/realization.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace dtflux {

// Sample number `index` of the uniform distribution on the open simplex in
// R^k. Depends only on (seed, index).
inline Vec simplex_sample(std::size_t k, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  Vec v(k);
  double s = 0;
  for (auto& x : v) {
    double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;  // in (0, 1)
    x = -std::log(u);
    s += x;
  }
  for (auto& x : v) x /= s;
  return v;
}

inline std::vector<Vec> sample_simplex(std::size_t k, std::size_t n, std::uint64_t seed) {
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(simplex_sample(k, seed, i));
  return out;
}

struct FractionEstimate {
  std::size_t n_samples = 0, n_inside = 0, n_boundary = 0, n_outside = 0, n_failed = 0;
  double fraction = 0;
  double stderr_ = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

struct FractionOptions {
  unsigned threads = 1;
  bool reduce = false;
  DisguisedToricOptions decision;
};

// Per-sample outcome codes: 0 strict interior, 1 boundary, 2 outside, 3 failed.
inline std::vector<std::uint8_t> classify_samples(const EGraph& g, std::size_t n, std::uint64_t seed,
                                                  const FractionOptions& opt = {}) {
  MassAction sys(g);
  DtMembershipOracle oracle(g, opt.reduce);
  std::vector<std::uint8_t> code(n, 3);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      Vec kappa = simplex_sample(g.num_edges(), seed, i);
      auto r = is_disguised_toric(sys, oracle, kappa, opt.decision);
      if (r.verdict == Verdict::failed)
        code[i] = 3;
      else if (r.verdict == Verdict::outside)
        code[i] = 2;
      else
        code[i] = r.status.kind == Membership::strict_interior ? 0 : 1;
    }
  };
  unsigned t = std::max(1u, opt.threads);
  if (t == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w) pool.emplace_back(work, w, t);
    for (auto& th : pool) th.join();
  }
  return code;
}

inline FractionEstimate fraction_disguised_toric(const EGraph& g, std::size_t n, std::uint64_t seed,
                                                 const FractionOptions& opt = {}) {
  auto code = classify_samples(g, n, seed, opt);
  FractionEstimate f;
  f.n_samples = n;
  f.seed = seed;
  for (auto c : code) {
    if (c == 0) ++f.n_inside;
    if (c == 1) ++f.n_boundary;
    if (c == 2) ++f.n_outside;
    if (c == 3) ++f.n_failed;
  }
  std::size_t denom = n - f.n_failed;
  if (denom > 0) {
    f.fraction = static_cast<double>(f.n_inside + f.n_boundary) / static_cast<double>(denom);
    f.stderr_ = std::sqrt(f.fraction * (1 - f.fraction) / static_cast<double>(denom));
  }
  if (n > 0 && f.n_failed * 1000 > n)
    f.warnings.push_back("equilibrium solver failed on " + std::to_string(f.n_failed) + " of " + std::to_string(n) +
                         " samples (more than 0.1%); failed samples are excluded from the fraction");
  return f;
}

inline nlohmann::json to_json(const FractionEstimate& f) {
  return {{"n_samples", f.n_samples}, {"n_inside", f.n_inside}, {"n_boundary", f.n_boundary},
          {"n_outside", f.n_outside}, {"n_failed", f.n_failed},   {"fraction", f.fraction},
          {"stderr", f.stderr_},      {"seed", f.seed},           {"warnings", f.warnings}};
}

// ---------------------------------------------------------------------------
// Reports

struct ConeInfo {
  HCone cone;
  std::size_t closure_dim = 0;
  bool positive = false;  // meets the open orthant
};

inline ConeInfo describe(HCone c) {
  ConeInfo i;
  i.cone = normalize(c);
  i.closure_dim = cone_dim(i.cone);
  i.positive = has_positive_point(i.cone);
  return i;
}

struct AnalyzeOptions {
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  bool reduce = false;
  FractionOptions fraction;
};

struct NetworkReport {
  NetworkSummary summary;
  GmaxResult gmax;
  ConeInfo f_eq, f_t, f_dt;
  std::optional<long> codim_kt;  // deficiency, for weakly reversible networks
  LocusDims dims;
  std::optional<FractionEstimate> fraction;
};

inline NetworkReport analyze(const EGraph& g, const AnalyzeOptions& opt = {}) {
  NetworkReport r;
  r.summary = summarize(g);
  r.gmax = compute_gmax(g);
  r.f_eq = describe(eq_flux_cone(g));
  r.f_t = describe(toric_flux_cone(g));
  if (r.gmax.realizable) {
    EGraph h = opt.reduce ? collinear_reduce(r.gmax.graph).graph : r.gmax.graph;
    r.f_dt = describe(dt_flux_cone_wrt(g, h));
  } else {
    r.f_dt = describe(zero_cone(g.num_edges(), edge_labels(g)));
  }
  if (r.summary.weakly_reversible) r.codim_kt = r.summary.deficiency;
  r.dims = locus_dims(g, r.f_dt.cone);
  if (opt.samples > 0) {
    auto fo = opt.fraction;
    fo.reduce = opt.reduce;
    r.fraction = fraction_disguised_toric(g, opt.samples, opt.seed, fo);
  }
  return r;
}

inline nlohmann::json edge_table_json(const EGraph& g) {
  nlohmann::json t = nlohmann::json::array();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto [s, d] = g.edges()[e];
    t.push_back({{"index", e + 1},
                 {"source", render_complex(g, g.vertices()[s])},
                 {"target", render_complex(g, g.vertices()[d])}});
  }
  return t;
}

inline nlohmann::json to_json(const GmaxResult& gm) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : gm.tests) {
    tests.push_back({{"source", render_complex(gm.graph, gm.graph.vertices()[t.edge.first])},
                     {"target", render_complex(gm.graph, gm.graph.vertices()[t.edge.second])},
                     {"in_gmax", t.feasible},
                     {"status", t.status}});
  }
  return {{"realizable", gm.realizable}, {"graph", to_json(gm.graph)}, {"edges", edge_table_json(gm.graph)}, {"tests", tests}};
}

inline nlohmann::json to_json(const ConeInfo& c) {
  return {{"cone", to_json(c.cone)}, {"closure_dim", c.closure_dim}, {"positive_part_nonempty", c.positive}};
}

inline nlohmann::json to_json(const LocusDims& d) {
  nlohmann::json j;
  j["dim_fdt"] = d.dim_fdt ? nlohmann::json(*d.dim_fdt) : nlohmann::json(nullptr);
  j["dim_s"] = d.dim_s;
  j["dim_kdt"] = d.dim_kdt ? nlohmann::json(*d.dim_kdt) : nlohmann::json(nullptr);
  j["formula_guaranteed"] = d.formula_guaranteed;
  return j;
}

inline nlohmann::json to_json(const NetworkReport& r, const EGraph& g) {
  nlohmann::json j;
  j["summary"] = to_json(r.summary);
  j["edges"] = edge_table_json(g);
  j["gmax"] = to_json(r.gmax);
  j["cones"] = {{"eq", to_json(r.f_eq)}, {"toric", to_json(r.f_t)}, {"disguised_toric", to_json(r.f_dt)}};
  j["codim_kt"] = r.codim_kt ? nlohmann::json(*r.codim_kt) : nlohmann::json(nullptr);
  j["dims"] = to_json(r.dims);
  j["fraction"] = r.fraction ? to_json(*r.fraction) : nlohmann::json(nullptr);
  return j;
}

inline std::string edge_table_text(const EGraph& g) {
  std::ostringstream os;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto [s, d] = g.edges()[e];
    os << "  b" << e + 1 << ": " << render_complex(g, g.vertices()[s]) << " -> " << render_complex(g, g.vertices()[d])
       << "\n";
  }
  return os.str();
}

inline std::string to_text(const NetworkSummary& s) {
  std::ostringstream os;
  os << "species:            " << s.species << "\n"
     << "vertices:           " << s.vertices << "\n"
     << "edges:              " << s.edges << "\n"
     << "source vertices:    " << s.sources << "\n"
     << "linkage classes:    " << s.linkage_classes << "\n"
     << "strong components:  " << s.strong_components << "\n"
     << "dim S:              " << s.stoich_dim << "\n"
     << "deficiency:         " << s.deficiency << "\n"
     << "weakly reversible:  " << (s.weakly_reversible ? "yes" : "no") << "\n";
  return os.str();
}

inline std::string to_text(const FractionEstimate& f) {
  std::ostringstream os;
  os << std::setprecision(6) << "fraction " << f.fraction << " +- " << f.stderr_ << " (n=" << f.n_samples
     << ", inside=" << f.n_inside << ", boundary=" << f.n_boundary << ", outside=" << f.n_outside
     << ", failed=" << f.n_failed << ", seed=" << f.seed << ")\n";
  for (const auto& w : f.warnings) os << "WARNING: " << w << "\n";
  return os.str();
}

inline std::string to_text(const NetworkReport& r, const EGraph& g) {
  std::ostringstream os;
  os << to_text(r.summary) << "edges:\n" << edge_table_text(g);
  os << "G^max: " << r.gmax.graph.num_edges() << " edges" << (r.gmax.realizable ? "" : " (no weakly reversible realization)")
     << "\n"
     << edge_table_text(r.gmax.graph);
  auto cone_line = [&](const char* name, const ConeInfo& c) {
    os << name << ": closure dim " << c.closure_dim << (c.positive ? "" : ", positive part EMPTY") << "\n"
       << to_text(c.cone);
  };
  cone_line("F^eq", r.f_eq);
  cone_line("F^t", r.f_t);
  cone_line("F^dt", r.f_dt);
  if (r.codim_kt) os << "codim K^t (deficiency): " << *r.codim_kt << "\n";
  os << "dim K^dt: " << (r.dims.dim_kdt ? std::to_string(*r.dims.dim_kdt) : std::string("empty"))
     << (r.dims.formula_guaranteed ? "" : " (formula not guaranteed)") << "\n";
  if (r.fraction) os << to_text(*r.fraction);
  return os.str();
}

}  // namespace dtflux
