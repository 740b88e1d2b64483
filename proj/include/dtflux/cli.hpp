#pragma once

#include "dtflux/locus.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace dtflux::cli {

struct CliConfig {
  std::string subcommand;
  std::string input;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  double tol = 1e-9;
  unsigned threads = 1;
  bool reduce = false;
  bool no_fraction = false;
  std::string wrt;
  std::string kappa;
  std::string x0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Vec parse_csv(const std::string& s, std::size_t expected, const char* what) {
  Vec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = dtflux::detail::trim(item);
    try {
      out.push_back(to_double(parse_rational(item)));
    } catch (const std::invalid_argument&) {
      throw UsageError(std::string("invalid number '") + item + "' in " + what);
    }
  }
  if (out.size() != expected)
    throw UsageError(std::string(what) + " needs " + std::to_string(expected) + " values, got " + std::to_string(out.size()));
  for (double v : out)
    if (!(v > 0)) throw UsageError(std::string(what) + " entries must be positive");
  return out;
}

namespace detail {

inline nlohmann::json vec_json(const Vec& v) { return nlohmann::json(v); }

inline std::string vec_text(const Vec& v) {
  std::ostringstream os;
  os << std::setprecision(12) << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

inline void emit(std::ostream& out, const CliConfig& c, const nlohmann::json& j, const std::string& text) {
  if (c.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

inline int execute(const CliConfig& c, std::ostream& out, std::ostream& err) {
  EGraph g;
  try {
    g = load_network(c.input);
  } catch (const NetworkError& e) {
    err << "error: " << c.input << ": " << e.what() << "\n";
    return 1;
  }
  if (c.subcommand == "summary") {
    auto s = summarize(g);
    nlohmann::json j = {{"summary", to_json(s)}, {"edges", edge_table_json(g)}};
    emit(out, c, j, to_text(s) + "edges:\n" + edge_table_text(g));
    return 0;
  }
  if (c.subcommand == "gmax") {
    auto gm = compute_gmax(g);
    nlohmann::json j = to_json(gm);
    std::string text = "G^max: " + std::to_string(gm.graph.num_edges()) + " edges" +
                       (gm.realizable ? "" : " (no weakly reversible realization)") + "\n" +
                       edge_table_text(gm.graph);
    if (c.reduce) {
      auto red = collinear_reduce(gm.graph);
      j["reduced"] = {{"graph", to_json(red.graph)}, {"edges", edge_table_json(red.graph)},
                      {"substitutions", red.table.size()}};
      text += "collinear reduction: " + std::to_string(red.graph.num_edges()) + " edges\n" + edge_table_text(red.graph);
    }
    emit(out, c, j, text);
    return 0;
  }
  if (c.subcommand == "fluxcone") {
    if (!c.wrt.empty()) {
      EGraph h;
      try {
        h = load_network(c.wrt);
      } catch (const NetworkError& e) {
        err << "error: " << c.wrt << ": " << e.what() << "\n";
        return 1;
      }
      auto info = describe(dt_flux_cone_wrt(g, h));
      nlohmann::json j = {{"edges", edge_table_json(g)}, {"disguised_toric_wrt", to_json(info)},
                          {"wrt_has_wr_realization", has_wr_realization(g, h)}};
      std::string text = "edges:\n" + edge_table_text(g) + "F^dt(G,H): closure dim " +
                         std::to_string(info.closure_dim) + (info.positive ? "" : ", positive part EMPTY") + "\n" +
                         to_text(info.cone);
      emit(out, c, j, text);
      return 0;
    }
    auto eq = describe(eq_flux_cone(g));
    auto t = describe(toric_flux_cone(g));
    DtConeOptions o;
    o.reduce = c.reduce;
    auto dt = describe(dt_flux_cone(g, o));
    nlohmann::json j = {{"edges", edge_table_json(g)},
                        {"eq", to_json(eq)},
                        {"toric", to_json(t)},
                        {"disguised_toric", to_json(dt)}};
    std::ostringstream os;
    os << "edges:\n" << edge_table_text(g);
    for (auto [name, info] : {std::pair<const char*, const ConeInfo*>{"F^eq", &eq}, {"F^t", &t}, {"F^dt", &dt}})
      os << name << ": closure dim " << info->closure_dim << (info->positive ? "" : ", positive part EMPTY") << "\n"
         << to_text(info->cone);
    emit(out, c, j, os.str());
    return 0;
  }
  if (c.subcommand == "membership") {
    Vec kappa = parse_csv(c.kappa, g.num_edges(), "--kappa");
    DisguisedToricOptions o;
    o.tol = c.tol;
    if (!c.x0.empty()) o.x0 = parse_csv(c.x0, g.dim(), "--x0");
    MassAction sys(g);
    DtMembershipOracle oracle(g, c.reduce);
    bool toric = is_toric(g, kappa);
    auto r = is_disguised_toric(sys, oracle, kappa, o);
    nlohmann::json j = {{"toric", toric},
                        {"disguised_toric", r.verdict == Verdict::failed ? nlohmann::json(nullptr) : nlohmann::json(r.value)},
                        {"verdict", to_string(r.verdict)},
                        {"membership", to_string(r.status.kind)},
                        {"slack", std::isfinite(r.status.slack) ? nlohmann::json(r.status.slack) : nlohmann::json(nullptr)},
                        {"diagnostic", r.diagnostic},
                        {"witness", {{"x", vec_json(r.x)}, {"beta", vec_json(r.beta)}, {"gamma", vec_json(r.gamma)}}},
                        {"edges", edge_table_json(g)},
                        {"realization_edges", edge_table_json(oracle.realization_graph())}};
    std::ostringstream os;
    os << "edges:\n" << edge_table_text(g) << "toric: " << (toric ? "true" : "false") << "\n"
       << "disguised_toric: " << (r.verdict == Verdict::failed ? "undecided" : (r.value ? "true" : "false")) << " ("
       << to_string(r.status.kind) << ")\n";
    if (!r.diagnostic.empty()) os << "diagnostic: " << r.diagnostic << "\n";
    if (!r.x.empty()) os << "x* = " << vec_text(r.x) << "\n";
    if (!r.beta.empty()) os << "beta = " << vec_text(r.beta) << "\n";
    if (!r.gamma.empty()) os << "gamma (on G^max) = " << vec_text(r.gamma) << "\n";
    emit(out, c, j, os.str());
    return r.verdict == Verdict::failed ? 2 : 0;
  }
  if (c.subcommand == "equilibrium") {
    Vec kappa = parse_csv(c.kappa, g.num_edges(), "--kappa");
    Vec x0 = c.x0.empty() ? Vec(g.dim(), 1.0) : parse_csv(c.x0, g.dim(), "--x0");
    MassAction sys(g);
    auto r = find_equilibrium(sys, kappa, x0);
    nlohmann::json j = {{"converged", r.converged},
                        {"x", vec_json(r.x)},
                        {"flux", r.converged ? vec_json(sys.flux(kappa, r.x)) : nlohmann::json(nullptr)},
                        {"residual", std::isfinite(r.residual) ? nlohmann::json(r.residual) : nlohmann::json(nullptr)},
                        {"newton_iterations", r.newton_iterations},
                        {"integration_steps", r.integration_steps},
                        {"message", r.message}};
    std::ostringstream os;
    if (r.converged)
      os << "x* = " << vec_text(r.x) << "\nflux = " << vec_text(sys.flux(kappa, r.x)) << "\nresidual = " << r.residual
         << "\n";
    else
      os << "no equilibrium: " << r.message << " (last residual " << r.residual << ")\n";
    emit(out, c, j, os.str());
    if (!r.converged) err << "error: " << r.message << "\n";
    return r.converged ? 0 : 2;
  }
  if (c.subcommand == "fraction") {
    if (c.samples == 0) throw UsageError("--samples must be positive");
    FractionOptions o;
    o.threads = c.threads;
    o.reduce = c.reduce;
    o.decision.tol = c.tol;
    auto f = fraction_disguised_toric(g, c.samples, c.seed, o);
    if (c.format == "json")  // the text report carries its own warnings
      for (const auto& w : f.warnings) err << "WARNING: " << w << "\n";
    emit(out, c, to_json(f), to_text(f));
    return 0;
  }
  if (c.subcommand == "analyze") {
    AnalyzeOptions o;
    o.samples = c.no_fraction ? 0 : c.samples;
    o.seed = c.seed;
    o.reduce = c.reduce;
    o.fraction.threads = c.threads;
    o.fraction.decision.tol = c.tol;
    auto r = analyze(g, o);
    if (r.fraction && c.format == "json")
      for (const auto& w : r.fraction->warnings) err << "WARNING: " << w << "\n";
    emit(out, c, to_json(r, g), to_text(r, g));
    return 0;
  }
  throw UsageError("unknown subcommand");
}

}  // namespace detail

// Exit codes: 0 success, 1 usage or input error, 2 computation failure.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Disguised toric flux cones and loci of reaction networks"};
  app.require_subcommand(1);
  CliConfig c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("network", c.input, "Network file in the reaction DSL")->required();
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto* summary = app.add_subcommand("summary", "Species, vertices, components, deficiency");
  add_common(summary);
  auto* gm = app.add_subcommand("gmax", "Maximal weakly reversible realization graph");
  add_common(gm);
  gm->add_flag("--reduce", c.reduce, "Also apply the collinear edge reduction");
  auto* fc = app.add_subcommand("fluxcone", "Equilibrium, toric and disguised toric flux cones");
  add_common(fc);
  fc->add_option("--wrt", c.wrt, "Compute F^dt(G,H) for the realization graph H in this file");
  fc->add_flag("--reduce", c.reduce, "Project through the collinear reduction of G^max");
  auto* mem = app.add_subcommand("membership", "Toric and disguised toric tests for a rate vector");
  add_common(mem);
  mem->add_option("--kappa", c.kappa, "Rate constants in edge order, comma separated")->required();
  mem->add_option("--x0", c.x0, "Initial state selecting the stoichiometric class");
  mem->add_option("--tol", c.tol, "Membership tolerance")->check(CLI::PositiveNumber);
  mem->add_flag("--reduce", c.reduce, "Use the collinear reduction of G^max");
  auto* eq = app.add_subcommand("equilibrium", "Positive equilibrium in the class of x0");
  add_common(eq);
  eq->add_option("--kappa", c.kappa, "Rate constants in edge order, comma separated")->required();
  eq->add_option("--x0", c.x0, "Initial state (default all ones)");
  auto* fr = app.add_subcommand("fraction", "Monte Carlo fraction of the rate simplex that is disguised toric");
  add_common(fr);
  fr->add_option("--samples", c.samples, "Number of samples")->required();
  fr->add_option("--seed", c.seed, "Random seed (default 1)");
  fr->add_option("--threads", c.threads, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  fr->add_option("--tol", c.tol, "Membership tolerance")->check(CLI::PositiveNumber);
  fr->add_flag("--reduce", c.reduce, "Use the collinear reduction of G^max");
  auto* an = app.add_subcommand("analyze", "Full report");
  add_common(an);
  an->add_option("--samples", c.samples, "Monte Carlo samples (0 skips the fraction)");
  an->add_option("--seed", c.seed, "Random seed (default 1)");
  an->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  an->add_option("--tol", c.tol, "Membership tolerance")->check(CLI::PositiveNumber);
  an->add_flag("--reduce", c.reduce, "Use the collinear reduction of G^max");
  an->add_flag("--no-fraction", c.no_fraction, "Skip the Monte Carlo estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  try {
    return detail::execute(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dtflux::cli
