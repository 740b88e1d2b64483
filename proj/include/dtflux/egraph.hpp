#pragma once

#include "dtflux/exactlin.hpp"
#include "dtflux/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtflux {

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public NetworkError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : NetworkError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

using Edge = std::pair<std::size_t, std::size_t>;

// Euclidean embedded graph: distinct vertices in R^n, directed edges without
// self-loops or duplicates.
class EGraph {
 public:
  EGraph() = default;
  EGraph(std::size_t n, std::vector<RatVector> vertices, std::vector<Edge> edges,
         std::vector<std::string> species = {})
      : n_(n), vertices_(std::move(vertices)), edges_(std::move(edges)), species_(std::move(species)) {
    if (species_.empty())
      for (std::size_t i = 0; i < n_; ++i) species_.push_back("X" + std::to_string(i + 1));
    if (species_.size() != n_) throw NetworkError("species count does not match dimension");
    std::set<RatVector> seen;
    for (const auto& v : vertices_) {
      if (v.size() != n_) throw NetworkError("vertex dimension mismatch");
      if (!seen.insert(v).second) throw NetworkError("duplicate vertex");
    }
    std::set<Edge> es;
    for (const auto& [s, t] : edges_) {
      if (s >= vertices_.size() || t >= vertices_.size()) throw NetworkError("edge endpoint out of range");
      if (s == t) throw NetworkError("self-loop");
      if (!es.insert({s, t}).second) throw NetworkError("duplicate edge");
    }
  }

  std::size_t dim() const { return n_; }
  const std::vector<RatVector>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& species() const { return species_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  RatVector reaction_vector(std::size_t e) const {
    const auto& [s, t] = edges_[e];
    RatVector d(n_);
    for (std::size_t k = 0; k < n_; ++k) d[k] = vertices_[t][k] - vertices_[s][k];
    return d;
  }

  std::optional<std::size_t> find_vertex(const RatVector& y) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == y) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> find_edge(std::size_t s, std::size_t t) const {
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (edges_[e].first == s && edges_[e].second == t) return e;
    return std::nullopt;
  }

  // Vertices that are the source of at least one edge, in vertex order.
  std::vector<std::size_t> source_vertices() const {
    std::vector<bool> is_src(vertices_.size(), false);
    for (const auto& e : edges_) is_src[e.first] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (is_src[i]) out.push_back(i);
    return out;
  }

  bool operator==(const EGraph& o) const {
    return n_ == o.n_ && vertices_ == o.vertices_ && edges_ == o.edges_ && species_ == o.species_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<RatVector> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::string> species_;
};

// ---------------------------------------------------------------------------
// Reaction DSL

namespace detail {

class LineScanner {
 public:
  LineScanner(const std::string& s, std::size_t line) : s_(s), line_(line) {}
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, pos_ + 1, msg); }

  bool consume(const std::string& tok) {
    skip_ws();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    std::size_t b = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected species name");
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  // Optional nonnegative rational coefficient "p" or "p/q".
  std::optional<Rational> number() {
    skip_ws();
    std::size_t b = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == b) return std::nullopt;
    if (peek() == '/') {
      ++pos_;
      std::size_t d = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == d) fail("expected denominator");
    }
    std::string lit = s_.substr(b, pos_ - b);
    Rational r;
    try {
      r = parse_rational(lit);
    } catch (const std::invalid_argument&) {
      pos_ = b;
      fail("invalid coefficient '" + lit + "'");
    }
    return r;
  }

 private:
  const std::string& s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

using Complex = std::map<std::string, Rational>;

inline Complex parse_complex(LineScanner& sc, std::vector<std::string>& order) {
  Complex cx;
  auto coef = sc.number();
  sc.skip_ws();
  bool starts_name = std::isalpha(static_cast<unsigned char>(sc.peek())) || sc.peek() == '_' || sc.peek() == '*';
  if (coef && *coef == 0 && !starts_name) return cx;  // the empty complex "0"
  while (true) {
    Rational c = coef.value_or(Rational(1));
    if (c == 0) sc.fail("zero stoichiometric coefficient");
    if (coef) sc.consume("*");
    std::string name = sc.identifier();
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    cx[name] += c;
    if (!sc.consume("+")) break;
    coef = sc.number();
  }
  return cx;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline EGraph parse_network(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::vector<std::string> declared, seen_species;
  bool have_header = false, any_reaction = false;
  struct Rxn {
    detail::Complex lhs, rhs;
    bool reversible;
    std::size_t line, column;
  };
  std::vector<Rxn> rxns;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (detail::trim(line).empty()) continue;
    detail::LineScanner sc(line, lineno);
    if (sc.consume("species:")) {
      if (have_header || any_reaction) sc.fail("species header must appear once, before reactions");
      have_header = true;
      while (!sc.done()) {
        sc.consume(",");
        if (sc.done()) break;
        auto name = sc.identifier();
        if (std::find(declared.begin(), declared.end(), name) != declared.end()) sc.fail("species '" + name + "' declared twice");
        declared.push_back(name);
      }
      if (declared.empty()) sc.fail("empty species header");
      continue;
    }
    any_reaction = true;
    std::vector<std::string> names;
    sc.skip_ws();
    std::size_t col = sc.pos() + 1;
    auto lhs = detail::parse_complex(sc, names);
    bool rev;
    if (sc.consume("<->"))
      rev = true;
    else if (sc.consume("->"))
      rev = false;
    else
      sc.fail("expected '->' or '<->'");
    auto rhs = detail::parse_complex(sc, names);
    if (!sc.done()) sc.fail("unexpected trailing input");
    for (const auto& nm : names) {
      if (have_header && std::find(declared.begin(), declared.end(), nm) == declared.end())
        throw ParseError(lineno, col, "species '" + nm + "' not declared in header");
      if (std::find(seen_species.begin(), seen_species.end(), nm) == seen_species.end()) seen_species.push_back(nm);
    }
    rxns.push_back({lhs, rhs, rev, lineno, col});
  }
  if (rxns.empty()) throw NetworkError("network has no reactions");
  std::vector<std::string> species = have_header ? declared : seen_species;
  auto coords = [&](const detail::Complex& cx) {
    RatVector v(species.size());
    for (const auto& [nm, c] : cx) {
      auto it = std::find(species.begin(), species.end(), nm);
      v[static_cast<std::size_t>(it - species.begin())] = c;
    }
    return v;
  };
  std::vector<RatVector> vertices;
  std::vector<Edge> edges;
  std::set<Edge> edge_set;
  auto vid = [&](const RatVector& y) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == y) return i;
    vertices.push_back(y);
    return vertices.size() - 1;
  };
  for (const auto& r : rxns) {
    std::size_t s = vid(coords(r.lhs)), t = vid(coords(r.rhs));
    if (s == t) throw ParseError(r.line, r.column, "reaction is a self-loop");
    std::vector<Edge> add{{s, t}};
    if (r.reversible) add.push_back({t, s});
    for (const auto& e : add) {
      if (!edge_set.insert(e).second) throw ParseError(r.line, r.column, "duplicate reaction");
      edges.push_back(e);
    }
  }
  const std::size_t n = species.size();
  return EGraph(n, std::move(vertices), std::move(edges), std::move(species));
}

inline EGraph load_network(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw NetworkError("cannot open network file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_network(ss.str());
}

inline std::string render_complex(const EGraph& g, const RatVector& y) {
  std::string s;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y[k] == 0) continue;
    if (!s.empty()) s += " + ";
    if (y[k] != 1) s += y[k].str() + " ";
    s += g.species()[k];
  }
  return s.empty() ? "0" : s;
}

// Canonical DSL text; parse_network(render(g)) == g when vertices are listed in
// first-appearance order.
inline std::string render(const EGraph& g) {
  std::ostringstream os;
  os << "species:";
  for (const auto& s : g.species()) os << " " << s;
  os << "\n";
  for (const auto& [s, t] : g.edges())
    os << render_complex(g, g.vertices()[s]) << " -> " << render_complex(g, g.vertices()[t]) << "\n";
  return os.str();
}

inline nlohmann::json to_json(const EGraph& g) {
  nlohmann::json verts = nlohmann::json::array(), edges = nlohmann::json::array();
  for (const auto& v : g.vertices()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    verts.push_back(row);
  }
  for (const auto& [s, t] : g.edges()) edges.push_back({s, t});
  return {{"n", g.dim()}, {"species", g.species()}, {"vertices", verts}, {"edges", edges}};
}

inline EGraph graph_from_json(const nlohmann::json& j) {
  std::size_t n = j.at("n").get<std::size_t>();
  std::vector<RatVector> verts;
  for (const auto& row : j.at("vertices")) {
    RatVector v;
    for (const auto& x : row) v.push_back(parse_rational(x.get<std::string>()));
    verts.push_back(std::move(v));
  }
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
  std::vector<std::string> species;
  if (j.contains("species")) species = j.at("species").get<std::vector<std::string>>();
  return EGraph(n, std::move(verts), std::move(edges), std::move(species));
}

// ---------------------------------------------------------------------------
// Structure

struct SubspaceBasis {
  std::vector<RatVector> basis;
  std::size_t dim = 0;
};

inline SubspaceBasis stoichiometric_subspace(const EGraph& g) {
  RatMatrix m(0, g.dim());
  for (std::size_t e = 0; e < g.num_edges(); ++e) m.append_row(g.reaction_vector(e));
  SubspaceBasis s;
  if (g.num_edges() > 0) s.basis = row_space_basis(m);
  s.dim = s.basis.size();
  return s;
}

struct Connectivity {
  std::vector<std::size_t> weak;    // component id per vertex
  std::vector<std::size_t> strong;  // strongly connected component id per vertex
  std::size_t num_weak = 0;
  std::size_t num_strong = 0;
  bool weakly_reversible = false;

  std::vector<std::vector<std::size_t>> weak_groups() const { return groups(weak, num_weak); }
  std::vector<std::vector<std::size_t>> strong_groups() const { return groups(strong, num_strong); }

 private:
  static std::vector<std::vector<std::size_t>> groups(const std::vector<std::size_t>& id, std::size_t k) {
    std::vector<std::vector<std::size_t>> out(k);
    for (std::size_t v = 0; v < id.size(); ++v) out[id[v]].push_back(v);
    return out;
  }
};

inline Connectivity connectivity(const EGraph& g) {
  const std::size_t nv = g.num_vertices();
  Connectivity c;
  // Weak components: union-find, ids in order of first vertex.
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [s, t] : g.edges()) parent[find(s)] = find(t);
  c.weak.assign(nv, 0);
  std::map<std::size_t, std::size_t> wid;
  for (std::size_t v = 0; v < nv; ++v) {
    auto r = find(v);
    auto it = wid.find(r);
    if (it == wid.end()) it = wid.emplace(r, wid.size()).first;
    c.weak[v] = it->second;
  }
  c.num_weak = wid.size();

  // Tarjan.
  std::vector<std::vector<std::size_t>> adj(nv);
  for (const auto& [s, t] : g.edges()) adj[s].push_back(t);
  const std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(nv, unset), low(nv, 0), comp(nv, unset), stack;
  std::vector<bool> on_stack(nv, false);
  std::size_t counter = 0, ncomp = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : adj[v]) {
      if (index[w] == unset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        auto w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
        if (w == v) break;
      }
      ++ncomp;
    }
  };
  for (std::size_t v = 0; v < nv; ++v)
    if (index[v] == unset) visit(v);
  // Renumber by first vertex for stable output.
  std::map<std::size_t, std::size_t> sid;
  c.strong.assign(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    auto it = sid.find(comp[v]);
    if (it == sid.end()) it = sid.emplace(comp[v], sid.size()).first;
    c.strong[v] = it->second;
  }
  c.num_strong = ncomp;
  c.weakly_reversible = true;
  for (const auto& [s, t] : g.edges())
    if (c.strong[s] != c.strong[t]) c.weakly_reversible = false;
  return c;
}

inline bool is_weakly_reversible(const EGraph& g) { return connectivity(g).weakly_reversible; }

inline long deficiency(const EGraph& g) {
  auto c = connectivity(g);
  return static_cast<long>(g.num_vertices()) - static_cast<long>(c.num_weak) -
         static_cast<long>(stoichiometric_subspace(g).dim);
}

// Complete directed graph on the source vertices of g.
inline EGraph source_complete_graph(const EGraph& g) {
  std::vector<RatVector> verts;
  for (auto i : g.source_vertices()) verts.push_back(g.vertices()[i]);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = 0; j < verts.size(); ++j)
      if (i != j) edges.push_back({i, j});
  return EGraph(g.dim(), std::move(verts), std::move(edges), g.species());
}

// Every weakly connected component strongly connected: sufficient for the
// kinetic subspace to equal the stoichiometric subspace for every kappa.
inline bool kinetic_condition_check(const EGraph& g) { return is_weakly_reversible(g); }

struct NetworkSummary {
  std::size_t species = 0, vertices = 0, edges = 0, sources = 0;
  std::size_t linkage_classes = 0, strong_components = 0, stoich_dim = 0;
  long deficiency = 0;
  bool weakly_reversible = false;
  bool kinetic_condition = false;
};

inline NetworkSummary summarize(const EGraph& g) {
  auto c = connectivity(g);
  NetworkSummary s;
  s.species = g.dim();
  s.vertices = g.num_vertices();
  s.edges = g.num_edges();
  s.sources = g.source_vertices().size();
  s.linkage_classes = c.num_weak;
  s.strong_components = c.num_strong;
  s.stoich_dim = stoichiometric_subspace(g).dim;
  s.deficiency = static_cast<long>(s.vertices) - static_cast<long>(s.linkage_classes) - static_cast<long>(s.stoich_dim);
  s.weakly_reversible = c.weakly_reversible;
  s.kinetic_condition = c.weakly_reversible;
  return s;
}

inline nlohmann::json to_json(const NetworkSummary& s) {
  return {{"species", s.species},
          {"vertices", s.vertices},
          {"edges", s.edges},
          {"sources", s.sources},
          {"linkage_classes", s.linkage_classes},
          {"strong_components", s.strong_components},
          {"stoich_dim", s.stoich_dim},
          {"deficiency", s.deficiency},
          {"weakly_reversible", s.weakly_reversible},
          {"kinetic_condition", s.kinetic_condition}};
}

}  // namespace dtflux
