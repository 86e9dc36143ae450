#pragma once

// Model files (JSON) and Graphviz export.
//
// {
//   "worlds": ["u0", "u1"], "agents": ["a", "b"],
//   "names": {"n": "a"},
//   "k": {"a": [["u0", "u1"]]},          generators, closed to equivalences
//   "f": {"u0": [["a", "b"]]},           generators, closed symmetrically
//   "d": {"u0": [["a", "b"]]},           optional, taken as given
//   "val": {"p": [["u0", "a"]]},
//   "actual": ["u0", "a"]                optional
// }

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "efl/error.hpp"
#include "efl/model.hpp"

namespace efl {

struct ModelFile {
  Model model;
  std::optional<Point> actual;
};

namespace detail {

using nlohmann::json;

inline const json& member(const json& j, const char* key) {
  if (!j.contains(key)) throw ModelError(std::string("model file: missing key '") + key + "'");
  return j.at(key);
}

inline std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ModelError("model file: '" + what + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ModelError("model file: '" + what + "' must be a list of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline std::pair<std::string, std::string> token_pair(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw ModelError("model file: entries of '" + what + "' must be pairs of strings");
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

inline std::size_t lookup(const std::optional<std::size_t>& i, const std::string& kind, const std::string& name) {
  if (!i) throw ModelError("model file: unknown " + kind + " '" + name + "'");
  return *i;
}

/// Per-world agent-pair lists ("f" and "d").
inline Relation world_pairs(const Model& m, const json& j, const std::string& what) {
  if (!j.is_object()) throw ModelError("model file: '" + what + "' must map worlds to pair lists");
  Relation r(m.num_points());
  for (const auto& [w, pairs] : j.items()) {
    const std::size_t wi = lookup(m.find_world(w), "world", w);
    if (!pairs.is_array()) throw ModelError("model file: '" + what + "." + w + "' must be a list");
    for (const auto& p : pairs) {
      const auto [a, b] = token_pair(p, what);
      r.insert(m.point(wi, lookup(m.find_agent(a), "agent", a)), m.point(wi, lookup(m.find_agent(b), "agent", b)));
    }
  }
  return r;
}

inline json world_pairs_json(const Model& m, const Relation& r, bool unordered) {
  json out = json::object();
  for (std::size_t w = 0; w < m.num_worlds(); ++w) {
    json pairs = json::array();
    for (std::size_t a = 0; a < m.num_agents(); ++a)
      for (std::size_t b = unordered ? a + 1 : 0; b < m.num_agents(); ++b)
        if (r.contains(m.point(w, a), m.point(w, b))) pairs.push_back({m.agent_name(a), m.agent_name(b)});
    if (!pairs.empty()) out[m.world_name(w)] = pairs;
  }
  return out;
}

}  // namespace detail

/// Parses a model document.  Throws ModelError on syntax errors (with
/// line and column), unknown identifiers and EFL violations.
inline ModelFile parse_model(const std::string& text) {
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ModelError("model file: syntax error at " + std::to_string(line) + ":" + std::to_string(col));
  }
  if (!j.is_object()) throw ModelError("model file: top level must be an object");

  Model m(detail::string_list(detail::member(j, "worlds"), "worlds"),
          detail::string_list(detail::member(j, "agents"), "agents"));

  if (j.contains("names")) {
    if (!j["names"].is_object()) throw ModelError("model file: 'names' must map nominals to agents");
    for (const auto& [n, a] : j["names"].items()) {
      if (!a.is_string()) throw ModelError("model file: name '" + n + "' must map to an agent");
      m.set_name(n, detail::lookup(m.find_agent(a.get<std::string>()), "agent", a.get<std::string>()));
    }
  }

  Relation k(m.num_points());
  if (j.contains("k")) {
    if (!j["k"].is_object()) throw ModelError("model file: 'k' must map agents to pair lists");
    for (const auto& [a, pairs] : j["k"].items()) {
      const std::size_t ai = detail::lookup(m.find_agent(a), "agent", a);
      if (!pairs.is_array()) throw ModelError("model file: 'k." + a + "' must be a list");
      for (const auto& p : pairs) {
        const auto [w, v] = detail::token_pair(p, "k");
        k.insert(m.point(detail::lookup(m.find_world(w), "world", w), ai),
                 m.point(detail::lookup(m.find_world(v), "world", v), ai));
      }
    }
  }
  m.set_knowledge(equivalence_closure(k));
  m.set_friendship(j.contains("f") ? symmetric_closure(detail::world_pairs(m, j["f"], "f")) : Relation(m.num_points()));
  if (j.contains("d")) m.set_want(detail::world_pairs(m, j["d"], "d"));

  if (j.contains("val")) {
    if (!j["val"].is_object()) throw ModelError("model file: 'val' must map propositions to point lists");
    for (const auto& [p, pts] : j["val"].items()) {
      PointSet s(m.num_points());
      if (!pts.is_array()) throw ModelError("model file: 'val." + p + "' must be a list");
      for (const auto& x : pts) {
        const auto [w, a] = detail::token_pair(x, "val");
        s.set(m.point(detail::lookup(m.find_world(w), "world", w), detail::lookup(m.find_agent(a), "agent", a)));
      }
      m.set_valuation(p, std::move(s));
    }
  }

  ModelFile out{m, std::nullopt};
  if (j.contains("actual")) {
    const auto [w, a] = detail::token_pair(j["actual"], "actual");
    out.actual = Point{detail::lookup(m.find_world(w), "world", w), detail::lookup(m.find_agent(a), "agent", a)};
  }

  const auto violations = validate(out.model);
  if (!violations.empty()) {
    std::string msg = "model file: invalid EFL model:";
    for (const auto& v : violations) msg += " " + v.message + ";";
    throw ModelError(msg);
  }
  return out;
}

inline std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline ModelFile read_model(const std::string& path) { return parse_model(read_text(path)); }

/// Closed relations, without reflexive k pairs; symmetric f pairs once.
inline std::string format_model(const Model& m, std::optional<Point> actual = std::nullopt) {
  using detail::json;
  json j = json::object();
  j["worlds"] = m.worlds();
  j["agents"] = m.agents();
  json names = json::object();
  for (const auto& [n, a] : m.names()) names[n] = m.agent_name(a);
  j["names"] = names;
  json k = json::object();
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    json pairs = json::array();
    for (std::size_t w = 0; w < m.num_worlds(); ++w)
      for (std::size_t v = w + 1; v < m.num_worlds(); ++v)
        if (m.knows_link(a, w, v)) pairs.push_back({m.world_name(w), m.world_name(v)});
    k[m.agent_name(a)] = pairs;
  }
  j["k"] = k;
  j["f"] = detail::world_pairs_json(m, m.friendship(), true);
  if (m.has_want()) j["d"] = detail::world_pairs_json(m, m.want(), false);
  json val = json::object();
  for (const auto& [p, s] : m.valuations()) {
    json pts = json::array();
    s.for_each([&](std::size_t x) {
      const Point q = m.point_at(x);
      pts.push_back({m.world_name(q.world), m.agent_name(q.agent)});
    });
    val[p] = pts;
  }
  j["val"] = val;
  if (actual) j["actual"] = {m.world_name(actual->world), m.agent_name(actual->agent)};
  return j.dump(2) + "\n";
}

inline void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write '" + path + "'");
  out << text;
}

inline void write_model(const Model& m, const std::string& path, std::optional<Point> actual = std::nullopt) {
  write_text(path, format_model(m, actual));
}

struct KnowledgeLink {
  std::size_t agent;
  std::size_t from;
  std::size_t to;
  friend bool operator==(const KnowledgeLink&, const KnowledgeLink&) = default;
};

/// Each k-cell of each agent as a chain through its worlds in order.
inline std::vector<KnowledgeLink> knowledge_generators(const Model& m) {
  std::vector<KnowledgeLink> out;
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    std::vector<bool> done(m.num_worlds(), false);
    for (std::size_t w = 0; w < m.num_worlds(); ++w) {
      if (done[w]) continue;
      std::size_t prev = w;
      done[w] = true;
      for (std::size_t v = w + 1; v < m.num_worlds(); ++v) {
        if (done[v] || !m.knows_link(a, w, v)) continue;
        done[v] = true;
        out.push_back({a, prev, v});
        prev = v;
      }
    }
  }
  return out;
}

/// Graphviz text: one row per world, one column per agent.  Solid edges
/// chain each k-cell within a column; dotted edges are friendships.
inline std::string format_dot(const Model& m) {
  std::ostringstream o;
  auto id = [&](std::size_t w, std::size_t a) { return "\"" + m.world_name(w) + "/" + m.agent_name(a) + "\""; };
  o << "graph efl {\n  node [shape=box];\n";
  for (std::size_t w = 0; w < m.num_worlds(); ++w) {
    o << "  { rank=same;";
    for (std::size_t a = 0; a < m.num_agents(); ++a) {
      std::string label = m.world_name(w) + ", " + m.agent_name(a);
      std::string props;
      for (const auto& [p, s] : m.valuations())
        if (s.test(m.point(w, a))) props += (props.empty() ? "" : " ") + p;
      if (!props.empty()) label += "\\n" + props;
      o << " " << id(w, a) << " [label=\"" << label << "\"];";
    }
    o << " }\n";
  }
  for (const auto& g : knowledge_generators(m))
    o << "  " << id(g.from, g.agent) << " -- " << id(g.to, g.agent) << " [style=solid];\n";
  for (std::size_t w = 0; w < m.num_worlds(); ++w)
    for (std::size_t a = 0; a < m.num_agents(); ++a)
      for (std::size_t b = a + 1; b < m.num_agents(); ++b)
        if (m.friends(w, a, b)) o << "  " << id(w, a) << " -- " << id(w, b) << " [style=dotted];\n";
  if (m.has_want())
    for (std::size_t w = 0; w < m.num_worlds(); ++w)
      for (std::size_t a = 0; a < m.num_agents(); ++a)
        for (std::size_t b = 0; b < m.num_agents(); ++b)
          if (m.wants(w, a, b)) o << "  " << id(w, a) << " -- " << id(w, b) << " [style=dashed, dir=forward];\n";
  o << "}\n";
  return o.str();
}

inline void export_dot(const Model& m, const std::string& path) { write_text(path, format_dot(m)); }

}  // namespace efl
