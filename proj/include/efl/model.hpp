#pragma once

// Finite two-dimensional Kripke models: worlds x agents, with per-agent
// knowledge partitions (k), per-world friendship graphs (f), an optional
// per-world want relation (d), agent nominals (g) and an indexical valuation.
//
// All relations are stored at the level of points (world, agent), indexed
// world-major: point(w, a) = w * |A| + a.  K only ever relates points with the
// same agent; F and D only relate points in the same world.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efl/bits.hpp"
#include "efl/error.hpp"

namespace efl {

using WorldId = std::string;
using AgentId = std::string;

struct Point {
  std::size_t world = 0;
  std::size_t agent = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

class Model {
 public:
  Model() : frame_(std::make_shared<Frame>()) {}
  Model(std::vector<WorldId> worlds, std::vector<AgentId> agents)
      : frame_(std::make_shared<Frame>(Frame{std::move(worlds), std::move(agents)})) {
    check_unique(frame_->worlds, "world");
    check_unique(frame_->agents, "agent");
    k_ = Relation(num_points());
    f_ = Relation(num_points());
  }

  std::size_t num_worlds() const { return frame_->worlds.size(); }
  std::size_t num_agents() const { return frame_->agents.size(); }
  std::size_t num_points() const { return num_worlds() * num_agents(); }

  std::size_t point(std::size_t w, std::size_t a) const { return w * num_agents() + a; }
  std::size_t point(Point p) const { return point(p.world, p.agent); }
  Point point_at(std::size_t i) const { return {i / num_agents(), i % num_agents()}; }

  const std::vector<WorldId>& worlds() const { return frame_->worlds; }
  const std::vector<AgentId>& agents() const { return frame_->agents; }
  const WorldId& world_name(std::size_t w) const { return frame_->worlds.at(w); }
  const AgentId& agent_name(std::size_t a) const { return frame_->agents.at(a); }

  std::optional<std::size_t> find_world(const std::string& name) const { return find(frame_->worlds, name); }
  std::optional<std::size_t> find_agent(const std::string& name) const { return find(frame_->agents, name); }
  std::size_t world_index(const std::string& name) const {
    if (auto w = find_world(name)) return *w;
    throw ModelError("unknown world '" + name + "'");
  }
  std::size_t agent_index(const std::string& name) const {
    if (auto a = find_agent(name)) return *a;
    throw ModelError("unknown agent '" + name + "'");
  }

  // Point-level relations.
  const Relation& knowledge() const { return k_; }
  const Relation& friendship() const { return f_; }
  const Relation& want() const { return d_; }
  bool has_want() const { return has_d_; }
  void set_knowledge(Relation r) { k_ = std::move(r); }
  void set_friendship(Relation r) { f_ = std::move(r); }
  void set_want(Relation r) {
    d_ = std::move(r);
    has_d_ = true;
  }
  void clear_want() {
    d_ = Relation();
    has_d_ = false;
  }

  bool knows_link(std::size_t a, std::size_t w, std::size_t v) const { return k_.contains(point(w, a), point(v, a)); }
  bool friends(std::size_t w, std::size_t a, std::size_t b) const { return f_.contains(point(w, a), point(w, b)); }
  bool wants(std::size_t w, std::size_t a, std::size_t b) const {
    return has_d_ && d_.contains(point(w, a), point(w, b));
  }

  // Valuation, kept sorted by proposition name.
  const std::vector<std::pair<std::string, PointSet>>& valuations() const { return val_; }
  const PointSet* find_valuation(const std::string& prop) const {
    auto it = lower(val_, prop);
    return it != val_.end() && it->first == prop ? &it->second : nullptr;
  }
  PointSet valuation(const std::string& prop) const {
    if (const auto* s = find_valuation(prop)) return *s;
    return PointSet(num_points());
  }
  void set_valuation(const std::string& prop, PointSet s) {
    if (s.size() != num_points()) throw ModelError("valuation of '" + prop + "' has wrong size");
    auto it = lower(val_, prop);
    if (it != val_.end() && it->first == prop) {
      it->second = std::move(s);
    } else {
      val_.insert(it, {prop, std::move(s)});
    }
  }

  // Nominal assignment g, kept sorted by nominal.
  const std::vector<std::pair<std::string, std::size_t>>& names() const { return names_; }
  std::optional<std::size_t> named(const std::string& nominal) const {
    auto it = lower(names_, nominal);
    if (it != names_.end() && it->first == nominal) return it->second;
    return std::nullopt;
  }
  void set_name(const std::string& nominal, std::size_t agent) {
    if (agent >= num_agents()) throw ModelError("nominal '" + nominal + "' names a nonexistent agent");
    auto it = lower(names_, nominal);
    if (it != names_.end() && it->first == nominal) {
      it->second = agent;
    } else {
      names_.insert(it, {nominal, agent});
    }
  }
  /// True iff every agent is named by at least one nominal.
  bool named_agent() const {
    std::vector<bool> seen(num_agents(), false);
    for (const auto& [n, a] : names_) seen[a] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  PointSet column(std::size_t a) const {
    PointSet s(num_points());
    for (std::size_t w = 0; w < num_worlds(); ++w) s.set(point(w, a));
    return s;
  }
  PointSet world_block(std::size_t w) const {
    PointSet s(num_points());
    for (std::size_t a = 0; a < num_agents(); ++a) s.set(point(w, a));
    return s;
  }

  /// k_a as a relation on world indices.
  Relation knowledge_of(std::size_t a) const {
    Relation r(num_worlds());
    for (std::size_t w = 0; w < num_worlds(); ++w)
      for (std::size_t v = 0; v < num_worlds(); ++v)
        if (knows_link(a, w, v)) r.insert(w, v);
    return r;
  }
  /// f_w as a relation on agent indices.
  Relation friendship_at(std::size_t w) const {
    Relation r(num_agents());
    for (std::size_t a = 0; a < num_agents(); ++a)
      for (std::size_t b = 0; b < num_agents(); ++b)
        if (friends(w, a, b)) r.insert(a, b);
    return r;
  }

  /// Structural equality (same frame names, relations, names and valuation).
  friend bool operator==(const Model& x, const Model& y) {
    if (x.worlds() != y.worlds() || x.agents() != y.agents()) return false;
    if (!(x.k_ == y.k_) || !(x.f_ == y.f_) || x.has_d_ != y.has_d_) return false;
    if (x.has_d_ && !(x.d_ == y.d_)) return false;
    if (x.names_ != y.names_) return false;
    // Absent propositions and empty ones are the same thing.
    auto nonempty = [](const Model& m) {
      std::vector<std::pair<std::string, PointSet>> out;
      for (const auto& kv : m.val_)
        if (kv.second.any()) out.push_back(kv);
      return out;
    };
    return nonempty(x) == nonempty(y);
  }

 private:
  struct Frame {
    std::vector<WorldId> worlds;
    std::vector<AgentId> agents;
  };

  static std::optional<std::size_t> find(const std::vector<std::string>& v, const std::string& s) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  }
  static void check_unique(const std::vector<std::string>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[i] == v[j]) throw ModelError(std::string("duplicate ") + what + " '" + v[i] + "'");
  }
  template <class V>
  static auto lower(V& v, const std::string& key) -> decltype(v.begin()) {
    return std::lower_bound(v.begin(), v.end(), key, [](const auto& kv, const std::string& k) { return kv.first < k; });
  }

  std::shared_ptr<const Frame> frame_;
  Relation k_;
  Relation f_;
  Relation d_;
  bool has_d_ = false;
  std::vector<std::pair<std::string, PointSet>> val_;
  std::vector<std::pair<std::string, std::size_t>> names_;
};

struct PointedModel {
  Model model;
  Point point;
};

// ---------------------------------------------------------------------------
// Closure helpers

/// (R u R^T)* restricted to whatever R relates; used for k generators.
inline Relation equivalence_closure(const Relation& r) { return (r | r.transpose()).star(); }

inline Relation symmetric_closure(const Relation& r) { return r | r.transpose(); }

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind {
    k_cross_agent,
    k_not_reflexive,
    k_not_symmetric,
    k_not_transitive,
    f_cross_world,
    f_reflexive,
    f_not_symmetric,
    d_cross_world,
  };
  Kind kind;
  std::string message;
};

/// Fast check of the conditions reported by validate(); no messages.
inline bool is_efl(const Model& m) {
  const std::size_t n = m.num_points();
  const std::size_t na = m.num_agents();
  const Relation& k = m.knowledge();
  const Relation& f = m.friendship();
  for (std::size_t x = 0; x < n; ++x) {
    if (!k.contains(x, x) || f.contains(x, x)) return false;
    bool ok = true;
    k.for_each_successor(x, [&](std::size_t y) {
      if (y % na != x % na || !k.contains(y, x)) ok = false;
    });
    if (!ok) return false;
    f.for_each_successor(x, [&](std::size_t y) {
      if (y / na != x / na || !f.contains(y, x)) ok = false;
    });
    if (!ok) return false;
    if (m.has_want())
      m.want().for_each_successor(x, [&](std::size_t y) {
        if (y / na != x / na) ok = false;
      });
    if (!ok) return false;
  }
  // transitivity: successors of successors are successors
  for (std::size_t x = 0; x < n; ++x) {
    const auto* rx = k.row(x);
    bool ok = true;
    k.for_each_successor(x, [&](std::size_t y) {
      const auto* ry = k.row(y);
      for (std::size_t j = 0; j < k.row_words(); ++j)
        if (ry[j] & ~rx[j]) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

/// Every violated frame condition, agents first (in order), then worlds.
inline std::vector<Violation> validate(const Model& m) {
  std::vector<Violation> out;
  const std::size_t nw = m.num_worlds();
  const std::size_t na = m.num_agents();
  const Relation& k = m.knowledge();
  using K = Violation::Kind;

  k.for_each_pair([&](std::size_t x, std::size_t y) {
    const Point p = m.point_at(x), q = m.point_at(y);
    if (p.agent != q.agent)
      out.push_back({K::k_cross_agent, "K relates (" + m.world_name(p.world) + "," + m.agent_name(p.agent) + ") to (" +
                                           m.world_name(q.world) + "," + m.agent_name(q.agent) + ")"});
  });
  for (std::size_t a = 0; a < na; ++a) {
    const std::string ka = "k_" + m.agent_name(a);
    for (std::size_t w = 0; w < nw; ++w)
      if (!m.knows_link(a, w, w)) out.push_back({K::k_not_reflexive, ka + " not reflexive at " + m.world_name(w)});
    for (std::size_t w = 0; w < nw; ++w)
      for (std::size_t v = 0; v < nw; ++v)
        if (m.knows_link(a, w, v) && !m.knows_link(a, v, w))
          out.push_back({K::k_not_symmetric,
                         ka + " not symmetric: (" + m.world_name(w) + "," + m.world_name(v) + ") without converse"});
    for (std::size_t w = 0; w < nw; ++w)
      for (std::size_t v = 0; v < nw; ++v)
        for (std::size_t u = 0; u < nw; ++u)
          if (m.knows_link(a, w, v) && m.knows_link(a, v, u) && !m.knows_link(a, w, u))
            out.push_back({K::k_not_transitive, ka + " not transitive: (" + m.world_name(w) + "," + m.world_name(v) +
                                                     "," + m.world_name(u) + ")"});
  }

  auto cross_world = [&](const Relation& r, K kind, const char* label) {
    r.for_each_pair([&](std::size_t x, std::size_t y) {
      const Point p = m.point_at(x), q = m.point_at(y);
      if (p.world != q.world)
        out.push_back({kind, std::string(label) + " relates (" + m.world_name(p.world) + "," + m.agent_name(p.agent) +
                                 ") to (" + m.world_name(q.world) + "," + m.agent_name(q.agent) + ")"});
    });
  };
  cross_world(m.friendship(), K::f_cross_world, "F");
  for (std::size_t w = 0; w < nw; ++w) {
    const std::string fw = "f_" + m.world_name(w);
    for (std::size_t a = 0; a < na; ++a)
      if (m.friends(w, a, a)) out.push_back({K::f_reflexive, fw + " not irreflexive: (" + m.agent_name(a) + "," + m.agent_name(a) + ")"});
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < na; ++b)
        if (a != b && m.friends(w, a, b) && !m.friends(w, b, a))
          out.push_back({K::f_not_symmetric,
                         fw + " not symmetric: (" + m.agent_name(a) + "," + m.agent_name(b) + ") without converse"});
  }
  if (m.has_want()) cross_world(m.want(), K::d_cross_world, "D");
  return out;
}

// ---------------------------------------------------------------------------
// Builder working at the level of model diagrams: k generators are
// closed to equivalences and f generators to symmetric relations.

class ModelBuilder {
 public:
  enum class Closure { apply, none };

  ModelBuilder(std::vector<WorldId> worlds, std::vector<AgentId> agents) : m_(std::move(worlds), std::move(agents)) {
    k_ = Relation(m_.num_points());
    f_ = Relation(m_.num_points());
  }

  ModelBuilder& know(const AgentId& a, const WorldId& w, const WorldId& v) {
    const auto ai = m_.agent_index(a);
    k_.insert(m_.point(m_.world_index(w), ai), m_.point(m_.world_index(v), ai));
    return *this;
  }
  /// Glue all listed worlds into one k_a cell.
  ModelBuilder& know_cell(const AgentId& a, const std::vector<WorldId>& cell) {
    for (std::size_t i = 1; i < cell.size(); ++i) know(a, cell[i - 1], cell[i]);
    return *this;
  }
  ModelBuilder& friends(const WorldId& w, const AgentId& a, const AgentId& b) {
    const auto wi = m_.world_index(w);
    f_.insert(m_.point(wi, m_.agent_index(a)), m_.point(wi, m_.agent_index(b)));
    return *this;
  }
  /// a and b friends in every world.
  ModelBuilder& friends_everywhere(const AgentId& a, const AgentId& b) {
    for (const auto& w : m_.worlds()) friends(w, a, b);
    return *this;
  }
  ModelBuilder& wants(const WorldId& w, const AgentId& a, const AgentId& b) {
    if (!has_d_) {
      d_ = Relation(m_.num_points());
      has_d_ = true;
    }
    const auto wi = m_.world_index(w);
    d_.insert(m_.point(wi, m_.agent_index(a)), m_.point(wi, m_.agent_index(b)));
    return *this;
  }
  ModelBuilder& with_want_relation() {
    if (!has_d_) {
      d_ = Relation(m_.num_points());
      has_d_ = true;
    }
    return *this;
  }
  ModelBuilder& name(const std::string& nominal, const AgentId& a) {
    m_.set_name(nominal, m_.agent_index(a));
    return *this;
  }
  /// Name every agent by its own identifier.
  ModelBuilder& self_named() {
    for (std::size_t a = 0; a < m_.num_agents(); ++a) m_.set_name(m_.agent_name(a), a);
    return *this;
  }
  ModelBuilder& holds(const std::string& prop, const WorldId& w, const AgentId& a) {
    PointSet s = m_.valuation(prop);
    s.set(m_.point(m_.world_index(w), m_.agent_index(a)));
    m_.set_valuation(prop, std::move(s));
    return *this;
  }
  ModelBuilder& prop(const std::string& prop) {
    m_.set_valuation(prop, m_.valuation(prop));
    return *this;
  }

  /// Builds without checking; use validate() on the result.
  Model build(Closure closure = Closure::apply) const {
    Model m = m_;
    if (closure == Closure::apply) {
      m.set_knowledge(equivalence_closure(k_));
      m.set_friendship(symmetric_closure(f_));
    } else {
      m.set_knowledge(k_);
      m.set_friendship(f_);
    }
    if (has_d_) m.set_want(d_);
    return m;
  }
  /// Builds with closure and throws EFLViolation listing every violation.
  Model build_valid() const {
    Model m = build(Closure::apply);
    auto v = validate(m);
    if (!v.empty()) {
      std::string msg = "invalid EFL model:";
      for (const auto& x : v) msg += " " + x.message + ";";
      throw EFLViolation(msg);
    }
    return m;
  }

 private:
  Model m_;
  Relation k_;
  Relation f_;
  Relation d_;
  bool has_d_ = false;
};

// ---------------------------------------------------------------------------

/// The model with `nominal` now naming `agent`; everything else unchanged.
inline Model rename(const Model& m, const std::string& nominal, const AgentId& agent) {
  Model out = m;
  out.set_name(nominal, m.agent_index(agent));
  return out;
}
inline Model rename(const Model& m, const std::string& nominal, std::size_t agent) {
  Model out = m;
  out.set_name(nominal, agent);
  return out;
}

/// A nominal not in the domain of g ("_n0", "_n1", ...).
inline std::string fresh_nominal(const Model& m) {
  for (std::size_t i = 0;; ++i) {
    std::string s = "_n" + std::to_string(i);
    if (!m.named(s)) return s;
  }
}

/// True iff the bijections carry k, f, d, g and V of m1 exactly onto m2.
inline bool equal_modulo_iso(const Model& m1, const Model& m2, const std::map<WorldId, WorldId>& world_map,
                             const std::map<AgentId, AgentId>& agent_map) {
  if (m1.num_worlds() != m2.num_worlds() || m1.num_agents() != m2.num_agents())
    throw ModelError("equal_modulo_iso: models have different sizes");
  std::vector<std::size_t> wm(m1.num_worlds()), am(m1.num_agents());
  std::vector<bool> hit_w(m2.num_worlds(), false), hit_a(m2.num_agents(), false);
  if (world_map.size() != m1.num_worlds() || agent_map.size() != m1.num_agents())
    throw ModelError("equal_modulo_iso: maps are not total");
  for (std::size_t w = 0; w < m1.num_worlds(); ++w) {
    auto it = world_map.find(m1.world_name(w));
    if (it == world_map.end()) throw ModelError("equal_modulo_iso: world '" + m1.world_name(w) + "' unmapped");
    wm[w] = m2.world_index(it->second);
    if (hit_w[wm[w]]) throw ModelError("equal_modulo_iso: world map is not injective");
    hit_w[wm[w]] = true;
  }
  for (std::size_t a = 0; a < m1.num_agents(); ++a) {
    auto it = agent_map.find(m1.agent_name(a));
    if (it == agent_map.end()) throw ModelError("equal_modulo_iso: agent '" + m1.agent_name(a) + "' unmapped");
    am[a] = m2.agent_index(it->second);
    if (hit_a[am[a]]) throw ModelError("equal_modulo_iso: agent map is not injective");
    hit_a[am[a]] = true;
  }
  auto map_point = [&](std::size_t x) {
    const Point p = m1.point_at(x);
    return m2.point(wm[p.world], am[p.agent]);
  };
  auto same_relation = [&](const Relation& r1, const Relation& r2) {
    if (r1.pair_count() != r2.pair_count()) return false;
    bool ok = true;
    r1.for_each_pair([&](std::size_t x, std::size_t y) {
      if (!r2.contains(map_point(x), map_point(y))) ok = false;
    });
    return ok;
  };
  if (!same_relation(m1.knowledge(), m2.knowledge())) return false;
  if (!same_relation(m1.friendship(), m2.friendship())) return false;
  if (m1.has_want() != m2.has_want()) return false;
  if (m1.has_want() && !same_relation(m1.want(), m2.want())) return false;

  std::map<std::string, std::size_t> g1, g2;
  for (const auto& [n, a] : m1.names()) g1[n] = am[a];
  for (const auto& [n, a] : m2.names()) g2[n] = a;
  if (g1 != g2) return false;

  std::map<std::string, PointSet> v1, v2;
  for (const auto& [p, s] : m1.valuations()) {
    if (s.none()) continue;
    PointSet t(m2.num_points());
    s.for_each([&](std::size_t x) { t.set(map_point(x)); });
    v1.emplace(p, std::move(t));
  }
  for (const auto& [p, s] : m2.valuations())
    if (s.any()) v2.emplace(p, s);
  return v1 == v2;
}

}  // namespace efl
