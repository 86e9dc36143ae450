#pragma once

// PDL-transformations and GDDL product updates.

#include <set>
#include <string>
#include <vector>

#include "efl/engine.hpp"

namespace efl {

/// Throws if m is not an EFL model: CrossDimensionError when K relates
/// different agents or F/D relate different worlds, EFLViolation otherwise.
inline void require_efl(const Model& m) {
  const auto violations = validate(m);
  if (violations.empty()) return;
  bool cross = false;
  std::string msg = "result is not an EFL model:";
  for (const auto& v : violations) {
    msg += " " + v.message + ";";
    cross = cross || v.kind == Violation::Kind::k_cross_agent || v.kind == Violation::Kind::f_cross_world ||
            v.kind == Violation::Kind::d_cross_world;
  }
  if (cross) throw CrossDimensionError(msg);
  throw EFLViolation(msg);
}

inline TransformResult apply_trans(Evaluator& ev, const Model& m, const Transformation& t, bool check,
                                   const Bindings* bindings) {
  for (std::size_t i = 0; i < t.assignments.size(); ++i)
    for (std::size_t j = i + 1; j < t.assignments.size(); ++j)
      if (t.assignments[i].target == t.assignments[j].target)
        throw EvalError("transformation assigns the same target twice");

  // Every right-hand side is evaluated in the pre-model.
  struct Pending {
    const Assignment* a;
    Relation rel;
    PointSet set;
  };
  std::vector<Pending> pending;
  pending.reserve(t.assignments.size());
  for (const auto& a : t.assignments) {
    Pending p{&a, {}, {}};
    if (a.program.valid())
      p.rel = ev.denote(m, a.program, bindings);
    else
      p.set = ev.eval_core(m, a.formula, bindings);
    pending.push_back(std::move(p));
  }

  Model out = m;
  for (auto& p : pending) {
    switch (p.a->target.kind) {
      case Target::Kind::K: out.set_knowledge(std::move(p.rel)); break;
      case Target::Kind::F: out.set_friendship(std::move(p.rel)); break;
      case Target::Kind::D: out.set_want(std::move(p.rel)); break;
      case Target::Kind::prop: out.set_valuation(p.a->target.name, std::move(p.set)); break;
      case Target::Kind::nominal: {
        std::optional<std::size_t> agent;
        for (std::size_t a = 0; a < m.num_agents() && !agent; ++a)
          if (p.set == m.column(a)) agent = a;
        if (!agent)
          throw EvalError("assignment to nominal '" + p.a->target.name +
                          "' must denote exactly one agent in every world");
        out.set_name(p.a->target.name, *agent);
        break;
      }
    }
  }
  if (check) require_efl(out);
  TransformResult r{std::move(out), std::vector<std::size_t>(m.num_points())};
  for (std::size_t i = 0; i < r.point_map.size(); ++i) r.point_map[i] = i;
  return r;
}

inline TransformResult apply_gddl(Evaluator& ev, const Model& m, const GddlOperator& op, bool check,
                                  const Bindings* bindings) {
  const std::size_t nd = op.actions.size();
  if (nd == 0) throw EvalError("GDDL operator has no actions");
  auto action_index = [&](const std::string& id) -> std::size_t {
    for (std::size_t i = 0; i < nd; ++i)
      if (op.actions[i].id == id) return i;
    throw EvalError("GDDL operator has no action '" + id + "'");
  };
  for (std::size_t i = 0; i < nd; ++i)
    for (std::size_t j = i + 1; j < nd; ++j)
      if (op.actions[i].id == op.actions[j].id) throw EvalError("duplicate GDDL action '" + op.actions[i].id + "'");
  const std::size_t actual = action_index(op.actual);

  const std::size_t nw = m.num_worlds();
  const std::size_t na = m.num_agents();
  std::vector<Model> slabs;
  for (const auto& a : op.actions) slabs.push_back(apply_trans(ev, m, a.effect, false, bindings).model);

  std::vector<WorldId> worlds;
  for (std::size_t d = 0; d < nd; ++d)
    for (std::size_t w = 0; w < nw; ++w) worlds.push_back(m.world_name(w) + ":" + op.actions[d].id);
  Model prod(worlds, m.agents());
  const std::size_t np = prod.num_points();
  auto lift = [&](std::size_t d, std::size_t x) { return d * nw * na + x; };

  Relation k(np), f(np), want(np);
  bool has_want = false;
  for (std::size_t d = 0; d < nd; ++d) {
    const Model& s = slabs[d];
    s.knowledge().for_each_pair([&](std::size_t x, std::size_t y) { k.insert(lift(d, x), lift(d, y)); });
    s.friendship().for_each_pair([&](std::size_t x, std::size_t y) { f.insert(lift(d, x), lift(d, y)); });
    if (s.has_want()) {
      has_want = true;
      s.want().for_each_pair([&](std::size_t x, std::size_t y) { want.insert(lift(d, x), lift(d, y)); });
    }
    if (s.names() != slabs[0].names()) throw EvalError("GDDL actions disagree on the naming of agents");
  }
  prod.set_knowledge(std::move(k));
  prod.set_friendship(std::move(f));
  if (has_want) prod.set_want(std::move(want));
  for (const auto& [n, a] : slabs[0].names()) prod.set_name(n, a);

  std::set<std::string> props;
  for (const auto& s : slabs)
    for (const auto& [p, v] : s.valuations()) props.insert(p);
  for (const auto& p : props) {
    PointSet v(np);
    for (std::size_t d = 0; d < nd; ++d) {
      const PointSet sv = slabs[d].valuation(p);
      sv.for_each([&](std::size_t x) { v.set(lift(d, x)); });
    }
    prod.set_valuation(p, std::move(v));
  }

  Bindings internal;
  for (const auto& r : op.internal) {
    Relation rel(np);
    for (const auto& [x, y] : r.pairs) {
      const std::size_t dx = action_index(x), dy = action_index(y);
      for (std::size_t i = 0; i < nw * na; ++i) rel.insert(lift(dx, i), lift(dy, i));
    }
    if (!internal.emplace(r.token, std::move(rel)).second)
      throw EvalError("internal relation '" + r.token + "' defined twice");
  }

  TransformResult r = apply_trans(ev, prod, op.integrate, check, &internal);
  r.point_map.assign(m.num_points(), 0);
  for (std::size_t x = 0; x < m.num_points(); ++x) r.point_map[x] = lift(actual, x);
  return r;
}

inline TransformResult apply_op(Evaluator& ev, const Model& m, const DynamicOp& op, bool check,
                                const Bindings* bindings) {
  if (const auto* t = std::get_if<Transformation>(&op)) return apply_trans(ev, m, *t, check, bindings);
  return apply_gddl(ev, m, std::get<GddlOperator>(op), check, bindings);
}

/// Convenience overloads with a default evaluator.
inline TransformResult apply_trans(const Model& m, const Transformation& t) {
  Evaluator ev;
  return apply_trans(ev, m, t, true, nullptr);
}
inline TransformResult apply_gddl(const Model& m, const GddlOperator& op) {
  Evaluator ev;
  return apply_gddl(ev, m, op, true, nullptr);
}

/// The product before integration, for inspection.
inline Model gddl_product(const Model& m, const GddlOperator& op) {
  GddlOperator plain = op;
  plain.integrate = identity_transformation();
  Evaluator ev;
  return apply_gddl(ev, m, plain, false, nullptr).model;
}

}  // namespace efl
