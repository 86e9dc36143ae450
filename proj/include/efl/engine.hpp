#pragma once

// Denotations of formulas (point sets) and programs (point relations).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efl/bits.hpp"
#include "efl/error.hpp"
#include "efl/model.hpp"
#include "efl/social.hpp"
#include "efl/syntax.hpp"

namespace efl {

/// What a dynamic modality means when its operator yields a structure that
/// is not an EFL model.
enum class UndefinedPolicy {
  error,    // throw EFLViolation / CrossDimensionError
  vacuous,  // [Δ]φ is true everywhere
};

struct EvalOptions {
  UndefinedPolicy undefined = UndefinedPolicy::error;
};

/// Extensions of internal relation tokens (K', ...) on a product model.
using Bindings = std::map<std::string, Relation>;

struct TransformResult {
  Model model;
  /// Post-point index for every pre-point index.
  std::vector<std::size_t> point_map;

  Point map(const Model& pre, Point p) const { return model.point_at(point_map[pre.point(p)]); }
};

class Evaluator;

TransformResult apply_trans(Evaluator& ev, const Model& m, const Transformation& t, bool check = true,
                            const Bindings* bindings = nullptr);
TransformResult apply_gddl(Evaluator& ev, const Model& m, const GddlOperator& op, bool check = true,
                           const Bindings* bindings = nullptr);
TransformResult apply_op(Evaluator& ev, const Model& m, const DynamicOp& op, bool check = true,
                         const Bindings* bindings = nullptr);
void require_efl(const Model& m);

class Evaluator {
 public:
  explicit Evaluator(EvalOptions opt = {}) : opt_(opt) {}

  const EvalOptions& options() const { return opt_; }
  void set_options(EvalOptions opt) { opt_ = opt; }

  /// Number of dynamic modalities evaluated vacuously since construction.
  std::size_t undefined_hits() const { return undefined_hits_; }
  void reset_counters() { undefined_hits_ = 0; }

  /// ⟦φ⟧ on m.  Sugar is expanded first.
  PointSet eval(const Model& m, const Formula& phi) {
    const Formula core = has_sugar(phi) ? expand(phi) : phi;
    return eval_core(m, core);
  }

  /// ⟦φ⟧ on m for a formula known to be sugar-free.
  PointSet eval_core(const Model& m, const Formula& phi, const Bindings* bindings = nullptr) {
    Ctx ctx{&m, bindings, {}};
    return eval(ctx, phi);
  }

  Relation denote(const Model& m, const Program& pi, const Bindings* bindings = nullptr) {
    Ctx ctx{&m, bindings, {}};
    return denote(ctx, pi);
  }

  bool satisfies(const PointedModel& pm, const Formula& phi) {
    check_point(pm.model, pm.point);
    return eval(pm.model, phi).test(pm.model.point(pm.point));
  }
  bool satisfies(const Model& m, const std::string& world, const std::string& agent, const Formula& phi) {
    return satisfies(PointedModel{m, {m.world_index(world), m.agent_index(agent)}}, phi);
  }

 private:
  struct Ctx {
    const Model* m;
    const Bindings* bindings;
    std::vector<std::pair<const FormulaNode*, PointSet>> memo;
  };

  static void check_point(const Model& m, Point p) {
    if (p.world >= m.num_worlds()) throw ModelError("point has unknown world");
    if (p.agent >= m.num_agents()) throw ModelError("point has unknown agent");
  }

  static std::size_t agent_of(const Model& m, const std::string& nominal) {
    if (auto a = m.named(nominal)) return *a;
    throw EvalError("unknown nominal '" + nominal + "'");
  }

  static const Relation& want_of(const Model& m) {
    if (!m.has_want()) throw EvalError("the model has no want relation (D)");
    return m.want();
  }

  static Relation everyone_relation(const Model& m) {
    Relation r(m.num_points());
    const std::size_t na = m.num_agents();
    for (std::size_t w = 0; w < m.num_worlds(); ++w)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) r.insert(m.point(w, a), m.point(w, b));
    return r;
  }

  /// Points whose whole world block lies in s.
  static PointSet box_everyone(const Model& m, const PointSet& s) {
    PointSet out(m.num_points());
    const std::size_t na = m.num_agents();
    for (std::size_t w = 0; w < m.num_worlds(); ++w) {
      bool all = true;
      for (std::size_t a = 0; a < na && all; ++a) all = s.test(m.point(w, a));
      if (all)
        for (std::size_t a = 0; a < na; ++a) out.set(m.point(w, a));
    }
    return out;
  }

  PointSet eval(Ctx& ctx, const Formula& phi) {
    const bool shared = phi.use_count() > 1;
    if (shared) {
      for (const auto& [k, v] : ctx.memo)
        if (k == phi.get()) return v;
    }
    PointSet out = eval_node(ctx, phi);
    if (shared) ctx.memo.emplace_back(phi.get(), out);
    return out;
  }

  PointSet eval_node(Ctx& ctx, const Formula& phi) {
    const Model& m = *ctx.m;
    const std::size_t n = m.num_points();
    return std::visit(
        [&](const auto& x) -> PointSet {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, node::Const>) {
            return x.value ? PointSet::full(n) : PointSet(n);
          } else if constexpr (std::is_same_v<T, node::Prop>) {
            if (const auto* s = m.find_valuation(x.name)) return *s;
            return PointSet(n);
          } else if constexpr (std::is_same_v<T, node::Nom>) {
            return m.column(agent_of(m, x.name));
          } else if constexpr (std::is_same_v<T, node::Not>) {
            return ~eval(ctx, x.arg);
          } else if constexpr (std::is_same_v<T, node::And>) {
            PointSet s = eval(ctx, x.lhs);
            if (s.none()) return s;
            s &= eval(ctx, x.rhs);
            return s;
          } else if constexpr (std::is_same_v<T, node::Box>) {
            PointSet s = eval(ctx, x.arg);
            switch (x.modality) {
              case Modality::K: return m.knowledge().box(s);
              case Modality::F: return m.friendship().box(s);
              case Modality::A: return box_everyone(m, s);
              case Modality::D: return want_of(m).box(s);
            }
            return s;
          } else if constexpr (std::is_same_v<T, node::ProgramBox>) {
            PointSet s = eval(ctx, x.arg);
            return denote(ctx, x.program).box(s);
          } else if constexpr (std::is_same_v<T, node::At>) {
            const std::size_t a = agent_of(m, x.nominal);
            PointSet s = eval(ctx, x.arg);
            PointSet out(n);
            for (std::size_t w = 0; w < m.num_worlds(); ++w)
              if (s.test(m.point(w, a)))
                for (std::size_t b = 0; b < m.num_agents(); ++b) out.set(m.point(w, b));
            return out;
          } else if constexpr (std::is_same_v<T, node::Down>) {
            if (!m.named_agent()) throw EvalError("down requires a model in which every agent has a name");
            PointSet out(n);
            for (std::size_t a = 0; a < m.num_agents(); ++a) {
              const Model renamed = rename(m, x.nominal, a);
              Ctx sub{&renamed, ctx.bindings, {}};
              PointSet s = eval(sub, x.arg);
              s &= m.column(a);
              out |= s;
            }
            return out;
          } else if constexpr (std::is_same_v<T, node::Dynamic>) {
            return eval_dynamic(ctx, phi);
          } else if constexpr (std::is_same_v<T, node::GroupCommon>) {
            Relation r(m.num_worlds());
            for (const auto& g : x.nominals) r |= m.knowledge_of(agent_of(m, g));
            r = r.star();
            PointSet s = eval(ctx, x.arg);
            PointSet out(n);
            for (std::size_t a = 0; a < m.num_agents(); ++a) {
              for (std::size_t w = 0; w < m.num_worlds(); ++w) {
                bool all = true;
                r.for_each_successor(w, [&](std::size_t v) { all = all && s.test(m.point(v, a)); });
                if (all) out.set(m.point(w, a));
              }
            }
            return out;
          } else {
            return eval(ctx, expand(phi));
          }
        },
        phi.node().v);
  }

  /// Directly nested dynamic modalities are applied in sequence and the
  /// result is checked once, at the end of the chain.
  PointSet eval_dynamic(Ctx& ctx, const Formula& phi) {
    const Model& m = *ctx.m;
    std::vector<const DynamicOp*> ops;
    Formula cur = phi;
    while (const auto* d = cur.as<node::Dynamic>()) {
      ops.push_back(&d->op);
      cur = d->arg;
    }
    std::optional<Model> post;
    std::vector<std::size_t> map;
    const Bindings* bindings = ctx.bindings;
    for (const auto* op : ops) {
      TransformResult r = apply_op(*this, post ? *post : m, *op, false, bindings);
      if (std::holds_alternative<GddlOperator>(*op)) {
        if (map.empty()) {
          map = std::move(r.point_map);
        } else {
          for (auto& x : map) x = r.point_map[x];
        }
      }
      post = std::move(r.model);
      bindings = nullptr;
    }
    if (!is_efl(*post)) {
      if (opt_.undefined == UndefinedPolicy::vacuous) {
        ++undefined_hits_;
        return PointSet::full(m.num_points());
      }
      require_efl(*post);
    }
    Ctx sub{&*post, nullptr, {}};
    const PointSet s = eval(sub, cur);
    if (map.empty()) return s;
    PointSet out(m.num_points());
    for (std::size_t i = 0; i < map.size(); ++i)
      if (s.test(map[i])) out.set(i);
    return out;
  }

  Relation denote(Ctx& ctx, const Program& pi) {
    const Model& m = *ctx.m;
    return std::visit(
        [&](const auto& x) -> Relation {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, node::Base>) {
            switch (x.modality) {
              case Modality::K: return m.knowledge();
              case Modality::F: return m.friendship();
              case Modality::A: return everyone_relation(m);
              case Modality::D: return want_of(m);
            }
            return Relation(m.num_points());
          } else if constexpr (std::is_same_v<T, node::Internal>) {
            if (ctx.bindings) {
              auto it = ctx.bindings->find(x.token);
              if (it != ctx.bindings->end()) return it->second;
            }
            throw EvalError("unbound internal relation '" + x.token + "'");
          } else if constexpr (std::is_same_v<T, node::Test>) {
            return Relation::diagonal(eval(ctx, x.formula));
          } else if constexpr (std::is_same_v<T, node::Seq>) {
            // Tests at either end restrict rows or columns.
            if (const auto* t = x.rhs.template as<node::Test>()) {
              Relation r = denote(ctx, x.lhs);
              const PointSet s = eval(ctx, t->formula);
              const auto* sw = s.data();
              for (std::size_t i = 0; i < r.size(); ++i) {
                auto* row = r.row(i);
                for (std::size_t j = 0; j < r.row_words(); ++j) row[j] &= sw[j];
              }
              return r;
            }
            if (const auto* t = x.lhs.template as<node::Test>()) {
              const PointSet s = eval(ctx, t->formula);
              Relation r = denote(ctx, x.rhs);
              for (std::size_t i = 0; i < r.size(); ++i)
                if (!s.test(i)) {
                  auto* row = r.row(i);
                  for (std::size_t j = 0; j < r.row_words(); ++j) row[j] = 0;
                }
              return r;
            }
            return denote(ctx, x.lhs).compose(denote(ctx, x.rhs));
          } else if constexpr (std::is_same_v<T, node::Union>) {
            Relation r = denote(ctx, x.lhs);
            r |= denote(ctx, x.rhs);
            return r;
          } else {
            return denote(ctx, x.arg).star();
          }
        },
        pi.node().v);
  }

  EvalOptions opt_;
  std::size_t undefined_hits_ = 0;
};

}  // namespace efl

#include "efl/dynamics.hpp"
