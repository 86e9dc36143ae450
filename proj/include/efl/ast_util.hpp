#pragma once

// Generic traversal over formula and program trees.

#include <functional>
#include <set>
#include <string>
#include <unordered_map>

#include "efl/syntax.hpp"

namespace efl {

using FormulaFn = std::function<Formula(const Formula&)>;

namespace detail {

inline Transformation map_transformation(const Transformation& t, const FormulaFn& f,
                                         const std::function<Program(const Program&)>& p) {
  Transformation out;
  for (const auto& a : t.assignments) {
    Assignment b = a;
    if (a.program.valid()) b.program = p(a.program);
    if (a.formula.valid()) b.formula = f(a.formula);
    out.assignments.push_back(std::move(b));
  }
  return out;
}

}  // namespace detail

/// Applies f to every formula reachable from p without passing through
/// another formula (i.e. to the formulas inside tests).
inline Program map_program_formulas(const Program& p, const FormulaFn& f) {
  const auto& v = p.node().v;
  if (const auto* t = std::get_if<node::Test>(&v)) return test(f(t->formula));
  if (const auto* s = std::get_if<node::Seq>(&v))
    return seq(map_program_formulas(s->lhs, f), map_program_formulas(s->rhs, f));
  if (const auto* u = std::get_if<node::Union>(&v))
    return choice(map_program_formulas(u->lhs, f), map_program_formulas(u->rhs, f));
  if (const auto* s = std::get_if<node::Star>(&v)) return star(map_program_formulas(s->arg, f));
  return p;
}

/// Rebuilds phi with f applied to each immediate subformula, including
/// formulas inside programs, transformations and GDDL operators.
inline Formula map_children(const Formula& phi, const FormulaFn& f) {
  auto prog = [&](const Program& p) { return map_program_formulas(p, f); };
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Const> || std::is_same_v<T, node::Prop> ||
                      std::is_same_v<T, node::Nom>) {
          return phi;
        } else if constexpr (std::is_same_v<T, node::Not>) {
          return neg(f(n.arg));
        } else if constexpr (std::is_same_v<T, node::And>) {
          return conj(f(n.lhs), f(n.rhs));
        } else if constexpr (std::is_same_v<T, node::Box>) {
          return box(n.modality, f(n.arg));
        } else if constexpr (std::is_same_v<T, node::ProgramBox>) {
          return pbox(prog(n.program), f(n.arg));
        } else if constexpr (std::is_same_v<T, node::At>) {
          return at(n.nominal, f(n.arg));
        } else if constexpr (std::is_same_v<T, node::Down>) {
          return down(n.nominal, f(n.arg));
        } else if constexpr (std::is_same_v<T, node::Dynamic>) {
          if (const auto* t = std::get_if<Transformation>(&n.op))
            return dyn(detail::map_transformation(*t, f, prog), f(n.arg));
          GddlOperator g = std::get<GddlOperator>(n.op);
          for (auto& a : g.actions) a.effect = detail::map_transformation(a.effect, f, prog);
          g.integrate = detail::map_transformation(g.integrate, f, prog);
          return dyn(std::move(g), f(n.arg));
        } else if constexpr (std::is_same_v<T, node::GroupCommon>) {
          return group_common(n.nominals, f(n.arg));
        } else {
          SugarForm s = n.form;
          if (s.psi.valid()) s.psi = f(s.psi);
          if (s.theta.valid()) s.theta = f(s.theta);
          if (s.cont.valid()) s.cont = f(s.cont);
          return sugar(std::move(s));
        }
      },
      phi.node().v);
}

/// Calls visit on every formula node (pre-order), descending into programs.
inline void for_each_subformula(const Formula& phi, const std::function<void(const Formula&)>& visit) {
  visit(phi);
  map_children(phi, [&](const Formula& c) {
    for_each_subformula(c, visit);
    return c;
  });
}

/// Every identifier occurring anywhere in phi: propositions, nominals,
/// assignment targets, sugar parameters, GDDL action ids.
inline std::set<std::string> identifiers(const Formula& phi) {
  std::set<std::string> out;
  for_each_subformula(phi, [&](const Formula& f) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, node::Prop> || std::is_same_v<T, node::Nom>) {
            out.insert(n.name);
          } else if constexpr (std::is_same_v<T, node::At> || std::is_same_v<T, node::Down>) {
            out.insert(n.nominal);
          } else if constexpr (std::is_same_v<T, node::GroupCommon>) {
            out.insert(n.nominals.begin(), n.nominals.end());
          } else if constexpr (std::is_same_v<T, node::Sugar>) {
            if (!n.form.n.empty()) out.insert(n.form.n);
            if (!n.form.m.empty()) out.insert(n.form.m);
          } else if constexpr (std::is_same_v<T, node::Dynamic>) {
            auto targets = [&](const Transformation& t) {
              for (const auto& a : t.assignments)
                if (!a.target.name.empty()) out.insert(a.target.name);
            };
            if (const auto* t = std::get_if<Transformation>(&n.op)) {
              targets(*t);
            } else {
              const auto& g = std::get<GddlOperator>(n.op);
              for (const auto& a : g.actions) {
                out.insert(a.id);
                targets(a.effect);
              }
              targets(g.integrate);
            }
          }
        },
        f.node().v);
  });
  return out;
}

/// A name of the form prefix + k that does not occur in phi.
inline std::string fresh_name(const Formula& phi, const std::string& prefix = "_v") {
  const auto used = identifiers(phi);
  for (std::size_t k = 0;; ++k) {
    std::string s = prefix + std::to_string(k);
    if (!used.count(s)) return s;
  }
}

/// phi with free occurrences of nominal n replaced by nominal m.  Occurrences
/// under a binder ↓n are left alone; the caller must ensure m is not captured.
inline Formula substitute_nominal(const Formula& phi, const std::string& n, const std::string& m) {
  auto rn = [&](const std::string& s) { return s == n ? m : s; };
  auto rec = [&](const Formula& c) { return substitute_nominal(c, n, m); };
  if (const auto* x = phi.as<node::Nom>()) return x->name == n ? nom(m) : phi;
  if (const auto* x = phi.as<node::Down>()) {
    if (x->nominal == n) return phi;
    return down(x->nominal, rec(x->arg));
  }
  if (const auto* x = phi.as<node::At>()) return at(rn(x->nominal), rec(x->arg));
  if (const auto* x = phi.as<node::GroupCommon>()) {
    std::vector<std::string> g;
    for (const auto& s : x->nominals) g.push_back(rn(s));
    return group_common(std::move(g), rec(x->arg));
  }
  if (const auto* x = phi.as<node::Sugar>()) {
    SugarForm s = x->form;
    s.n = s.n.empty() ? s.n : rn(s.n);
    s.m = s.m.empty() ? s.m : rn(s.m);
    if (s.psi.valid()) s.psi = rec(s.psi);
    if (s.theta.valid()) s.theta = rec(s.theta);
    if (s.cont.valid()) s.cont = rec(s.cont);
    return sugar(std::move(s));
  }
  if (const auto* x = phi.as<node::Dynamic>()) {
    // Assignments to the nominal itself rebind it for the continuation.
    auto assigns_n = [&](const Transformation& t) {
      for (const auto& a : t.assignments)
        if (a.target.kind == Target::Kind::nominal && a.target.name == n) return true;
      return false;
    };
    bool rebinds = false;
    if (const auto* t = std::get_if<Transformation>(&x->op)) {
      rebinds = assigns_n(*t);
    } else {
      const auto& g = std::get<GddlOperator>(x->op);
      rebinds = assigns_n(g.integrate);
      for (const auto& a : g.actions) rebinds = rebinds || assigns_n(a.effect);
    }
    if (rebinds) {
      Formula mapped = map_children(phi, rec);
      return dyn(mapped.as<node::Dynamic>()->op, x->arg);
    }
  }
  return map_children(phi, rec);
}

/// Memoized bottom-up rewrite keyed on node identity, preserving sharing.
class Rewriter {
 public:
  explicit Rewriter(std::function<Formula(Rewriter&, const Formula&)> rule) : rule_(std::move(rule)) {}
  Formula operator()(const Formula& phi) {
    auto it = memo_.find(phi.get());
    if (it != memo_.end()) return it->second;
    Formula out = rule_(*this, phi);
    memo_.emplace(phi.get(), out);
    keep_.push_back(phi);
    return out;
  }

 private:
  std::function<Formula(Rewriter&, const Formula&)> rule_;
  std::unordered_map<const FormulaNode*, Formula> memo_;
  std::vector<Formula> keep_;
};

}  // namespace efl
