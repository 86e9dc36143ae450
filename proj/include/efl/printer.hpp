#pragma once

// Canonical text for formulas and programs.  Output re-parses to the same
// tree: derived connectives are recognised by shape and printed in their
// abbreviated form.

#include <string>

#include "efl/syntax.hpp"

namespace efl {

std::string print_formula(const Formula& phi);
std::string print_program(const Program& pi);

namespace detail {

inline std::string print_transformation_body(const Transformation& t) {
  std::string out;
  for (std::size_t i = 0; i < t.assignments.size(); ++i) {
    const auto& a = t.assignments[i];
    if (i) out += ", ";
    switch (a.target.kind) {
      case Target::Kind::K: out += "K := " + print_program(a.program); break;
      case Target::Kind::F: out += "F := " + print_program(a.program); break;
      case Target::Kind::D: out += "D := " + print_program(a.program); break;
      default: out += a.target.name + " := " + print_formula(a.formula); break;
    }
  }
  return out;
}

inline std::string print_op(const DynamicOp& op) {
  if (const auto* t = std::get_if<Transformation>(&op)) {
    if (t->assignments.empty()) return "[I]";
    return "[" + print_transformation_body(*t) + "]";
  }
  const auto& g = std::get<GddlOperator>(op);
  std::string out = "[gddl";
  for (const auto& a : g.actions) out += " action " + a.id + " {" + print_transformation_body(a.effect) + "}";
  out += " actual " + g.actual;
  for (const auto& r : g.internal) {
    out += " " + r.token + " = {";
    for (std::size_t i = 0; i < r.pairs.size(); ++i)
      out += (i ? ", (" : "(") + r.pairs[i].first + ", " + r.pairs[i].second + ")";
    out += "}";
  }
  out += " integrate {" + print_transformation_body(g.integrate) + "}]";
  return out;
}

inline std::string print_sugar(const SugarForm& s) {
  switch (s.kind) {
    case SugarKind::sender_announce:
      return "[" + s.n + (s.is_private ? " <!! " : " <! ") + print_formula(s.psi) + " : " + print_formula(s.theta) +
             "] " + print_formula(s.cont);
    case SugarKind::receiver_announce:
      return "[" + s.n + (s.is_private ? " !!> " : " !> ") + print_formula(s.psi) + " : " + print_formula(s.theta) +
             "] " + print_formula(s.cont);
    case SugarKind::ask:
      return "[" + s.n + (s.is_private ? " ?? " : " ? ") + print_formula(s.psi) + " : " + s.m + "] " +
             print_formula(s.cont);
    case SugarKind::del_friend: return "[delF " + s.n + " " + s.m + "] " + print_formula(s.cont);
    case SugarKind::add_friend: return "[addF " + s.n + " " + s.m + "] " + print_formula(s.cont);
    case SugarKind::friend_request:
      return std::string("[request ") + (s.is_private ? "private " : "") + s.m + "] " + print_formula(s.cont);
    case SugarKind::common_know: return "[CK " + print_formula(s.theta) + "] " + print_formula(s.cont);
    case SugarKind::kbar: return "[Kbar " + s.n + "] " + print_formula(s.cont);
  }
  return {};
}

// Matches ~(a & ~b) and returns a, b.
inline bool match_implies(const Formula& f, Formula& a, Formula& b) {
  const auto* n = f.as<node::Not>();
  if (!n) return false;
  const auto* c = n->arg.as<node::And>();
  if (!c) return false;
  const auto* nb = c->rhs.as<node::Not>();
  if (!nb) return false;
  a = c->lhs;
  b = nb->arg;
  return true;
}

template <class T>
void flatten(const Program& p, std::vector<Program>& out) {
  if (const auto* x = p.as<T>()) {
    flatten<T>(x->lhs, out);
    out.push_back(x->rhs);
  } else {
    out.push_back(p);
  }
}

}  // namespace detail

inline std::string print_program(const Program& pi) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Base>) {
          return modality_name(n.modality);
        } else if constexpr (std::is_same_v<T, node::Internal>) {
          return n.token;
        } else if constexpr (std::is_same_v<T, node::Test>) {
          return print_formula(n.formula) + "?";
        } else if constexpr (std::is_same_v<T, node::Star>) {
          return print_program(n.arg) + "*";
        } else {
          std::vector<Program> parts;
          detail::flatten<T>(pi, parts);
          const char* sep = std::is_same_v<T, node::Seq> ? " ; " : " | ";
          std::string out = "(";
          for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += sep;
            out += print_program(parts[i]);
          }
          return out + ")";
        }
      },
      pi.node().v);
}

inline std::string print_formula(const Formula& phi) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Const>) {
          return n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, node::Prop> || std::is_same_v<T, node::Nom>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, node::Not>) {
          if (const auto* c = n.arg.template as<node::And>()) {
            const auto* l = c->lhs.template as<node::Not>();
            const auto* r = c->rhs.template as<node::Not>();
            if (l && r) return "(" + print_formula(l->arg) + " | " + print_formula(r->arg) + ")";
            if (r) return "(" + print_formula(c->lhs) + " -> " + print_formula(r->arg) + ")";
          }
          if (const auto* b = n.arg.template as<node::Box>()) {
            const auto* inner = b->arg.template as<node::Not>();
            const auto* nested = inner ? inner->arg.template as<node::Box>() : nullptr;
            if (inner && !(nested && nested->arg.template is<node::Not>()))
              return std::string("<") + modality_name(b->modality) + "> " + print_formula(inner->arg);
          }
          return "~" + print_formula(n.arg);
        } else if constexpr (std::is_same_v<T, node::And>) {
          Formula a1, b1, a2, b2;
          if (detail::match_implies(n.lhs, a1, b1) && detail::match_implies(n.rhs, a2, b2) && a1 == b2 && b1 == a2)
            return "(" + print_formula(a1) + " <-> " + print_formula(b1) + ")";
          return "(" + print_formula(n.lhs) + " & " + print_formula(n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, node::Box>) {
          return std::string(modality_name(n.modality)) + " " + print_formula(n.arg);
        } else if constexpr (std::is_same_v<T, node::ProgramBox>) {
          return "[[" + print_program(n.program) + "]] " + print_formula(n.arg);
        } else if constexpr (std::is_same_v<T, node::At>) {
          return "@" + n.nominal + " " + print_formula(n.arg);
        } else if constexpr (std::is_same_v<T, node::Down>) {
          return "down " + n.nominal + " . " + print_formula(n.arg);
        } else if constexpr (std::is_same_v<T, node::Dynamic>) {
          return detail::print_op(n.op) + " " + print_formula(n.arg);
        } else if constexpr (std::is_same_v<T, node::GroupCommon>) {
          std::string out = "C{";
          for (std::size_t i = 0; i < n.nominals.size(); ++i) out += (i ? "," : "") + n.nominals[i];
          return out + "} " + print_formula(n.arg);
        } else {
          return detail::print_sugar(n.form);
        }
      },
      phi.node().v);
}

}  // namespace efl
