#pragma once

// Derived operators: revelation programs, announcements (semi-private and
// private), questions, friendship change, friend requests and common
// knowledge.  All builders return ordinary formulas, programs or operators.

#include <string>
#include <vector>

#include "efl/ast_util.hpp"
#include "efl/syntax.hpp"

namespace efl {

// ---------------------------------------------------------------------------
// Programs

/// (φ? ; K ; φ?) ∪ (¬φ? ; K ; ¬φ?)
inline Program cut_k(const Formula& phi) {
  return choice(seq({test(phi), prog_k(), test(phi)}), seq({test(neg(phi)), prog_k(), test(neg(phi))}));
}

/// (¬n? ; F) ∪ (F ; ¬m?)
inline Program cut_f(const std::string& n, const std::string& m) {
  return choice(seq(test(neg(nom(n))), prog_f()), seq(prog_f(), test(neg(nom(m)))));
}

/// A ; n? ; K
inline Program kbar(const std::string& n) { return seq({prog_a(), test(nom(n)), prog_k()}); }

/// (A ; θ? ; K)* ; A ; θ?
inline Program ck(const Formula& theta) {
  return seq({star(seq({prog_a(), test(theta), prog_k()})), prog_a(), test(theta)});
}

// ---------------------------------------------------------------------------
// Announcements

/// send_θ(ψ) = [K := (θ? ; cut_K(ψ)) ∪ (¬θ? ; K)]
inline Transformation send(const Formula& theta, const Formula& psi) {
  return transformation({assign_k(choice(seq(test(theta), cut_k(psi)), seq(test(neg(theta)), prog_k())))});
}

/// Private wrapper: actions d0 (the given effect) and d1 (nothing happens),
/// K' linking them both ways, integrated by [K := (K ∪ (¬θ? ; K'))*].
inline GddlOperator private_operator(const Formula& theta, Transformation effect) {
  GddlOperator op;
  op.actions.push_back({"d0", std::move(effect)});
  op.actions.push_back({"d1", identity_transformation()});
  op.actual = "d0";
  op.internal.push_back({"K'", {{"d0", "d1"}, {"d1", "d0"}}});
  op.integrate = transformation({assign_k(star(choice(prog_k(), seq(test(neg(theta)), internal("K'")))))});
  return op;
}

inline DynamicOp send_op(const Formula& theta, const Formula& psi, bool is_private) {
  if (is_private) return private_operator(theta, send(theta, psi));
  return send(theta, psi);
}

/// [n ◁ ψ! : θ]φ = (@n Kψ → [send_θ(@n ψ)]φ)
inline Formula sender_announce(const std::string& n, const Formula& psi, const Formula& theta, const Formula& cont,
                               bool is_private = false) {
  return implies(at(n, know(psi)), dyn(send_op(theta, at(n, psi), is_private), cont));
}

enum class ReceiverPrecondition {
  /// @n K A(θ → ψ): the announcer knows the message holds of every receiver.
  sender_knows,
  /// @n A(θ → ψ): the message merely holds of every receiver.
  display,
};

/// [n : ψ! ▷ θ]φ = (@n K A(θ → ψ) → [send_θ(ψ)]φ)
inline Formula receiver_announce(const std::string& n, const Formula& psi, const Formula& theta, const Formula& cont,
                                 bool is_private = false,
                                 ReceiverPrecondition pre = ReceiverPrecondition::sender_knows) {
  Formula body = everyone(implies(theta, psi));
  if (pre == ReceiverPrecondition::sender_knows) body = know(body);
  return implies(at(n, body), dyn(send_op(theta, psi, is_private), cont));
}

// ---------------------------------------------------------------------------
// Questions

/// [n ◁ ψ? : m]φ: the conjunction of m's three possible answers to n.
inline Formula ask(const std::string& n, const Formula& psi, const std::string& m, const Formula& cont,
                   bool is_private = false) {
  const Formula to_n = nom(n);
  const Formula dont_know = neg(disj(know(psi), know(neg(psi))));
  return conj(conj(sender_announce(m, psi, to_n, cont, is_private), sender_announce(m, neg(psi), to_n, cont, is_private)),
              sender_announce(m, dont_know, to_n, cont, is_private));
}

// ---------------------------------------------------------------------------
// Network change

/// [-F n,m]φ = [F := cut_F(n,m)][F := cut_F(m,n)]φ
inline Formula delete_friend(const std::string& n, const std::string& m, const Formula& cont) {
  return dyn(transformation({assign_f(cut_f(n, m))}), dyn(transformation({assign_f(cut_f(m, n))}), cont));
}

/// [F := F ∪ (n? ; A ; m?) ∪ (m? ; A ; n?)]
inline Transformation add_friend_op(const std::string& n, const std::string& m) {
  return transformation({assign_f(choice(choice(prog_f(), seq({test(nom(n)), prog_a(), test(nom(m))})),
                                         seq({test(nom(m)), prog_a(), test(nom(n))})))});
}

inline Formula add_friend(const std::string& n, const std::string& m, const Formula& cont) {
  return dyn(add_friend_op(n, m), cont);
}

/// [add(m)]φ = ↓v [v ◁ <D>v? : m]((K @m <D>v ∧ [+F v,m]φ) ∨ (¬K @m <D>v ∧ φ)) with v fresh.
inline Formula friend_request(const std::string& m, const Formula& cont, bool is_private = false) {
  const std::string v = fresh_name(conj(cont, nom(m)));
  const Formula wants_me = diamond(Modality::D, nom(v));
  const Formula told_yes = know(at(m, wants_me));
  Formula after = disj(conj(told_yes, add_friend(v, m, cont)), conj(neg(told_yes), cont));
  return down(v, ask(v, wants_me, m, after, is_private));
}

// ---------------------------------------------------------------------------
// Sugar elimination

struct ExpandOptions {
  ReceiverPrecondition receiver_precondition = ReceiverPrecondition::sender_knows;
};

/// The core formula a single sugar form abbreviates (its parameters are
/// left unexpanded).
inline Formula desugar(const SugarForm& s, const ExpandOptions& opt = {}) {
  switch (s.kind) {
    case SugarKind::sender_announce: return sender_announce(s.n, s.psi, s.theta, s.cont, s.is_private);
    case SugarKind::receiver_announce:
      return receiver_announce(s.n, s.psi, s.theta, s.cont, s.is_private, opt.receiver_precondition);
    case SugarKind::ask: return ask(s.n, s.psi, s.m, s.cont, s.is_private);
    case SugarKind::del_friend: return delete_friend(s.n, s.m, s.cont);
    case SugarKind::add_friend: return add_friend(s.n, s.m, s.cont);
    case SugarKind::friend_request: return friend_request(s.m, s.cont, s.is_private);
    case SugarKind::common_know: return pbox(ck(s.theta), s.cont);
    case SugarKind::kbar: return pbox(kbar(s.n), s.cont);
  }
  return s.cont;
}

/// phi with every sugar node replaced by its definition.
inline Formula expand(const Formula& phi, const ExpandOptions& opt = {}) {
  Rewriter rw([&](Rewriter& self, const Formula& f) -> Formula {
    if (const auto* s = f.as<node::Sugar>()) return self(desugar(s->form, opt));
    return map_children(f, [&](const Formula& c) { return self(c); });
  });
  return rw(phi);
}

inline bool has_sugar(const Formula& phi) {
  bool found = false;
  for_each_subformula(phi, [&](const Formula& f) { found = found || f.is<node::Sugar>(); });
  return found;
}

/// Replaces every ↓n ψ by the disjunction over the given names m of
/// (m ∧ ψ[m/n]).  On a model where the names cover every agent this is
/// equivalent to the binder.
inline Formula expand_down(const Formula& phi, const std::vector<std::string>& names) {
  Rewriter rw([&](Rewriter& self, const Formula& f) -> Formula {
    if (const auto* d = f.as<node::Down>()) {
      Formula body = self(d->arg);
      Formula out;
      for (const auto& m : names) {
        Formula disjunct = conj(nom(m), substitute_nominal(body, d->nominal, m));
        out = out.valid() ? disj(out, disjunct) : disjunct;
      }
      return out.valid() ? out : bottom();
    }
    return map_children(f, [&](const Formula& c) { return self(c); });
  });
  return rw(phi);
}

}  // namespace efl
