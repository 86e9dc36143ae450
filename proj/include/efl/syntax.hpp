#pragma once

// Abstract syntax for dynamic epistemic friendship formulas and PDL program
// terms.  Nodes are immutable and shared; Formula and Program are cheap
// handles.  Derived connectives (|, ->, <->, diamonds) are not nodes: the
// builders below produce their core expansions.

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace efl {

struct FormulaNode;
struct ProgramNode;

class Formula {
 public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}

  const FormulaNode& node() const { return *node_; }
  const FormulaNode* get() const { return node_.get(); }
  bool valid() const { return node_ != nullptr; }
  /// Number of handles sharing this node; >1 means the subterm is reused.
  long use_count() const { return node_.use_count(); }

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const {
    return as<T>() != nullptr;
  }

 private:
  std::shared_ptr<const FormulaNode> node_;
};

class Program {
 public:
  Program() = default;
  explicit Program(std::shared_ptr<const ProgramNode> n) : node_(std::move(n)) {}

  const ProgramNode& node() const { return *node_; }
  const ProgramNode* get() const { return node_.get(); }
  bool valid() const { return node_ != nullptr; }

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const {
    return as<T>() != nullptr;
  }

 private:
  std::shared_ptr<const ProgramNode> node_;
};

enum class Modality { K, F, A, D };

inline const char* modality_name(Modality m) {
  switch (m) {
    case Modality::K: return "K";
    case Modality::F: return "F";
    case Modality::A: return "A";
    case Modality::D: return "D";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Dynamic operators

/// Target of one assignment in a PDL-transformation.
struct Target {
  enum class Kind { K, F, D, prop, nominal };
  Kind kind = Kind::K;
  std::string name;  // for prop / nominal
  friend bool operator==(const Target&, const Target&) = default;
};

struct Assignment {
  Target target;
  Program program;  // relation targets
  Formula formula;  // prop and nominal targets
};

/// Simultaneous reassignment of basic relations, propositions and nominals.
/// The empty transformation is the identity I.
struct Transformation {
  std::vector<Assignment> assignments;
};

/// Finite action structure with per-action transformations, internal
/// relations between actions, a designated actual action and an
/// integrating transformation applied to the product.
struct GddlOperator {
  struct Action {
    std::string id;
    Transformation effect;
  };
  struct InternalRelation {
    std::string token;  // e.g. "K'"
    std::vector<std::pair<std::string, std::string>> pairs;
  };
  std::vector<Action> actions;
  std::string actual;
  std::vector<InternalRelation> internal;
  Transformation integrate;
};

using DynamicOp = std::variant<Transformation, GddlOperator>;

// ---------------------------------------------------------------------------
// Sugar forms (eliminated by expand())

enum class SugarKind {
  sender_announce,    // [n <! psi : theta] cont
  receiver_announce,  // [n !> psi : theta] cont
  ask,                // [n ? psi : m] cont      (n asks m)
  del_friend,         // [delF n m] cont
  add_friend,         // [addF n m] cont
  friend_request,     // [request m] cont
  common_know,        // [CK theta] cont
  kbar,               // [Kbar n] cont
};

struct SugarForm {
  SugarKind kind = SugarKind::sender_announce;
  std::string n;
  std::string m;
  Formula psi;
  Formula theta;
  bool is_private = false;
  Formula cont;
};

// ---------------------------------------------------------------------------
// Formula nodes

namespace node {
struct Const {
  bool value;
};
struct Prop {
  std::string name;
};
struct Nom {
  std::string name;
};
struct Not {
  Formula arg;
};
struct And {
  Formula lhs, rhs;
};
struct Box {
  Modality modality;
  Formula arg;
};
/// [pi] phi for an arbitrary program term.
struct ProgramBox {
  Program program;
  Formula arg;
};
struct At {
  std::string nominal;
  Formula arg;
};
struct Down {
  std::string nominal;
  Formula arg;
};
struct Dynamic {
  DynamicOp op;
  Formula arg;
};
/// Classic group common knowledge: truth at every world reachable through
/// the union of the members' k relations, for the evaluating agent.
struct GroupCommon {
  std::vector<std::string> nominals;
  Formula arg;
};
struct Sugar {
  SugarForm form;
};

// Program nodes
struct Base {
  Modality modality;
};
struct Internal {
  std::string token;
};
struct Test {
  Formula formula;
};
struct Seq {
  Program lhs, rhs;
};
struct Union {
  Program lhs, rhs;
};
struct Star {
  Program arg;
};
}  // namespace node

struct FormulaNode {
  std::variant<node::Const, node::Prop, node::Nom, node::Not, node::And, node::Box, node::ProgramBox, node::At,
               node::Down, node::Dynamic, node::GroupCommon, node::Sugar>
      v;
};

struct ProgramNode {
  std::variant<node::Base, node::Internal, node::Test, node::Seq, node::Union, node::Star> v;
};

template <class T>
const T* Formula::as() const {
  return node_ ? std::get_if<T>(&node_->v) : nullptr;
}
template <class T>
const T* Program::as() const {
  return node_ ? std::get_if<T>(&node_->v) : nullptr;
}

// ---------------------------------------------------------------------------
// Builders

namespace detail {
template <class T>
Formula make_formula(T&& t) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{std::forward<T>(t)}));
}
template <class T>
Program make_program(T&& t) {
  return Program(std::make_shared<const ProgramNode>(ProgramNode{std::forward<T>(t)}));
}
}  // namespace detail

inline Formula top() { return detail::make_formula(node::Const{true}); }
inline Formula bottom() { return detail::make_formula(node::Const{false}); }
inline Formula prop(std::string name) { return detail::make_formula(node::Prop{std::move(name)}); }
inline Formula nom(std::string name) { return detail::make_formula(node::Nom{std::move(name)}); }
inline Formula neg(Formula f) { return detail::make_formula(node::Not{std::move(f)}); }
inline Formula conj(Formula a, Formula b) { return detail::make_formula(node::And{std::move(a), std::move(b)}); }
inline Formula disj(Formula a, Formula b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }
inline Formula implies(Formula a, Formula b) { return neg(conj(std::move(a), neg(std::move(b)))); }
inline Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }
inline Formula box(Modality m, Formula f) { return detail::make_formula(node::Box{m, std::move(f)}); }
inline Formula diamond(Modality m, Formula f) { return neg(box(m, neg(std::move(f)))); }
inline Formula know(Formula f) { return box(Modality::K, std::move(f)); }
inline Formula all_friends(Formula f) { return box(Modality::F, std::move(f)); }
inline Formula everyone(Formula f) { return box(Modality::A, std::move(f)); }
inline Formula some_friend(Formula f) { return diamond(Modality::F, std::move(f)); }
inline Formula pbox(Program p, Formula f) { return detail::make_formula(node::ProgramBox{std::move(p), std::move(f)}); }
inline Formula at(std::string n, Formula f) { return detail::make_formula(node::At{std::move(n), std::move(f)}); }
inline Formula down(std::string n, Formula f) { return detail::make_formula(node::Down{std::move(n), std::move(f)}); }
inline Formula dyn(DynamicOp op, Formula f) { return detail::make_formula(node::Dynamic{std::move(op), std::move(f)}); }
inline Formula group_common(std::vector<std::string> nominals, Formula f) {
  return detail::make_formula(node::GroupCommon{std::move(nominals), std::move(f)});
}
inline Formula sugar(SugarForm s) { return detail::make_formula(node::Sugar{std::move(s)}); }

inline Program base(Modality m) { return detail::make_program(node::Base{m}); }
inline Program prog_k() { return base(Modality::K); }
inline Program prog_f() { return base(Modality::F); }
inline Program prog_a() { return base(Modality::A); }
inline Program prog_d() { return base(Modality::D); }
inline Program internal(std::string token) { return detail::make_program(node::Internal{std::move(token)}); }
inline Program test(Formula f) { return detail::make_program(node::Test{std::move(f)}); }
inline Program seq(Program a, Program b) { return detail::make_program(node::Seq{std::move(a), std::move(b)}); }
inline Program seq(std::initializer_list<Program> ps) {
  Program out;
  for (const auto& p : ps) out = out.valid() ? seq(out, p) : p;
  return out;
}
inline Program choice(Program a, Program b) { return detail::make_program(node::Union{std::move(a), std::move(b)}); }
inline Program star(Program a) { return detail::make_program(node::Star{std::move(a)}); }

inline Assignment assign_k(Program p) { return {{Target::Kind::K, {}}, std::move(p), {}}; }
inline Assignment assign_f(Program p) { return {{Target::Kind::F, {}}, std::move(p), {}}; }
inline Assignment assign_d(Program p) { return {{Target::Kind::D, {}}, std::move(p), {}}; }
inline Assignment assign_prop(std::string p, Formula f) { return {{Target::Kind::prop, std::move(p)}, {}, std::move(f)}; }
inline Assignment assign_nominal(std::string n, Formula f) {
  return {{Target::Kind::nominal, std::move(n)}, {}, std::move(f)};
}
inline Transformation transformation(std::vector<Assignment> as) { return Transformation{std::move(as)}; }
inline Transformation identity_transformation() { return Transformation{}; }

// ---------------------------------------------------------------------------
// Structural equality

bool operator==(const Formula& a, const Formula& b);
bool operator==(const Program& a, const Program& b);

inline bool operator==(const Assignment& a, const Assignment& b) {
  if (!(a.target == b.target)) return false;
  if (a.program.valid() != b.program.valid() || a.formula.valid() != b.formula.valid()) return false;
  if (a.program.valid() && !(a.program == b.program)) return false;
  if (a.formula.valid() && !(a.formula == b.formula)) return false;
  return true;
}
inline bool operator==(const Transformation& a, const Transformation& b) { return a.assignments == b.assignments; }
inline bool operator==(const GddlOperator::Action& a, const GddlOperator::Action& b) {
  return a.id == b.id && a.effect == b.effect;
}
inline bool operator==(const GddlOperator::InternalRelation& a, const GddlOperator::InternalRelation& b) {
  return a.token == b.token && a.pairs == b.pairs;
}
inline bool operator==(const GddlOperator& a, const GddlOperator& b) {
  return a.actions == b.actions && a.actual == b.actual && a.internal == b.internal && a.integrate == b.integrate;
}
inline bool operator==(const SugarForm& a, const SugarForm& b) {
  auto same = [](const Formula& x, const Formula& y) { return x.valid() == y.valid() && (!x.valid() || x == y); };
  return a.kind == b.kind && a.n == b.n && a.m == b.m && a.is_private == b.is_private && same(a.psi, b.psi) &&
         same(a.theta, b.theta) && same(a.cont, b.cont);
}

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a.valid() || !b.valid()) return false;
  const auto& x = a.node().v;
  const auto& y = b.node().v;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& l) -> bool {
        using T = std::decay_t<decltype(l)>;
        const auto& r = std::get<T>(y);
        if constexpr (std::is_same_v<T, node::Const>) {
          return l.value == r.value;
        } else if constexpr (std::is_same_v<T, node::Prop> || std::is_same_v<T, node::Nom>) {
          return l.name == r.name;
        } else if constexpr (std::is_same_v<T, node::Not>) {
          return l.arg == r.arg;
        } else if constexpr (std::is_same_v<T, node::And>) {
          return l.lhs == r.lhs && l.rhs == r.rhs;
        } else if constexpr (std::is_same_v<T, node::Box>) {
          return l.modality == r.modality && l.arg == r.arg;
        } else if constexpr (std::is_same_v<T, node::ProgramBox>) {
          return l.program == r.program && l.arg == r.arg;
        } else if constexpr (std::is_same_v<T, node::At> || std::is_same_v<T, node::Down>) {
          return l.nominal == r.nominal && l.arg == r.arg;
        } else if constexpr (std::is_same_v<T, node::Dynamic>) {
          return l.op == r.op && l.arg == r.arg;
        } else if constexpr (std::is_same_v<T, node::GroupCommon>) {
          return l.nominals == r.nominals && l.arg == r.arg;
        } else {
          return l.form == r.form;
        }
      },
      x);
}

inline bool operator==(const Program& a, const Program& b) {
  if (a.get() == b.get()) return true;
  if (!a.valid() || !b.valid()) return false;
  const auto& x = a.node().v;
  const auto& y = b.node().v;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& l) -> bool {
        using T = std::decay_t<decltype(l)>;
        const auto& r = std::get<T>(y);
        if constexpr (std::is_same_v<T, node::Base>) {
          return l.modality == r.modality;
        } else if constexpr (std::is_same_v<T, node::Internal>) {
          return l.token == r.token;
        } else if constexpr (std::is_same_v<T, node::Test>) {
          return l.formula == r.formula;
        } else if constexpr (std::is_same_v<T, node::Seq> || std::is_same_v<T, node::Union>) {
          return l.lhs == r.lhs && l.rhs == r.rhs;
        } else {
          return l.arg == r.arg;
        }
      },
      x);
}

}  // namespace efl
