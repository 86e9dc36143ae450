#pragma once

// Random formulas and models shared by the property tests and the
// acceptance runner.

#include <random>
#include <string>
#include <vector>

#include "efl/efl.hpp"

namespace efl::testing {

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 0; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  std::vector<std::string> nominals{"a", "b", "c", "n"};
  std::vector<std::string> props{"p", "q"};
  /// Allow sugar, dynamic operators and binders.
  bool rich = true;

  Formula formula(int depth) {
    if (depth <= 0) return leaf();
    switch (below(rich ? 16 : 9)) {
      case 0: return leaf();
      case 1: return neg(formula(depth - 1));
      case 2: return conj(formula(depth - 1), formula(depth - 1));
      case 3: return disj(formula(depth - 1), formula(depth - 1));
      case 4: return implies(formula(depth - 1), formula(depth - 1));
      case 5: return box(modality(), formula(depth - 1));
      case 6: return diamond(modality(), formula(depth - 1));
      case 7: return at(pick(nominals), formula(depth - 1));
      case 8: return iff(formula(depth - 1), formula(depth - 1));
      case 9: return down(pick(nominals), formula(depth - 1));
      case 10: return pbox(program(depth - 1), formula(depth - 1));
      case 11: return dyn(transformation_op(depth - 1), formula(depth - 1));
      case 12: return dyn(gddl(depth - 1), formula(depth - 1));
      case 13: return group_common({pick(nominals), pick(nominals)}, formula(depth - 1));
      case 14: return sugar_form(depth - 1);
      default: return dyn(identity_transformation(), formula(depth - 1));
    }
  }

  Program program(int depth) {
    if (depth <= 0) return base(modality());
    switch (below(6)) {
      case 0: return base(modality());
      case 1: return test(formula(depth - 1));
      case 2: return seq(program(depth - 1), program(depth - 1));
      case 3: return choice(program(depth - 1), program(depth - 1));
      case 4: return star(program(depth - 1));
      default: return seq({program(depth - 1), program(depth - 1), program(depth - 1)});
    }
  }

  Transformation transformation_op(int depth) {
    std::vector<Assignment> as;
    if (coin()) as.push_back(assign_k(program(depth)));
    if (coin()) as.push_back(assign_f(program(depth)));
    if (below(4) == 0) as.push_back(assign_d(program(depth)));
    if (coin()) as.push_back(assign_prop(pick(props), formula(depth)));
    if (below(4) == 0) as.push_back(assign_nominal(pick(nominals), formula(depth)));
    if (as.empty()) as.push_back(assign_k(program(depth)));
    return transformation(std::move(as));
  }

  GddlOperator gddl(int depth) {
    GddlOperator g;
    g.actions.push_back({"d0", transformation_op(depth)});
    g.actions.push_back({"d1", coin() ? identity_transformation() : transformation_op(depth)});
    g.actual = coin() ? "d0" : "d1";
    g.internal.push_back({"K'", {{"d0", "d1"}, {"d1", "d0"}}});
    g.integrate = transformation({assign_k(star(choice(prog_k(), seq(test(formula(depth)), internal("K'")))))});
    return g;
  }

  Formula sugar_form(int depth) {
    SugarForm s;
    s.cont = formula(depth);
    switch (below(8)) {
      case 0:
      case 1:
        s.kind = below(2) ? SugarKind::sender_announce : SugarKind::receiver_announce;
        s.n = pick(nominals);
        s.psi = formula(depth);
        s.theta = formula(depth);
        s.is_private = coin();
        break;
      case 2:
        s.kind = SugarKind::ask;
        s.n = pick(nominals);
        s.m = pick(nominals);
        s.psi = formula(depth);
        s.is_private = coin();
        break;
      case 3:
        s.kind = SugarKind::del_friend;
        s.n = pick(nominals);
        s.m = pick(nominals);
        break;
      case 4:
        s.kind = SugarKind::add_friend;
        s.n = pick(nominals);
        s.m = pick(nominals);
        break;
      case 5:
        s.kind = SugarKind::friend_request;
        s.m = pick(nominals);
        s.is_private = coin();
        break;
      case 6:
        s.kind = SugarKind::common_know;
        s.theta = formula(depth);
        break;
      default:
        s.kind = SugarKind::kbar;
        s.n = pick(nominals);
        break;
    }
    return sugar(std::move(s));
  }

  /// Random EFL model; every nominal names some agent when `named`.
  Model model(std::size_t worlds, const std::vector<std::string>& agents, bool named, bool with_d = false) {
    std::vector<WorldId> ws;
    for (std::size_t w = 0; w < worlds; ++w) ws.push_back("w" + std::to_string(w));
    ModelBuilder b(ws, agents);
    for (const auto& a : agents)
      for (std::size_t w = 1; w < worlds; ++w)
        if (coin()) b.know(a, ws[below(w)], ws[w]);
    for (const auto& w : ws)
      for (std::size_t i = 0; i < agents.size(); ++i)
        for (std::size_t j = i + 1; j < agents.size(); ++j)
          if (coin()) b.friends(w, agents[i], agents[j]);
    if (with_d) {
      b.with_want_relation();
      for (const auto& w : ws)
        for (const auto& x : agents)
          for (const auto& y : agents)
            if (below(3) == 0) b.wants(w, x, y);
    }
    for (const auto& p : props) {
      b.prop(p);
      for (const auto& w : ws)
        for (const auto& a : agents)
          if (coin()) b.holds(p, w, a);
    }
    if (named) {
      for (std::size_t i = 0; i < agents.size(); ++i) b.name("_" + agents[i], agents[i]);
      for (const auto& n : nominals) b.name(n, pick(agents));
    }
    return b.build_valid();
  }

 private:
  Formula leaf() {
    switch (below(5)) {
      case 0: return coin() ? top() : bottom();
      case 1:
      case 2: return prop(pick(props));
      default: return nom(pick(nominals));
    }
  }
  Modality modality() {
    static const std::vector<Modality> ms{Modality::K, Modality::F, Modality::A, Modality::D};
    return rich ? pick(ms) : ms[below(3)];
  }

  std::mt19937 rng_;
};

inline NominalSet nominal_set(const std::vector<std::string>& v) { return NominalSet(v.begin(), v.end()); }

}  // namespace efl::testing
