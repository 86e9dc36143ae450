#pragma once

// The worked examples: two small models, the spy network and the gossip
// network, with their facts and the checks that replay them.

#include <functional>
#include <string>
#include <vector>

#include "efl/engine.hpp"
#include "efl/model.hpp"
#include "efl/parser.hpp"
#include "efl/social.hpp"

namespace efl {

struct Fact {
  std::string formula;
  bool expected = true;
  std::string gloss;
};

struct Scenario {
  std::string name;
  Model model;
  Point actual;
  std::vector<Fact> facts;
};

inline NominalSet nominals_of(const Model& m) {
  NominalSet out;
  for (const auto& [n, a] : m.names()) out.insert(n);
  return out;
}

inline Formula parse_for(const Model& m, const std::string& text) { return parse_formula(text, nominals_of(m)); }

namespace scenario {

inline Model fig1() {
  return ModelBuilder({"u0", "u1"}, {"a", "b"})
      .know("a", "u0", "u1")
      .know("b", "u0", "u1")
      .friends_everywhere("a", "b")
      .holds("p", "u0", "a")
      .name("n", "a")
      .build_valid();
}

inline Model fig2() {
  return ModelBuilder({"u0", "u1"}, {"a", "b"})
      .know("a", "u0", "u1")
      .know("b", "u0", "u1")
      .friends_everywhere("a", "b")
      .holds("p", "u0", "a")
      .self_named()
      .build_valid();
}

/// fig2 after [K := (a? ; K) | true?]: b's links are gone.
inline Model fig2_after() {
  return ModelBuilder({"u0", "u1"}, {"a", "b"})
      .know("a", "u0", "u1")
      .friends_everywhere("a", "b")
      .holds("p", "u0", "a")
      .self_named()
      .build_valid();
}

/// Spy network before the revelation.  u0: Erik is the spy (actual),
/// u1: nobody is, u2: Bella is.  d is stored as a proposition holding
/// exactly where (s | <F> s) does.
inline Model spy_with_links(const std::vector<std::vector<std::string>>& kb,
                            const std::vector<std::vector<std::string>>& kc,
                            const std::vector<std::vector<std::string>>& ke) {
  ModelBuilder b({"u0", "u1", "u2"}, {"b", "c", "e"});
  b.friends_everywhere("b", "c").friends_everywhere("b", "e");
  b.holds("s", "u0", "e").holds("s", "u2", "b").prop("d");
  for (const auto& cell : kb) b.know_cell("b", cell);
  for (const auto& cell : kc) b.know_cell("c", cell);
  for (const auto& cell : ke) b.know_cell("e", cell);
  b.self_named();
  Model m = b.build_valid();
  Evaluator ev;
  m.set_valuation("d", ev.eval(m, disj(prop("s"), some_friend(prop("s")))));
  return m;
}

inline Model spy() { return spy_with_links({{"u0", "u1"}}, {{"u0", "u1", "u2"}}, {{"u1", "u2"}}); }

/// Expected result of [K := cutK(d)] on the spy model.
inline Model spy_revealed() { return spy_with_links({}, {{"u0", "u1"}}, {}); }

/// Expected result of send_<F>b(d): only Charlie and Erik learn.
inline Model spy_after_send() { return spy_with_links({{"u0", "u1"}}, {{"u0", "u1"}}, {}); }

/// Gossip network.  Worlds: u (cheating, Peggy-Mona friends; actual),
/// v (cheating, not friends), s (no cheating, friends), t (neither).
inline Model gossip() {
  return ModelBuilder({"u", "v", "s", "t"}, {"p", "r", "m"})
      .friends_everywhere("r", "m")
      .friends("u", "p", "m")
      .friends("s", "p", "m")
      .holds("c", "u", "r")
      .holds("c", "v", "r")
      .know("r", "u", "v")
      .know("r", "s", "t")
      .know("m", "u", "s")
      .know("m", "v", "t")
      .self_named()
      .build_valid();
}

/// After Peggy tells her friends that Roger is cheating.
inline Model gossip_after_gossip() {
  return ModelBuilder({"u", "v", "s", "t"}, {"p", "r", "m"})
      .friends_everywhere("r", "m")
      .friends("u", "p", "m")
      .friends("s", "p", "m")
      .holds("c", "u", "r")
      .holds("c", "v", "r")
      .know("r", "u", "v")
      .know("r", "s", "t")
      .know("m", "v", "t")
      .self_named()
      .build_valid();
}

}  // namespace scenario

inline std::vector<std::string> scenario_names() { return {"fig1", "fig2", "spy", "gossip"}; }

inline Scenario load_scenario(const std::string& name) {
  if (name == "fig1") {
    Model m = scenario::fig1();
    return {name, m, {0, 0}, {{"(p & n)", true, "a is p"}, {"K <F> p", false, "a cannot rule out u1, where her friend is not p"}}};
  }
  if (name == "fig2") {
    Model m = scenario::fig2();
    return {name,
            m,
            {0, 1},
            {{"(K ~p & ~K <F> p)", true, "b knows she is not p but not whether a friend is"},
             {"[K := (a? ; K) | true?] K <F> p", true, "after the change b knows she has a friend who is p"}}};
  }
  if (name == "spy") {
    Model m = scenario::spy();
    return {name,
            m,
            {0, 0},
            {{"@b (K ~s & ~K <F> s)", true, "Bella knows she is not a spy, not whether a friend is"},
             {"@b (d & ~K d)", true, "Bella is in danger but doesn't know it"},
             {"@b K @c ~d", true, "Bella knows that Charlie is not in danger"},
             {"[K := cutK(d)] @b K d", true, "Bella finds out that she is in danger"},
             {"[K := cutK(d)] @c K ~d", true, "Charlie finds out that he is not in danger"},
             {"[K := cutK(d)] A (K d | K ~d)", true, "everyone knows whether they are in danger"},
             {"[K := (<F> b? ; cutK(d)) | (~<F> b? ; K)] K @c K ~d", true,
              "after Bella's friends learn, Bella knows Charlie knows"},
             {"[e <! s : true] A K @e s", true, "everyone would know Erik is a spy"},
             {"[b <! s : true] A K @b s", true, "vacuous: Bella cannot announce it"}}};
  }
  if (name == "gossip") {
    Model m = scenario::gossip();
    return {name,
            m,
            {0, 1},
            {{"c", true, "I'm cheating"},
             {"down n . K (@p K @n c & @m ~K @n c)", true, "I know that Peggy (but not Mona) knows I am cheating"},
             {"down n . @p K @n K @p K @n c", true, "Peggy knows I know she knows I am cheating"},
             {"(~K @m <F> p & ~K @m ~<F> p)", true, "I don't know whether Peggy and Mona are friends"},
             {"down n . @p K @n ~K @m <F> p", true, "Peggy knows I don't know whether she and Mona are friends"},
             {"down n . [p <! @n c : <F> p] @m K @n c", true, "display reading of the gossip consequence"},
             {"down n . ~K [p <! @n c : <F> p] @m K @n c", true,
              "I don't know that Mona will know after Peggy tells her friends"},
             {"[delF m p] down n . [p <! @n c : <F> p] @m ~K @n c", true,
              "after Peggy loses Mona as a friend, Mona won't know"}}};
  }
  throw ModelError("unknown scenario '" + name + "'");
}

struct GoldenCheck {
  std::string name;
  std::function<bool()> run;
};

/// Checks against the hand-built models, each true on exact reproduction.
inline std::vector<GoldenCheck> golden_suite() {
  std::vector<GoldenCheck> out;
  for (const auto& name : scenario_names()) {
    out.push_back({name + ": model is valid", [name] { return validate(load_scenario(name).model).empty(); }});
    out.push_back({name + ": facts", [name] {
                     Scenario s = load_scenario(name);
                     Evaluator ev;
                     for (const auto& f : s.facts)
                       if (ev.satisfies(PointedModel{s.model, s.actual}, parse_for(s.model, f.formula)) != f.expected)
                         return false;
                     return true;
                   }});
  }
  const std::map<WorldId, WorldId> id2{{"u0", "u0"}, {"u1", "u1"}};
  const std::map<WorldId, WorldId> id3{{"u0", "u0"}, {"u1", "u1"}, {"u2", "u2"}};
  const std::map<AgentId, AgentId> ab{{"a", "a"}, {"b", "b"}};
  const std::map<AgentId, AgentId> bce{{"b", "b"}, {"c", "c"}, {"e", "e"}};
  out.push_back({"fig2: transformed model", [=] {
                   Model m = scenario::fig2();
                   const Formula f = parse_for(m, "[K := (a? ; K) | true?] true");
                   auto r = apply_trans(m, std::get<Transformation>(f.as<node::Dynamic>()->op));
                   return equal_modulo_iso(r.model, scenario::fig2_after(), id2, ab);
                 }});
  out.push_back({"spy: revelation cuts exactly three links", [=] {
                   Model m = scenario::spy();
                   auto r = apply_trans(m, transformation({assign_k(cut_k(prop("d")))}));
                   return equal_modulo_iso(r.model, scenario::spy_revealed(), id3, bce);
                 }});
  out.push_back({"spy: send to Bella's friends changes only k_c and k_e", [=] {
                   Model m = scenario::spy();
                   auto r = apply_trans(m, send(some_friend(nom("b")), prop("d")));
                   return equal_modulo_iso(r.model, scenario::spy_after_send(), id3, bce);
                 }});
  out.push_back({"spy: common knowledge among Erik's friends after revelation", [] {
                   Model m = apply_trans(scenario::spy(), transformation({assign_k(cut_k(prop("d")))})).model;
                   Evaluator ev;
                   for (const char* f : {"[[ck(<F> e)]] d", "@e F K d", "@e F K @e F K d"})
                     for (std::size_t a = 0; a < m.num_agents(); ++a)
                       if (!ev.eval(m, parse_for(m, f)).test(m.point(0, a))) return false;
                   return true;
                 }});
  out.push_back({"gossip: Peggy's gossip reaches Mona", [] {
                   Model m = scenario::gossip();
                   auto r = apply_trans(m, send(some_friend(nom("p")), at("r", prop("c"))));
                   const std::map<WorldId, WorldId> w{{"u", "u"}, {"v", "v"}, {"s", "s"}, {"t", "t"}};
                   const std::map<AgentId, AgentId> a{{"p", "p"}, {"r", "r"}, {"m", "m"}};
                   return equal_modulo_iso(r.model, scenario::gossip_after_gossip(), w, a);
                 }});
  out.push_back({"gossip: private telling lets Roger meet Mona prepared", [] {
                   Model m = scenario::gossip_after_gossip();
                   auto op = private_operator(nom("r"), send(nom("r"), at("p", some_friend(nom("m")))));
                   auto r = apply_gddl(m, op);
                   Evaluator ev;
                   const Point q = r.map(m, {0, 1});
                   return ev.satisfies(PointedModel{r.model, q},
                                       parse_for(m, "(@r K @m K @r c & ~@m K @r K @m K @r c)"));
                 }});
  return out;
}

}  // namespace efl
