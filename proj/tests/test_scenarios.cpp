#include <gtest/gtest.h>

#include "efl/efl.hpp"

using namespace efl;

TEST(Scenarios, AllModelsAreEfl) {
  for (const auto& name : scenario_names()) EXPECT_TRUE(validate(load_scenario(name).model).empty()) << name;
  EXPECT_THROW(load_scenario("nope"), ModelError);
}

TEST(Scenarios, Facts) {
  Evaluator ev;
  for (const auto& name : scenario_names()) {
    const Scenario s = load_scenario(name);
    for (const auto& f : s.facts)
      EXPECT_EQ(ev.satisfies(PointedModel{s.model, s.actual}, parse_for(s.model, f.formula)), f.expected)
          << name << ": " << f.formula;
  }
}

TEST(Scenarios, GoldenSuite) {
  for (const auto& g : golden_suite()) EXPECT_TRUE(g.run()) << g.name;
}

TEST(Scenarios, DangerIsSpyOrSpyFriend) {
  const Model m = scenario::spy();
  // Oracle: walk the friendship lists directly.
  for (std::size_t w = 0; w < m.num_worlds(); ++w)
    for (std::size_t a = 0; a < m.num_agents(); ++a) {
      bool danger = m.valuation("s").test(m.point(w, a));
      for (std::size_t b = 0; b < m.num_agents(); ++b)
        danger = danger || (m.friends(w, a, b) && m.valuation("s").test(m.point(w, b)));
      EXPECT_EQ(m.valuation("d").test(m.point(w, a)), danger) << w << a;
    }
  EXPECT_EQ(m.valuation("d").count(), 5u);
}

TEST(Scenarios, SpyRevelationLeavesOneLink) {
  const Model m = scenario::spy();
  const Model r = apply_trans(m, transformation({assign_k(cut_k(prop("d")))})).model;
  auto links = [](const Model& x) {
    std::size_t n = 0;
    x.knowledge().for_each_pair([&](std::size_t p, std::size_t q) { n += p < q; });
    return n;
  };
  EXPECT_EQ(links(m), 5u);
  EXPECT_EQ(links(r), 1u);
}

TEST(Scenarios, GossipPrivateTelling) {
  const Model m = scenario::gossip_after_gossip();
  Evaluator ev;
  const Formula f = parse_for(m, "[r <!! @p <F> m : r] (@r K @m K @r c & ~@m K @r K @m K @r c)");
  EXPECT_TRUE(ev.satisfies(m, "u", "r", f));
  // In the open, Mona learns that Roger knows.
  const Formula g = parse_for(m, "[r <! @p <F> m : <F> r] @m K @r K @p <F> m");
  EXPECT_TRUE(ev.satisfies(m, "u", "r", g));
}
