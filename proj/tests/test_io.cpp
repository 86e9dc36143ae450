#include <gtest/gtest.h>

#include <regex>

#include "efl/efl.hpp"

using namespace efl;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++n;
  return n;
}

std::map<std::string, std::string> identity_of(const std::vector<std::string>& v) {
  std::map<std::string, std::string> out;
  for (const auto& x : v) out[x] = x;
  return out;
}

}  // namespace

TEST(ModelFile, RoundTrip) {
  for (const auto& name : scenario_names()) {
    const Scenario s = load_scenario(name);
    const ModelFile back = parse_model(format_model(s.model, s.actual));
    EXPECT_TRUE(equal_modulo_iso(s.model, back.model, identity_of(s.model.worlds()), identity_of(s.model.agents())))
        << name;
    ASSERT_TRUE(back.actual.has_value());
    EXPECT_EQ(back.actual->world, s.actual.world);
    EXPECT_EQ(back.actual->agent, s.actual.agent);
    EXPECT_EQ(format_model(back.model, back.actual), format_model(s.model, s.actual));
  }
}

TEST(ModelFile, GeneratorsAreClosed) {
  const ModelFile f = parse_model(R"({
    "worlds": ["u0", "u1", "u2"], "agents": ["a", "b"],
    "k": {"a": [["u0", "u1"], ["u1", "u2"]]},
    "f": {"u1": [["b", "a"]]},
    "val": {"p": [["u2", "b"]]}
  })");
  EXPECT_TRUE(f.model.knows_link(0, 2, 0));
  EXPECT_TRUE(f.model.friends(1, 0, 1));
  EXPECT_FALSE(f.model.friends(0, 0, 1));
  EXPECT_FALSE(f.actual.has_value());
  EXPECT_TRUE(f.model.valuation("p").test(f.model.point(2, 1)));
}

TEST(ModelFile, Errors) {
  EXPECT_THROW(parse_model(R"({"worlds": ["u"], "agents": ["a"], "f": {"u": [["a", "a"]]}})"), ModelError);
  EXPECT_THROW(parse_model(R"({"worlds": ["u"], "agents": ["a"], "k": {"z": []}})"), ModelError);
  EXPECT_THROW(parse_model(R"({"agents": ["a"]})"), ModelError);
  EXPECT_THROW(parse_model(R"({"worlds": ["u"], "agents": ["a"], "actual": ["v", "a"]})"), ModelError);
  try {
    parse_model("{\n  \"worlds\": [\"u\"],\n  \"agents\": [\"a\"] oops\n}");
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("3:"), std::string::npos) << e.what();
  }
}

TEST(ModelFile, WantRelationSurvives) {
  const Model m = ModelBuilder({"u0"}, {"a", "b"}).wants("u0", "a", "b").build_valid();
  const ModelFile back = parse_model(format_model(m));
  EXPECT_TRUE(back.model.has_want());
  EXPECT_TRUE(back.model.wants(0, 0, 1));
  EXPECT_FALSE(back.model.wants(0, 1, 0));
}

TEST(Dot, SmallModel) {
  const std::string dot = format_dot(scenario::fig1());
  const std::regex node(R"(\"[^"]+\" \[label=)");
  EXPECT_EQ(std::distance(std::sregex_iterator(dot.begin(), dot.end(), node), std::sregex_iterator()), 4);
  EXPECT_EQ(count(dot, "style=solid"), 2u);
  EXPECT_EQ(count(dot, "style=dotted"), 2u);
  EXPECT_EQ(count(dot, "\\np"), 1u);
  EXPECT_EQ(count(dot, "style=dashed"), 0u);
}

TEST(Dot, NoFriendsNoDottedEdges) {
  const Model m = ModelBuilder({"u0", "u1"}, {"a", "b"}).know("a", "u0", "u1").build_valid();
  const std::string dot = format_dot(m);
  EXPECT_EQ(count(dot, "style=dotted"), 0u);
  EXPECT_EQ(count(dot, "style=solid"), 1u);
}

TEST(Dot, StableUnderRoundTrip) {
  for (const auto& name : scenario_names()) {
    const Model m = load_scenario(name).model;
    EXPECT_EQ(format_dot(parse_model(format_model(m)).model), format_dot(m)) << name;
  }
}

TEST(Dot, KnowledgeGeneratorsSpanCells) {
  const Model m = scenario::spy();
  const auto gens = knowledge_generators(m);
  // c's cell {u0,u1,u2} needs two links, b and e one each.
  EXPECT_EQ(gens.size(), 4u);
  Relation k(m.num_points());
  for (std::size_t x = 0; x < m.num_points(); ++x) k.insert(x, x);
  for (const auto& g : gens) {
    k.insert(m.point(g.from, g.agent), m.point(g.to, g.agent));
    k.insert(m.point(g.to, g.agent), m.point(g.from, g.agent));
  }
  EXPECT_EQ(k.star(), m.knowledge());
}

TEST(Dot, SpyDangerLabels) {
  const std::string dot = format_dot(scenario::spy());
  EXPECT_EQ(count(dot, "[label="), 9u);
  // d holds for the spy and the spy's friends: b, e at u0 and b, c, e at u2.
  const std::regex label(R"(label="[^"]*\\n(d|[^"]* d)[ "])");
  const auto labelled = std::distance(std::sregex_iterator(dot.begin(), dot.end(), label), std::sregex_iterator());
  EXPECT_EQ(labelled, 5);
}
