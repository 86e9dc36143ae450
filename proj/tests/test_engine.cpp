#include <gtest/gtest.h>

#include "efl/efl.hpp"

using namespace efl;

namespace {

PointSet eval(const Model& m, const std::string& s) {
  Evaluator ev;
  return ev.eval(m, parse_for(m, s));
}

bool at_point(const Model& m, const std::string& w, const std::string& a, const std::string& s) {
  Evaluator ev;
  return ev.satisfies(m, w, a, parse_for(m, s));
}

}  // namespace

TEST(Eval, TwoWorldFacts) {
  const Model m = scenario::fig2();
  EXPECT_TRUE(at_point(m, "u0", "b", "(K ~p & ~K <F> p)"));
  EXPECT_FALSE(at_point(m, "u0", "a", "(K ~p & ~K <F> p)"));
}

TEST(Eval, UniversalModality) {
  const Model m = scenario::spy();
  EXPECT_TRUE(eval(m, "A true").all());
  // A p holds exactly in worlds where every agent is p.
  const PointSet s = eval(m, "A ~s");
  for (std::size_t x = 0; x < m.num_points(); ++x) EXPECT_EQ(s.test(x), m.point_at(x).world == 1) << x;
}

TEST(Eval, AtIsAgentIndependent) {
  const Model m = scenario::spy();
  const PointSet s = eval(m, "@b (d & ~K d)");
  for (std::size_t a = 0; a < 3; ++a) EXPECT_TRUE(s.test(m.point(0, a)));
  EXPECT_TRUE(at_point(m, "u0", "b", "@b K @c ~d"));
  EXPECT_FALSE(at_point(m, "u0", "b", "K d"));
  EXPECT_TRUE(eval(m, "(p | ~p)").all());
}

TEST(Eval, AtMatchesDefinitionByUniversalModality) {
  const Model m = scenario::gossip();
  for (const char* n : {"p", "r", "m"}) {
    const std::string body = "K <F> r";
    EXPECT_EQ(eval(m, std::string("@") + n + " " + body), eval(m, std::string("A (") + n + " -> " + body + ")"));
  }
}

TEST(Denote, TestOfTruthIsIdentity) {
  const Model m = scenario::fig1();
  Evaluator ev;
  EXPECT_EQ(ev.denote(m, parse_program("true?")), Relation::identity(m.num_points()));
  EXPECT_EQ(ev.denote(m, parse_program("false?*")), Relation::identity(m.num_points()));
}

TEST(Denote, NominalTestSelectsAgent) {
  const Model m = scenario::fig1();
  Evaluator ev;
  const Relation r = ev.denote(m, parse_program("n? ; K", {"n"}));
  r.for_each_pair([&](std::size_t x, std::size_t y) {
    EXPECT_EQ(m.point_at(x).agent, 0u);
    EXPECT_EQ(m.point_at(y).agent, 0u);
  });
  EXPECT_EQ(r.pair_count(), 4u);
}

TEST(Denote, ProgramBoxOfBaseEqualsModalBox) {
  const Model m = scenario::gossip();
  for (const char* mod : {"K", "F", "A"})
    EXPECT_EQ(eval(m, std::string("[[") + mod + "]] c"), eval(m, std::string(mod) + " c")) << mod;
}

TEST(Eval, DownBindsCurrentAgent) {
  const Model m = scenario::gossip();
  EXPECT_TRUE(eval(m, "down n . n").all());
  // ↓n.@m <F> n: m is my friend.
  const PointSet s = eval(m, "down n . @m <F> n");
  EXPECT_EQ(s, eval(m, "<F> m"));
}

TEST(Eval, DownRequiresNamedAgentModel) {
  const Model m = scenario::fig1();
  Evaluator ev;
  EXPECT_THROW(ev.eval(m, parse_for(m, "down x . x")), EvalError);
}

TEST(Eval, UnknownNominal) {
  const Model m = scenario::fig1();
  Evaluator ev;
  EXPECT_THROW(ev.eval(m, parse_formula("@z p", {"z"})), EvalError);
}

TEST(Eval, WantModalityNeedsWantRelation) {
  const Model m = scenario::fig1();
  Evaluator ev;
  EXPECT_THROW(ev.eval(m, parse_formula("<D> p")), EvalError);
  const Model d = ModelBuilder({"w"}, {"a", "b"}).wants("w", "a", "b").holds("p", "w", "b").build_valid();
  EXPECT_TRUE(ev.satisfies(d, "w", "a", parse_formula("<D> p")));
  EXPECT_FALSE(ev.satisfies(d, "w", "b", parse_formula("<D> p")));
}

TEST(Eval, ClassicCommonKnowledge) {
  // c knows nothing; b knows everything: C{b} p = K_b p, C{b,c} needs c too.
  const Model m = ModelBuilder({"u0", "u1"}, {"b", "c"})
                      .know("c", "u0", "u1")
                      .holds("p", "u0", "b")
                      .holds("p", "u0", "c")
                      .self_named()
                      .build_valid();
  EXPECT_TRUE(at_point(m, "u0", "b", "C{b} @b p"));
  EXPECT_FALSE(at_point(m, "u0", "b", "C{b,c} @b p"));
}

TEST(Eval, PointOutOfRange) {
  const Model m = scenario::fig1();
  Evaluator ev;
  EXPECT_THROW(ev.satisfies(PointedModel{m, {5, 0}}, top()), ModelError);
  EXPECT_THROW(ev.satisfies(m, "u9", "a", top()), ModelError);
}

TEST(Eval, DynamicIdentityAndUndefinedPolicy) {
  const Model m = scenario::fig1();
  EXPECT_EQ(eval(m, "[K := K] K p"), eval(m, "K p"));
  EXPECT_EQ(eval(m, "[I] <F> p"), eval(m, "<F> p"));
  Evaluator strict;
  EXPECT_THROW(strict.eval(m, parse_for(m, "[K := (n? ; K)] p")), EFLViolation);
  Evaluator lenient(EvalOptions{UndefinedPolicy::vacuous});
  EXPECT_TRUE(lenient.eval(m, parse_for(m, "[K := (n? ; K)] false")).all());
  EXPECT_EQ(lenient.undefined_hits(), 1u);
}
