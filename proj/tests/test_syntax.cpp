#include <gtest/gtest.h>

#include "efl/ast_util.hpp"
#include "efl/parser.hpp"
#include "efl/printer.hpp"
#include "efl/social.hpp"

using namespace efl;

namespace {

Formula P(const std::string& s, NominalSet n = {}) { return parse_formula(s, n); }

}  // namespace

TEST(Parser, BasicFormulas) {
  EXPECT_EQ(P("(K ~p & ~K <F> p)"), conj(know(neg(prop("p"))), neg(know(some_friend(prop("p"))))));
  EXPECT_EQ(P("@b (d & ~K d)"), at("b", conj(prop("d"), neg(know(prop("d"))))));
  EXPECT_EQ(P("true"), top());
  EXPECT_EQ(P("A false"), everyone(bottom()));
  EXPECT_EQ(P("(p -> q)"), implies(prop("p"), prop("q")));
  EXPECT_EQ(P("(p <-> q)"), iff(prop("p"), prop("q")));
  EXPECT_EQ(P("(p | q)"), disj(prop("p"), prop("q")));
  EXPECT_EQ(P("<D> p"), diamond(Modality::D, prop("p")));
}

TEST(Parser, NominalsAreClassifiedByPosition) {
  // b follows @, so b is a nominal everywhere in the formula.
  EXPECT_EQ(P("(b & @b p)"), conj(nom("b"), at("b", prop("p"))));
  EXPECT_EQ(P("down n . F K <F> n"), down("n", all_friends(know(some_friend(nom("n"))))));
  EXPECT_EQ(P("(c & p)", {"c"}), conj(nom("c"), prop("p")));
  EXPECT_EQ(P("(c & p)"), conj(prop("c"), prop("p")));
}

TEST(Parser, Programs) {
  EXPECT_EQ(parse_program("(d? ; K ; d?) | (~d? ; K ; ~d?)"), cut_k(prop("d")));
  EXPECT_EQ(parse_program("(A ; b? ; K)* ; A ; b?", {"b"}), ck(nom("b")));
  EXPECT_EQ(parse_program("cutK(d)"), cut_k(prop("d")));
  EXPECT_EQ(parse_program("cutF(n, m)"), cut_f("n", "m"));
  EXPECT_EQ(parse_program("kbar(a)"), kbar("a"));
  EXPECT_EQ(parse_program("K ; F | A"), choice(seq(prog_k(), prog_f()), prog_a()));
  EXPECT_EQ(parse_program("K**"), star(star(prog_k())));
}

TEST(Parser, Errors) {
  EXPECT_THROW(P("K"), ParseError);
  EXPECT_THROW(parse_program("*K"), ParseError);
  EXPECT_THROW(P("(p & q"), ParseError);
  EXPECT_THROW(P("p & q"), ParseError);
  EXPECT_THROW(P("[K := ] p"), ParseError);
  try {
    P("(p &\n  $)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Parser, Transformations) {
  const Formula f = P("[K := (a? ; K) | true?] K <F> p", {"a"});
  const auto* d = f.as<node::Dynamic>();
  ASSERT_NE(d, nullptr);
  const auto& t = std::get<Transformation>(d->op);
  ASSERT_EQ(t.assignments.size(), 1u);
  EXPECT_EQ(t.assignments[0].program, choice(seq(test(nom("a")), prog_k()), test(top())));
  EXPECT_EQ(P("[I] p"), dyn(identity_transformation(), prop("p")));
  const Formula g = P("[F := cutF(n, m), p := ~p, n := m] p");
  const auto& u = std::get<Transformation>(g.as<node::Dynamic>()->op);
  ASSERT_EQ(u.assignments.size(), 3u);
  EXPECT_EQ(u.assignments[1].target.kind, Target::Kind::prop);
  EXPECT_EQ(u.assignments[2].target.kind, Target::Kind::nominal);
}

TEST(Parser, Gddl) {
  const Formula f =
      P("[gddl action d0 {K := (a? ; K) | true?} action d1 {} actual d0 K' = {(d0, d1), (d1, d0)} "
        "integrate {K := (K | (a? ; K'))*}] p",
        {"a"});
  const auto& g = std::get<GddlOperator>(f.as<node::Dynamic>()->op);
  ASSERT_EQ(g.actions.size(), 2u);
  EXPECT_EQ(g.actual, "d0");
  ASSERT_EQ(g.internal.size(), 1u);
  EXPECT_EQ(g.internal[0].token, "K'");
  EXPECT_TRUE(g.actions[1].effect.assignments.empty());
  EXPECT_EQ(g.integrate.assignments[0].program, star(choice(prog_k(), seq(test(nom("a")), internal("K'")))));
}

TEST(Parser, Sugar) {
  const Formula s = P("[e <! s : true] A K @e s");
  const auto* x = s.as<node::Sugar>();
  ASSERT_NE(x, nullptr);
  EXPECT_EQ(x->form.kind, SugarKind::sender_announce);
  EXPECT_EQ(x->form.n, "e");
  EXPECT_EQ(x->form.psi, prop("s"));
  EXPECT_FALSE(x->form.is_private);
  EXPECT_TRUE(P("[n !!> d : <F> n] p").as<node::Sugar>()->form.is_private);
  EXPECT_EQ(P("[n ? p : m] p").as<node::Sugar>()->form.kind, SugarKind::ask);
  EXPECT_EQ(P("[delF m p] q").as<node::Sugar>()->form.m, "p");
  EXPECT_EQ(P("[request private m] p").as<node::Sugar>()->form.kind, SugarKind::friend_request);
  EXPECT_EQ(P("C{b,c} @c ~s"), group_common({"b", "c"}, at("c", neg(prop("s")))));
}

TEST(Printer, CanonicalText) {
  EXPECT_EQ(print_formula(conj(prop("p"), prop("q"))), "(p & q)");
  EXPECT_EQ(print_program(cut_k(prop("d"))), "((d? ; K ; d?) | (~d? ; K ; ~d?))");
  EXPECT_EQ(print_formula(down("n", all_friends(know(some_friend(nom("n")))))), "down n . F K <F> n");
  EXPECT_EQ(print_formula(neg(know(some_friend(prop("p"))))), "~K <F> p");
  EXPECT_EQ(print_program(ck(nom("b"))), "((A ; b? ; K)* ; A ; b?)");
  EXPECT_EQ(print_formula(dyn(identity_transformation(), top())), "[I] true");
}

TEST(Printer, RoundTripsExamples) {
  for (const std::string s :
       {"(K ~p & ~K <F> p)", "@b (d & ~K d)", "[K := ((a? ; K) | true?)] K <F> p", "down n . [n !> d : true] A K d",
        "([n !> p : m] q <-> [n <! @m p : m] q)", "[[((A ; (b | c)? ; K)* ; A ; (b | c)?)]] @c ~s",
        "[request private m] ((K @m K <D> n & <F> m) | (K @m ~K <D> n & ~<F> m))", "[Kbar a] [CK <F> e] d"}) {
    const Formula f = P(s, {"a", "b", "c", "e", "m", "n"});
    EXPECT_EQ(P(print_formula(f), {"a", "b", "c", "e", "m", "n"}), f) << s;
  }
}

TEST(Expand, AnnouncementShapes) {
  const Formula f = expand(P("[e <! s : true] A K @e s"));
  const Formula expected = implies(at("e", know(prop("s"))),
                                   dyn(send(top(), at("e", prop("s"))), everyone(know(at("e", prop("s"))))));
  EXPECT_EQ(f, expected);
}

TEST(Expand, DeleteFriendIsTwoCuts) {
  const Formula f = expand(P("[delF m p] q", {"m", "p"}));
  const Formula expected =
      dyn(transformation({assign_f(cut_f("m", "p"))}), dyn(transformation({assign_f(cut_f("p", "m"))}), prop("q")));
  EXPECT_EQ(f, expected);
}

TEST(Expand, CommonKnowledgeOfNobody) {
  EXPECT_EQ(expand(P("[CK false] p")), pbox(ck(bottom()), prop("p")));
}

TEST(Expand, FriendRequestBindsFreshNominal) {
  const Formula f = expand(P("[request m] n", {"m", "n"}));
  const auto* d = f.as<node::Down>();
  ASSERT_NE(d, nullptr);
  EXPECT_NE(d->nominal, "n");
  EXPECT_NE(d->nominal, "m");
  EXPECT_FALSE(has_sugar(f));
}

TEST(AstUtil, SubstituteRespectsBinders) {
  const Formula f = conj(nom("n"), down("n", nom("n")));
  EXPECT_EQ(substitute_nominal(f, "n", "a"), conj(nom("a"), down("n", nom("n"))));
  EXPECT_EQ(substitute_nominal(at("n", prop("p")), "n", "a"), at("a", prop("p")));
}

TEST(AstUtil, FreshNameAvoidsIdentifiers) {
  const Formula f = conj(nom("_v0"), prop("_v1"));
  const std::string v = fresh_name(f);
  EXPECT_NE(v, "_v0");
  EXPECT_NE(v, "_v1");
}
