#include <gtest/gtest.h>

#include <random>
#include <set>

#include "efl/bits.hpp"

using efl::PointSet;
using efl::Relation;

namespace {

// Reference relation as a set of pairs.
using Pairs = std::set<std::pair<std::size_t, std::size_t>>;

Pairs pairs_of(const Relation& r) {
  Pairs out;
  r.for_each_pair([&](std::size_t x, std::size_t y) { out.insert({x, y}); });
  return out;
}

Relation random_relation(std::mt19937& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  Relation r(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (coin(rng)) r.insert(x, y);
  return r;
}

Pairs compose_ref(const Pairs& a, const Pairs& b) {
  Pairs out;
  for (const auto& [x, y] : a)
    for (const auto& [y2, z] : b)
      if (y == y2) out.insert({x, z});
  return out;
}

}  // namespace

TEST(PointSet, BasicOperations) {
  PointSet s(10);
  EXPECT_TRUE(s.none());
  s.set(3);
  s.set(9);
  EXPECT_EQ(s.count(), 2u);
  EXPECT_TRUE(s.test(9));
  EXPECT_FALSE(s.test(4));
  const PointSet c = ~s;
  EXPECT_EQ(c.count(), 8u);
  EXPECT_FALSE(c.test(3));
  EXPECT_TRUE((s | c).all());
  EXPECT_TRUE((s & c).none());
  EXPECT_EQ(s.members(), (std::vector<std::size_t>{3, 9}));
}

TEST(PointSet, ComplementDoesNotLeakPastSize) {
  for (std::size_t n : {1u, 63u, 64u, 65u, 130u}) {
    const PointSet full = ~PointSet(n);
    EXPECT_EQ(full.count(), n);
    EXPECT_EQ(full, PointSet::full(n));
  }
}

TEST(PointSet, LargeSets) {
  PointSet s(200);
  s.set(0);
  s.set(199);
  s.set(64);
  EXPECT_EQ(s.count(), 3u);
  PointSet t(200);
  t.set(64);
  EXPECT_TRUE(t.subset_of(s));
  EXPECT_TRUE(t.intersects(s));
  s.subtract(t);
  EXPECT_FALSE(s.test(64));
}

TEST(Relation, ComposeMatchesPairwiseDefinition) {
  std::mt19937 rng(1);
  for (std::size_t n : {1u, 5u, 17u, 64u, 70u}) {
    const Relation a = random_relation(rng, n, 0.2);
    const Relation b = random_relation(rng, n, 0.2);
    EXPECT_EQ(pairs_of(a.compose(b)), compose_ref(pairs_of(a), pairs_of(b))) << n;
  }
}

TEST(Relation, StarIsLeastReflexiveTransitiveSuperset) {
  std::mt19937 rng(2);
  for (std::size_t n : {1u, 4u, 9u, 33u, 80u}) {
    const Relation r = random_relation(rng, n, 0.05);
    // Oracle: iterate r' = r' | r'∘r' from id | r until stable.
    Relation it = Relation::identity(n) | r;
    for (;;) {
      Relation next = it | it.compose(it);
      if (next == it) break;
      it = next;
    }
    EXPECT_EQ(r.star(), it) << n;
  }
}

TEST(Relation, BoxAndDiamondAreDual) {
  std::mt19937 rng(3);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 20;
    const Relation r = random_relation(rng, n, 0.3);
    PointSet s(n);
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng)) s.set(i);
    EXPECT_EQ(r.box(s), ~r.diamond(~s));
    for (std::size_t x = 0; x < n; ++x) {
      bool all = true;
      r.for_each_successor(x, [&](std::size_t y) { all = all && s.test(y); });
      EXPECT_EQ(r.box(s).test(x), all);
    }
  }
}

TEST(Relation, TransposeAndDiagonal) {
  Relation r(3);
  r.insert(0, 1);
  r.insert(2, 0);
  const Relation t = r.transpose();
  EXPECT_TRUE(t.contains(1, 0));
  EXPECT_TRUE(t.contains(0, 2));
  EXPECT_EQ(t.pair_count(), 2u);
  PointSet s(3);
  s.set(1);
  const Relation d = Relation::diagonal(s);
  EXPECT_EQ(pairs_of(d), (Pairs{{1, 1}}));
  EXPECT_EQ(pairs_of(d.compose(t)), (Pairs{{1, 0}}));
}

TEST(Relation, CopiesAreIndependent) {
  Relation a(4);
  a.insert(1, 2);
  Relation b = a;
  b.insert(3, 3);
  EXPECT_FALSE(a.contains(3, 3));
  Relation c(100);
  c.insert(99, 0);
  Relation d = c;
  d.erase(99, 0);
  EXPECT_TRUE(c.contains(99, 0));
  EXPECT_TRUE(d.empty());
}
