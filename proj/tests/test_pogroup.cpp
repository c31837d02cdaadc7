#include <gtest/gtest.h>

#include "effectkit/pogroup.hpp"

using namespace effectkit;

namespace {

ConePoGroup lexzz() { return parse_group_literal("Z:lex(product(1), product(1))@1,0"); }
ConePoGroup z2() { return parse_group_literal("Z:product(2)@1,1"); }
ConePoGroup quadrant() { return parse_group_literal("Q:custom(2: x0 = 0 & x1 = 0 | x0 > 0 & x1 > 0)@1,1"); }
// Cone spanned by (1,0) and (1,2); (1,1) is an integer point but not a sum of the rays.
ConePoGroup wedge() { return parse_group_literal("Z:custom(2: x1 >= 0 & 2*x0 - x1 >= 0)@1,1"); }

// Independent refinement oracle over integer boxes.
bool box_refinable(ConePoGroup const& G, Vec const& a1, Vec const& a2, Vec const& b1, int w) {
  Vec b2 = a1 + a2 - b1;
  for (int x = -w; x <= w; ++x)
    for (int y = -w; y <= w; ++y) {
      Vec c11{Rat(x), Rat(y)};
      Vec c12 = a1 - c11, c21 = b1 - c11, c22 = a2 - c21;
      if (G.cone.contains(c11) && G.cone.contains(c12) && G.cone.contains(c21) && G.cone.contains(c22) &&
          c12 + c22 == b2)
        return true;
    }
  return false;
}

bool box_rdp(ConePoGroup const& G, int w) {
  std::vector<Vec> pos;
  for (int x = 0; x <= w; ++x)
    for (int y = -w; y <= w; ++y)
      if (G.cone.contains(Vec{Rat(x), Rat(y)})) pos.push_back(Vec{Rat(x), Rat(y)});
  for (auto const& a1 : pos)
    for (auto const& a2 : pos)
      for (auto const& b1 : pos)
        if (G.cone.contains(a1 + a2 - b1) && !box_refinable(G, a1, a2, b1, 2 * w)) return false;
  return true;
}

}  // namespace

TEST(Rat, CanonicalForm) {
  Rat r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rat::parse("2/4"), Rat(1, 2));
  EXPECT_EQ(Rat(1, 2) + Rat(1, 3), Rat(5, 6));
  EXPECT_THROW(Rat(1, 0), std::exception);
}

TEST(ConeContains, Examples) {
  EXPECT_TRUE(cone_contains(lexzz(), Vec{Rat(1), Rat(-5)}));
  EXPECT_FALSE(cone_contains(z2(), Vec{Rat(1), Rat(-1)}));
  EXPECT_TRUE(cone_contains(quadrant(), Vec{Rat(1, 2), Rat(1, 3)}));
  EXPECT_FALSE(cone_contains(quadrant(), Vec{Rat(0), Rat(1, 3)}));
  EXPECT_THROW(cone_contains(z2(), Vec{Rat(1)}), std::exception);
}

TEST(Leq, Examples) {
  EXPECT_TRUE(leq(lexzz(), Vec{Rat(0), Rat(100)}, Vec{Rat(1), Rat(-100)}));
  EXPECT_FALSE(leq(z2(), Vec{Rat(0), Rat(1)}, Vec{Rat(1), Rat(0)}));
  EXPECT_FALSE(leq(z2(), Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}));
}

TEST(Leq, PartialOrderCompatibleWithAddition) {
  for (auto const& G : {lexzz(), z2(), quadrant(), wedge()}) {
    Sampler s(7);
    Vec lo = filled(2, Rat(-3)), hi = filled(2, Rat(3));
    for (int i = 0; i < 300; ++i) {
      Vec g = s.vec(G, lo, hi), h = s.vec(G, lo, hi), f = s.vec(G, lo, hi);
      EXPECT_TRUE(leq(G, g, g));
      if (leq(G, g, h)) {
        EXPECT_TRUE(leq(G, g + f, h + f));
        if (leq(G, h, f)) EXPECT_TRUE(leq(G, g, f));
        if (leq(G, h, g)) EXPECT_EQ(g, h);
      }
    }
  }
}

TEST(LexProduct, ShapesAndUnits) {
  auto Z1 = parse_group_literal("Z:product(1)@1");
  auto Z = parse_group_literal("Z:product(1)");
  auto P = lex_product(Z1, Z);
  EXPECT_EQ(P.rank(), 2u);
  EXPECT_EQ(P.cone.kind(), Cone::Kind::lex);
  EXPECT_EQ(*P.unit, (Vec{Rat(1), Rat(0)}));
  EXPECT_EQ(*lex_product(parse_group_literal("Z:product(1)@2"), Z).unit, (Vec{Rat(2), Rat(0)}));
  auto P3 = lex_product(Z1, lex_product(Z1, Z));
  EXPECT_EQ(P3.rank(), 3u);
  EXPECT_EQ(*P3.unit, (Vec{Rat(1), Rat(0), Rat(0)}));
  EXPECT_THROW(lex_product(Z, Z), std::invalid_argument);
}

TEST(LexProduct, ZeroHeadForcesPositiveTail) {
  auto G = lex_product(parse_group_literal("Z:product(1)@1"), z2());
  Sampler s(3);
  Vec lo = filled(3, Rat(-4)), hi = filled(3, Rat(4));
  for (int i = 0; i < 400; ++i) {
    Vec g = s.vec(G, lo, hi);
    g[0] = Rat(0);
    EXPECT_EQ(G.cone.contains(g), z2().cone.contains(g.slice(1, 2)));
  }
}

TEST(LexSplit, OnlyAtFactorBoundaries) {
  auto G = parse_group_literal("Z:lex(product(1), lex(product(1), product(1)))@1,0,0");
  ASSERT_TRUE(lex_split(G, 1));
  ASSERT_TRUE(lex_split(G, 2));
  EXPECT_FALSE(lex_split(G, 0));
  EXPECT_EQ(*lex_split(G, 2)->first.unit, (Vec{Rat(1), Rat(0)}));
  EXPECT_FALSE(lex_split(parse_group_literal("Z:lex(product(2), product(1))@1,1,0"), 1));
}

TEST(ConeAxioms, CustomConesAreChecked) {
  EXPECT_EQ(check_cone_axioms(z2()).verdict, Verdict::proved);
  EXPECT_TRUE(check_cone_axioms(quadrant()).holds());
  EXPECT_TRUE(check_cone_axioms(wedge()).holds());
  auto halfplane = parse_group_literal("Z:custom(2: x0 >= 0)");
  EXPECT_TRUE(check_cone_axioms(halfplane).fails());
}

TEST(StrongUnit, StructuralAndSampled) {
  EXPECT_EQ(strong_unit(z2()).verdict, Verdict::proved);
  EXPECT_EQ(strong_unit(lexzz()).verdict, Verdict::proved);
  EXPECT_TRUE(strong_unit(parse_group_literal("Z:lex(product(1), product(1))@0,1")).fails());
  EXPECT_EQ(strong_unit(quadrant()).verdict, Verdict::witnessed);
}

TEST(Directed, Examples) {
  EXPECT_EQ(is_directed(lexzz()).verdict, Verdict::proved);
  EXPECT_EQ(is_directed(z2()).verdict, Verdict::proved);
  EXPECT_EQ(is_directed(quadrant()).verdict, Verdict::witnessed);
}

TEST(Rdp, LexOverLinearIsStructural) {
  EXPECT_EQ(check_rdp_cone(lexzz()).outcome.verdict, Verdict::proved);
  EXPECT_EQ(check_rdp_cone(parse_group_literal("Z:lex(product(1), lex(product(1), product(1)))")).outcome.verdict,
            Verdict::proved);
}

TEST(Rdp, AgreesWithBoxOracle) {
  Budget b;
  b.window = 3;
  for (auto const& G : {z2(), wedge()}) {
    auto r = check_rdp_cone(G, b);
    bool oracle = box_rdp(G, 3);
    EXPECT_EQ(r.outcome.holds(), oracle) << G.str() << ": " << r.outcome.detail;
    EXPECT_EQ(r.outcome.fails(), !oracle);
  }
}

TEST(Rdp, CounterexampleIsGenuine) {
  auto G = wedge();
  auto r = check_rdp_cone(G);
  ASSERT_TRUE(r.outcome.fails());
  ASSERT_TRUE(r.counterexample);
  auto const& [a1, a2, b1, b2] = *r.counterexample;
  EXPECT_EQ(a1 + a2, b1 + b2);
  EXPECT_FALSE(box_refinable(G, a1, a2, b1, 12));
}

TEST(Rdp, QuadrantHoldsInWindow) {
  EXPECT_TRUE(check_rdp_cone(quadrant()).outcome.holds());
}
