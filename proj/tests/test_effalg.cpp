#include <gtest/gtest.h>

#include "effectkit/fixtures.hpp"
#include "oracles.hpp"

using namespace effectkit;
namespace fx = effectkit::fixtures;

namespace {

int at(FiniteEffectAlgebra const& E, std::string const& l) { return *E.index_of(l); }

// Γ(G,u) elements as vectors, in the order enumerate() labels them.
std::vector<Vec> points(IntervalEffectAlgebra const& E) { return carrier_points(E); }

}  // namespace

TEST(Axioms, EveryFiniteFixturePasses) {
  for (auto const& [name, E] : fx::finite()) EXPECT_TRUE(verify_axioms(E).holds()) << name;
}

TEST(Axioms, TwoComplementsViolateUniqueness) {
  int const U = FiniteEffectAlgebra::undefined;
  // a+a = 1 and a+b = 1.
  FiniteEffectAlgebra bad({"0", "a", "b", "1"}, {{0, 1, 2, 3}, {1, 3, 3, U}, {2, 3, U, U}, {3, U, U, U}}, 0, 3);
  auto o = verify_axioms(bad);
  ASSERT_TRUE(o.fails());
  EXPECT_NE(o.detail.find("axiom (iii)"), std::string::npos) << o.detail;
}

TEST(Axioms, MalformedTableIsRejected) {
  EXPECT_THROW(FiniteEffectAlgebra({"0", "1"}, {{0, 1}, {1, 7}}, 0, 1), std::invalid_argument);
  EXPECT_THROW(FiniteEffectAlgebra({"0", "1"}, {{0, 1}}, 0, 1), std::invalid_argument);
}

TEST(Order, ChainArithmetic) {
  auto C4 = fx::chain(4);
  EXPECT_TRUE(C4.leq(at(C4, "1"), at(C4, "3")));
  EXPECT_EQ(minus(C4, at(C4, "3"), at(C4, "1")), at(C4, "2"));
  EXPECT_THROW(minus(C4, at(C4, "1"), at(C4, "3")), std::invalid_argument);
  EXPECT_EQ(complement(C4, C4.zero()), C4.one());
}

TEST(Order, BooleanAtomsIncomparable) {
  auto B = fx::boolean4();
  EXPECT_FALSE(B.comparable(at(B, "a"), at(B, "b")));
}

TEST(Order, TableIdentities) {
  for (auto const& [name, E] : fx::finite())
    for (int a = 0; a < E.n(); ++a) {
      EXPECT_EQ(complement(E, complement(E, a)), a) << name;
      for (int b = 0; b < E.n(); ++b) {
        EXPECT_EQ(E.defined(a, b), E.leq(a, complement(E, b))) << name;
        EXPECT_EQ(E.leq(a, b), oracle::below(E, a, b)) << name;
        if (E.leq(a, b)) EXPECT_EQ(E.sum(minus(E, b, a), a), b) << name;
      }
    }
}

TEST(Gamma, EnumerationMatchesChainsAndSquare) {
  auto C4 = enumerate(gamma(parse_group_literal("Z:product(1)@4")));
  EXPECT_EQ(C4.size(), 5u);
  EXPECT_TRUE(oracle::isomorphic(C4, fx::chain(4)));
  auto B = enumerate(gamma(parse_group_literal("Z:product(2)@1,1")));
  EXPECT_EQ(B.size(), 4u);
  EXPECT_TRUE(oracle::isomorphic(B, fx::boolean4()));
}

TEST(Gamma, LexCarrierIsNotEnumerable) {
  auto E = fx::lex1();
  EXPECT_FALSE(E.enumerable);
  EXPECT_THROW(enumerate(E), std::exception);
  for (int n = 0; n < 50; ++n) EXPECT_TRUE(in_carrier(E, Vec{Rat(0), Rat(n)}));
}

TEST(Gamma, RejectsUnitOutsideCone) {
  EXPECT_THROW(gamma(parse_group_literal("Z:product(2)"), Vec{Rat(1), Rat(-1)}), std::invalid_argument);
}

TEST(Gamma, EnumeratedOrderIsConeOrder) {
  auto E = fx::g22();
  auto T = enumerate(E);
  auto pts = points(E);
  ASSERT_EQ(pts.size(), T.size());
  EXPECT_TRUE(verify_axioms(T).holds());
  for (int a = 0; a < T.n(); ++a)
    for (int b = 0; b < T.n(); ++b) EXPECT_EQ(T.leq(a, b), leq(E.group, pts[a], pts[b]));
}

TEST(Rdp, MatchesBruteForceOracle) {
  for (auto const& [name, E] : fx::finite()) {
    ASSERT_LE(E.n(), 12);
    EXPECT_EQ(check_rdp(E).outcome.holds(), oracle::rdp(E)) << name;
  }
}

TEST(Rdp, HalvesFailsAtTheUnit) {
  auto H = fx::halves4();
  auto r = check_rdp(H);
  ASSERT_TRUE(r.outcome.fails());
  auto [a1, a2, b1, b2] = *r.counterexample;
  EXPECT_EQ(H.sum(a1, a2), H.one());
  EXPECT_FALSE(oracle::refinable(H, a1, a2, b1, b2));
}

TEST(Rdp, NestedLexIntervalPasses) {
  EXPECT_TRUE(check_rdp(fx::lex3()).outcome.holds());
}

TEST(OrderClass, Examples) {
  auto c = classify_order(fx::chain(3));
  EXPECT_TRUE(c.linear && c.lattice && c.antilattice && c.mv);
  auto b = classify_order(fx::boolean4());
  EXPECT_TRUE(b.lattice && b.mv);
  EXPECT_FALSE(b.antilattice || b.linear);
  auto k = classify_order(fx::open_quadrant());
  EXPECT_TRUE(k.antilattice.holds());
  EXPECT_TRUE(k.lattice.fails());
}

TEST(OrderClass, LinearIffLatticeAndAntilattice) {
  for (auto const& [name, E] : fx::finite()) {
    auto c = classify_order(E);
    EXPECT_EQ(c.linear, c.lattice && c.antilattice) << name;
  }
}

TEST(OrderClass, TruncatedSumSatisfiesMvAxioms) {
  int seen = 0;
  for (auto const& [name, E] : fx::finite()) {
    auto c = classify_order(E);
    if (!c.mv) continue;
    ++seen;
    EXPECT_TRUE(check_mv_axioms(E, c.mv_table).holds()) << name;
  }
  EXPECT_GE(seen, 5);
  auto C3 = fx::chain(3);
  auto c = classify_order(C3);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) EXPECT_EQ(c.mv_table[a][b], std::min(a + b, 3));
}

TEST(Infinitesimals, FiniteHostsAreArchimedean) {
  for (auto const& [name, E] : fx::finite()) {
    auto s = infinitesimals(E);
    for (int a = 0; a < E.n(); ++a) {
      bool survives = true;
      int acc = E.zero();
      for (int k = 0; k <= E.n() && survives; ++k) {
        acc = E.sum(acc, a);
        survives = acc != FiniteEffectAlgebra::undefined;
      }
      EXPECT_EQ(s[a], survives) << name;
      EXPECT_EQ(s[a], a == E.zero()) << name;
    }
    EXPECT_TRUE(is_archimedean(E).holds()) << name;
  }
}

TEST(Infinitesimals, LexTailIsInfinitesimal) {
  auto E = fx::lex1();
  auto inf = infinitesimals(E);
  EXPECT_EQ(inf.basis.verdict, Verdict::proved);
  for (int n = 0; n <= 20; ++n) {
    Vec a{Rat(0), Rat(n)};
    EXPECT_TRUE(inf.membership.holds(a));
    for (int k = 1; k <= 20; ++k) EXPECT_TRUE(in_carrier(E, Rat(k) * a));
  }
  EXPECT_FALSE(inf.membership.holds(Vec{Rat(1), Rat(-3)}));
  EXPECT_TRUE(is_archimedean(E).fails());
  EXPECT_TRUE(is_archimedean(fx::square()).holds());
}
