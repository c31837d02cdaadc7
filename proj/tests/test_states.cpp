#include <gtest/gtest.h>

#include "effectkit/fixtures.hpp"
#include "effectkit/lexrep.hpp"
#include "effectkit/states.hpp"
#include "oracles.hpp"

using namespace effectkit;
namespace fx = effectkit::fixtures;

namespace {

Vec v(std::initializer_list<int> xs) {
  std::vector<Rat> r;
  for (int x : xs) r.push_back(Rat(x));
  return Vec(std::move(r));
}

int at(FiniteEffectAlgebra const& E, std::string const& l) { return *E.index_of(l); }

// Heads used as (H,u)-state targets for the finite fixtures.
std::vector<IntervalEffectAlgebra> heads() {
  return {gamma(parse_group_literal("Z:product(1)@1")), gamma(parse_group_literal("Z:product(1)@2")),
          gamma(parse_group_literal("Z:product(1)@3")), gamma(parse_group_literal("Z:product(2)@1,1"))};
}

}  // namespace

TEST(Feasibility, AgreesWithGridOracle) {
  for (auto const& [name, E] : fx::finite()) {
    if (E.n() > 6) continue;
    auto s = state_feasible(E);
    auto g = oracle::grid_state(E);
    EXPECT_EQ(s.has_value(), g.has_value()) << name;
    if (s) EXPECT_TRUE(is_state(E, *s).holds()) << name;
    if (g) EXPECT_TRUE(is_state(E, *g).holds()) << name;
  }
}

TEST(Feasibility, ChainStateIsLinear) {
  for (int n = 1; n <= 4; ++n) {
    auto C = fx::chain(n);
    for (int i = 0; i <= n; ++i) {
      auto ex = state_extremes(C, i);
      ASSERT_TRUE(ex);
      EXPECT_EQ(ex->first, Rat(i, n));
      EXPECT_EQ(ex->second, Rat(i, n));
    }
    EXPECT_EQ(unique_state(C).unique.verdict, Verdict::proved);
  }
}

TEST(Feasibility, BooleanAtomRangesOverUnitInterval) {
  auto B = fx::boolean4();
  auto ex = state_extremes(B, at(B, "a"));
  ASSERT_TRUE(ex);
  EXPECT_EQ(ex->first, Rat(0));
  EXPECT_EQ(ex->second, Rat(1));
  EXPECT_TRUE(unique_state(B).unique.fails());
}

TEST(Feasibility, HalvesForcesOneHalf) {
  auto H = fx::halves4();
  auto r = unique_state(H);
  EXPECT_TRUE(r.unique.holds());
  ASSERT_TRUE(r.state);
  EXPECT_EQ((*r.state)[at(H, "a")], Rat(1, 2));
  EXPECT_EQ((*r.state)[at(H, "b")], Rat(1, 2));
}

TEST(IsState, RejectsBadValues) {
  auto C = fx::chain(2);
  EXPECT_TRUE(is_state(C, {Rat(0), Rat(1, 2), Rat(1)}).holds());
  EXPECT_TRUE(is_state(C, {Rat(0), Rat(1, 3), Rat(1)}).fails());
  EXPECT_TRUE(is_state(C, {Rat(0), Rat(1, 2), Rat(2)}).fails());
}

TEST(UniqueState, LexHostsDelegateToHead) {
  Budget b;
  for (auto const& E : {fx::lex1(), fx::lex21()}) {
    auto r = unique_state(E);
    EXPECT_TRUE(r.unique.holds());
    ASSERT_TRUE(r.state);
    Sampler smp(b.seed);
    for (auto const& x : sample_elements(E, b, 200, 3)) {
      Vec y = x;
      y[1] = Rat(smp.integer(-20, 20));
      if (in_carrier(E, y) && y[0] == x[0]) EXPECT_EQ((*r.state)(x), (*r.state)(y));
    }
  }
  auto s1 = *unique_state(fx::lex1()).state;
  EXPECT_EQ(s1(v({1, -7})), Rat(1));
  EXPECT_EQ(s1(v({0, 9})), Rat(0));
  auto s21 = *unique_state(fx::lex21()).state;
  EXPECT_EQ(s21(v({1, 4})), Rat(1, 2));
  EXPECT_EQ(s21(v({2, 1})), Rat(1));
  EXPECT_THROW(unique_state(fx::square()), Unsupported);
}

TEST(Transfer, RoundTripsAndVanishesOnTail) {
  for (auto const& E : {fx::lex1(), fx::lex21(), fx::lex3()}) {
    std::size_t k = head_rank(E);
    auto head = unique_state(enumerate(head_algebra(E, k)));
    ASSERT_TRUE(head.state);
    auto s = state_transfer(E, k, *head.state);
    auto [back, zero] = state_restrict(E, k, s, {});
    EXPECT_EQ(back, *head.state);
    EXPECT_TRUE(zero.holds());
    for (int g = 0; g <= 30; ++g) {
      Vec x(E.rank());
      x[E.rank() - 1] = Rat(g);
      EXPECT_EQ(s(x), Rat(0));
    }
  }
  EXPECT_THROW(head_algebra(gamma(parse_group_literal("Z:lex(product(2), product(1))@1,1,0")), 1), Unsupported);
}

TEST(HuState, BooleanIdentityGivesSingletonFibers) {
  auto B = fx::boolean4();
  auto H = gamma(parse_group_literal("Z:product(2)@1,1"));
  auto s = make_hu_state(B, H, {v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})});
  EXPECT_TRUE(verify_hu_state(B, s).holds());
  EXPECT_TRUE(is_valued(B, s));
  auto D = hu_state_to_decomposition(B, s);
  for (auto const& f : D.fibers) EXPECT_EQ(count(f), 1u);
  EXPECT_EQ(decomposition_to_hu_state(B, D, s.target_points).map, s.map);
}

TEST(HuState, RoundTripsOnEveryValuedState) {
  int seen = 0;
  for (auto const& [name, E] : fx::finite())
    for (auto const& H : heads()) {
      auto T = enumerate(H);
      for (auto const& m : all_valued_hu_states(E, T)) {
        ++seen;
        FiniteHuState s{T, carrier_points(H), m};
        auto D = hu_state_to_decomposition(E, s);
        EXPECT_TRUE(validate_decomposition(E, D).holds()) << name;
        auto back = decomposition_to_hu_state(E, D, s.target_points);
        EXPECT_EQ(back.map, m) << name;
        auto D2 = hu_state_to_decomposition(E, back);
        EXPECT_EQ(D2.fibers, D.fibers) << name;
        auto ext = validate_hu_state_extension(E, s);
        EXPECT_TRUE(ext.zero.holds() && ext.monotone.holds() && ext.complement.holds()) << name;
      }
    }
  EXPECT_GE(seen, 10);
}

TEST(HuState, ValuedStatesMatchExhaustiveMaps) {
  // Independent count: every map E -> T, filtered by the homomorphism axioms.
  auto E = fx::boolean4();
  auto T = fx::chain(1);
  std::size_t count_maps = 0;
  for (int code = 0; code < 16; ++code) {
    std::vector<int> m(4);
    for (int i = 0; i < 4; ++i) m[i] = (code >> i) & 1;
    bool ok = m[E.zero()] == 0 && m[E.one()] == 1;
    for (int a = 0; a < 4 && ok; ++a)
      for (int b = 0; b < 4 && ok; ++b)
        if (E.defined(a, b)) ok = T.defined(m[a], m[b]) && T.sum(m[a], m[b]) == m[E.sum(a, b)];
    count_maps += ok;
  }
  EXPECT_EQ(all_valued_hu_states(E, T).size(), count_maps);
  EXPECT_EQ(count_maps, 2u);
}

TEST(HuState, TamperedZeroIsReported) {
  auto C = fx::chain(2);
  auto H = gamma(parse_group_literal("Z:product(1)@2"));
  auto s = make_hu_state(C, H, {v({1}), v({1}), v({2})});
  EXPECT_TRUE(verify_hu_state(C, s).fails());
  EXPECT_TRUE(validate_hu_state_extension(C, s).zero.fails());
  EXPECT_THROW(hu_state_to_decomposition(C, s), std::invalid_argument);
}

TEST(HuState, NotValuedIsRejected) {
  auto C = fx::chain(2);
  auto H = gamma(parse_group_literal("Z:product(2)@2,2"));
  auto s = make_hu_state(C, H, {v({0, 0}), v({1, 1}), v({2, 2})});
  EXPECT_TRUE(verify_hu_state(C, s).holds());
  EXPECT_FALSE(is_valued(C, s));
  EXPECT_THROW(hu_state_to_decomposition(C, s), std::invalid_argument);
}

TEST(SymbolicHuState, LexOneFibers) {
  auto E = fx::lex1();
  auto s = canonical_hu_state(E, 1);
  auto chk = verify_hu_state(E, s);
  EXPECT_TRUE(chk.state.holds());
  EXPECT_TRUE(chk.valued.holds());
  auto D = hu_state_to_decomposition(s);
  EXPECT_TRUE(validate_decomposition(E, D).holds());
  for (int g = -10; g <= 10; ++g) {
    EXPECT_EQ(D.fiber(v({0})).holds(v({0, g})), true);
    EXPECT_EQ(D.fiber(v({1})).holds(v({1, g})), true);
    EXPECT_FALSE(D.fiber(v({0})).holds(v({1, g})));
    EXPECT_EQ(in_carrier(E, v({0, g})), g >= 0);
    EXPECT_EQ(in_carrier(E, v({1, g})), g <= 0);
  }
  EXPECT_EQ(decomposition_to_hu_state(D).map, s.map);
}

TEST(SymbolicHuState, MonotoneOnSampledPairs) {
  auto E = fx::lex1();
  auto s = canonical_hu_state(E, 1);
  Budget b;
  auto xs = sample_elements(E, b, 200, 5);
  auto H = s.target;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    auto const& x = xs[i];
    auto const& y = xs[i + 1];
    if (leq(E, x, y)) EXPECT_TRUE(leq(H, s(x), s(y)));
  }
}

TEST(SymbolicHuState, RoundTripOnLexFixtures) {
  for (auto const& E : {fx::lex1(), fx::lex21(), fx::lex3()})
    for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
      if (!lex_split(E.group, k)) continue;
      auto s = canonical_hu_state(E, k);
      auto D = hu_state_to_decomposition(s);
      EXPECT_TRUE(validate_decomposition(E, D).holds());
      EXPECT_EQ(decomposition_to_hu_state(D).map, s.map);
    }
}
