#include <gtest/gtest.h>

#include <random>

#include "effectkit/fixtures.hpp"
#include "effectkit/ideals.hpp"
#include "effectkit/morphisms.hpp"
#include "oracles.hpp"

using namespace effectkit;
namespace fx = effectkit::fixtures;

namespace {

ElementSet set_of(FiniteEffectAlgebra const& E, std::vector<std::string> const& ls) {
  ElementSet s = empty_set(E.size());
  for (auto const& l : ls) s[*E.index_of(l)] = true;
  return s;
}

std::vector<int> labels_to_map(FiniteEffectAlgebra const& E, FiniteEffectAlgebra const& F,
                               std::vector<std::pair<std::string, std::string>> const& m) {
  std::vector<int> out(E.size());
  for (auto const& [a, b] : m) out[*E.index_of(a)] = *F.index_of(b);
  return out;
}

// Relabels E by a permutation, keeping the same structure.
FiniteEffectAlgebra shuffled(FiniteEffectAlgebra const& E, std::mt19937& rng) {
  std::vector<int> p(E.size());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<std::string> labels(E.size());
  std::vector<std::vector<int>> t(E.size(), std::vector<int>(E.size(), FiniteEffectAlgebra::undefined));
  for (int a = 0; a < E.n(); ++a) {
    labels[p[a]] = "x" + E.label(a);
    for (int b = 0; b < E.n(); ++b)
      if (E.defined(a, b)) t[p[a]][p[b]] = p[E.sum(a, b)];
  }
  return FiniteEffectAlgebra(std::move(labels), std::move(t), p[E.zero()], p[E.one()]);
}

// Every surjective homomorphism E -> T by brute force.
std::vector<std::vector<int>> surjections(FiniteEffectAlgebra const& E, FiniteEffectAlgebra const& T) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(E.size(), 0);
  for (;;) {
    auto h = make_hom(E, T, m);
    if (verify_hom(h).holds() && is_surjective(h)) out.push_back(m);
    std::size_t i = 0;
    for (; i < m.size(); ++i) {
      if (++m[i] < T.n()) break;
      m[i] = 0;
    }
    if (i == m.size()) break;
  }
  return out;
}

}  // namespace

TEST(Hom, IdentityAndConstant) {
  for (auto const& [name, E] : fx::finite()) {
    std::vector<int> id(E.size());
    std::iota(id.begin(), id.end(), 0);
    auto h = make_hom(E, E, id);
    EXPECT_TRUE(verify_hom(h).holds()) << name;
    EXPECT_EQ(kernel(h), set_of(E, {E.label(E.zero())}));
    EXPECT_TRUE(is_injective(h) && is_surjective(h));
    EXPECT_TRUE(has_sim_property(h).holds());
    EXPECT_TRUE(is_full(h).holds());
    auto c = make_hom(E, E, std::vector<int>(E.size(), E.one()));
    EXPECT_TRUE(verify_hom(c).fails()) << name;
  }
}

TEST(Hom, ShapeMismatchThrows) {
  auto C = fx::chain(2);
  EXPECT_THROW(make_hom(C, C, {0, 1}), std::invalid_argument);
  EXPECT_THROW(make_hom(C, C, {0, 1, 5}), std::invalid_argument);
}

TEST(Iso, Examples) {
  EXPECT_TRUE(iso_search(fx::chain(4), enumerate(gamma(parse_group_literal("Z:product(1)@4")))));
  EXPECT_FALSE(iso_search(fx::boolean4(), fx::chain(3)));
  EXPECT_FALSE(iso_search(fx::halves4(), fx::boolean4()));
}

TEST(Iso, AgreesWithPermutationOracle) {
  std::vector<FiniteEffectAlgebra> small;
  for (auto const& [name, E] : fx::finite())
    if (E.n() <= 6) small.push_back(E);
  std::mt19937 rng(11);
  for (std::size_t i = 0, n = small.size(); i < n; ++i) small.push_back(shuffled(small[i], rng));
  for (auto const& E : small)
    for (auto const& F : small) {
      auto m = iso_search(E, F);
      EXPECT_EQ(m.has_value(), oracle::isomorphic(E, F));
      if (m) {
        auto h = make_hom(E, F, *m);
        EXPECT_TRUE(verify_hom(h).holds());
        EXPECT_TRUE(is_injective(h));
      }
    }
}

TEST(Sim, BooleanProjection) {
  auto B = fx::boolean4();
  auto q = quotient(B, set_of(B, {"0", "a"}));
  auto pi = projection(B, q);
  EXPECT_TRUE(has_sim_property(pi).holds());
  EXPECT_TRUE(is_full(pi).holds());
}

TEST(Sim, CollapsingIncomparablesFails) {
  auto H = fx::halves4();
  auto C = fx::chain(2);
  auto h = make_hom(H, C, labels_to_map(H, C, {{"0", "0"}, {"a", "1"}, {"b", "1"}, {"1", "2"}}));
  ASSERT_TRUE(verify_hom(h).holds());
  auto o = has_sim_property(h);
  EXPECT_TRUE(o.fails());
  EXPECT_NE(o.detail.find("without kernel witnesses"), std::string::npos);
  auto into = make_hom(fx::chain(1), fx::chain(2), {0, 2});
  EXPECT_THROW(has_sim_property(into), std::invalid_argument);
}

TEST(Sim, ProjectionsAreFullAndInheritRdp) {
  int seen = 0;
  for (auto const& [name, E] : fx::finite()) {
    bool rdp = oracle::rdp(E);
    for (auto const& I : all_ideals(E)) {
      if (!is_riesz(E, I).holds()) continue;
      auto q = quotient(E, I);
      auto pi = projection(E, q);
      ++seen;
      EXPECT_EQ(kernel(pi), I) << name;
      ASSERT_TRUE(has_sim_property(pi).holds()) << name;
      EXPECT_TRUE(is_full(pi).holds()) << name;
      if (rdp) EXPECT_TRUE(oracle::rdp(q.algebra)) << name;
    }
  }
  EXPECT_GE(seen, 15);
}

TEST(Sim, EverySurjectionWithSimIsFull) {
  std::vector<FiniteEffectAlgebra> targets{fx::chain(1), fx::chain(2), fx::boolean4()};
  int with_sim = 0;
  for (auto const& [name, E] : fx::finite()) {
    if (E.n() > 9) continue;
    for (auto const& T : targets) {
      if (T.n() > E.n()) continue;
      for (auto const& m : surjections(E, T)) {
        auto h = make_hom(E, T, m);
        if (!has_sim_property(h).holds()) continue;
        ++with_sim;
        EXPECT_TRUE(is_full(h).holds()) << name;
        auto K = kernel(h);
        EXPECT_TRUE(oracle::ideal(E, K)) << name;
        if (oracle::rdp(E)) EXPECT_TRUE(oracle::rdp(quotient(E, K).algebra)) << name;
      }
    }
  }
  EXPECT_GE(with_sim, 5);
}

TEST(Image, SimHomomorphismsCarryIdealProperties) {
  // For f with the ~-property and Ker(f) ⊆ I, f(I) is an ideal, and it is
  // strict or prime whenever I is.
  for (auto const& [name, E] : fx::finite()) {
    if (!oracle::rdp(E)) continue;
    for (auto const& J : all_ideals(E)) {
      if (J[E.one()]) continue;
      auto q = quotient(E, J);
      auto f = projection(E, q);
      auto const& F = q.algebra;
      for (auto const& I : all_ideals(E)) {
        if (!subset_of(J, I)) continue;
        ElementSet img = empty_set(F.size());
        for (int x = 0; x < E.n(); ++x)
          if (I[x]) img[f(x)] = true;
        EXPECT_TRUE(oracle::ideal(F, img)) << name;
        if (I[E.one()]) continue;
        if (is_strict(E, I).holds()) EXPECT_TRUE(is_strict(F, img).holds()) << name;
        if (is_prime(E, I).holds()) EXPECT_TRUE(is_prime(F, img).holds()) << name;
      }
    }
  }
}
