#include <gtest/gtest.h>

#include "test_util.hpp"
#include "tropnet/parallel.hpp"
#include "tropnet/tropicalize.hpp"

using namespace tropnet;
using namespace tropnet::test;

TEST(Tropicalize, SingleNeuron) {
  // relu(x - 1) = max(x - 1, 0) - 0.
  const Network net({{M({{1}}), V({-1})}}, true);
  const auto f = tropicalize(net);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].numerator, poly(1, {{0, {0}}, {-1, {1}}}));
  EXPECT_EQ(f[0].denominator, TropicalPolynomial::constant(1, 0));
}

TEST(Tropicalize, NegativeWeightGoesToDenominator) {
  // -2x + 3 without activation: numerator 3, denominator 2x.
  const Network net({{M({{-2}}), V({3})}}, false);
  const auto f = tropicalize(net).front();
  EXPECT_EQ(f.numerator, TropicalPolynomial::constant(1, 3));
  EXPECT_EQ(f.denominator, poly(1, {{0, {2}}}));
}

// Exact agreement with the forward pass on random nets and points.
TEST(TropicalizeProperty, MatchesForward) {
  Rng rng(99);
  const std::vector<std::vector<std::size_t>> archs{{2, 3, 1}, {3, 2, 1}, {2, 2, 2, 1}, {2, 3, 2}, {1, 4, 3, 1}};
  for (const auto& arch : archs) {
    for (int t = 0; t < 6; ++t) {
      const Network net = random_network(arch, 1000 + t, t % 2 == 1, t % 3 != 0);
      const auto maps = tropicalize(net);
      ASSERT_EQ(maps.size(), arch.back());
      for (int k = 0; k < 20; ++k) {
        const RationalVector x = random_point(rng, arch.front(), 5, 16);
        const RationalVector y = forward(net, x);
        for (std::size_t o = 0; o < maps.size(); ++o) EXPECT_EQ(evaluate(maps[o], x), y[o]);
      }
    }
  }
}

TEST(TropicalizeProperty, IndependentOfThreads) {
  const Network net = random_network({2, 4, 3, 1}, 5, true);
  set_thread_count(1);
  const auto a = tropicalize(net);
  set_thread_count(3);
  const auto b = tropicalize(net);
  set_thread_count(0);
  EXPECT_EQ(a.front().numerator, b.front().numerator);
  EXPECT_EQ(a.front().denominator, b.front().denominator);
}

TEST(Tropicalize, NativeCountsForThreeThreeSplit) {
  // Output weights (+,+,+,-,-,-): H and G' have 8 monomials each, and their
  // "all inactive" terms share an exponent, so the canonical sum has 15.
  const Network net = random_network({2, 6, 1}, 0, true);
  const auto t = tropicalize_with_counts(net);
  const auto& f = t.maps.front();
  EXPECT_EQ(f.numerator.size(), 15u);
  EXPECT_EQ(f.denominator.size(), 8u);
  EXPECT_EQ(t.formal_terms.front(), (std::pair<std::size_t, std::size_t>{16, 8}));
}
