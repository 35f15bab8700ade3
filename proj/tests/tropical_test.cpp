#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "test_util.hpp"

using namespace tropnet;
using namespace tropnet::test;

namespace {

// The four one-variable polynomials of the worked examples.
TropicalPolynomial item(int k) {
  switch (k) {
    case 1: return poly(1, {{0, {0}}, {1, {1}}, {1, {2}}});
    case 2: return poly(1, {{1, {1}}, {0, {2}}});
    case 3: return poly(1, {{1, {0}}, {1, {1}}, {1, {2}}});
    default: return poly(1, {{1, {2}}, {1, {3}}, {2, {4}}});
  }
}

Polyhedron interval(std::initializer_list<std::pair<long, Rational>> rows) {
  std::vector<RationalVector> A;
  RationalVector b;
  for (const auto& [a, c] : rows) {
    A.push_back({Rational(a)});
    b.push_back(c);
  }
  return Polyhedron(ExactMatrix::from_rows(A), b);
}

}  // namespace

TEST(TropicalPolynomial, Canonicalizes) {
  const auto f = poly(2, {{3, {1, 0}}, {1, {0, 0}}, {5, {1, 0}}, {-2, {0, 1}}});
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].exps, V({0, 0}));
  EXPECT_EQ(f[1].exps, V({0, 1}));
  EXPECT_EQ(f[2].exps, V({1, 0}));
  EXPECT_EQ(f[2].coeff, 5);
}

TEST(TropicalPolynomial, Validation) {
  EXPECT_THROW(TropicalPolynomial(1, {}), std::invalid_argument);
  EXPECT_THROW(poly(2, {{0, {1}}}), std::invalid_argument);
  EXPECT_THROW(poly(1, {{0, {-1}}}), std::invalid_argument);
  EXPECT_THROW(TropicalPolynomial::variable(2, 2), std::out_of_range);
  EXPECT_THROW(TropicalRationalMap(item(1), TropicalPolynomial::constant(2, 0)), std::invalid_argument);
  EXPECT_THROW(power(item(1), -1), std::invalid_argument);
}

TEST(TropicalPolynomial, EvaluateExamples) {
  const auto f = item(1);
  EXPECT_EQ(evaluate(f, V({-3})), 0);
  EXPECT_EQ(evaluate(f, V({0})), 1);
  EXPECT_EQ(evaluate(f, V({2})), 5);
  EXPECT_EQ(evaluate_min(f, V({2})), 0);
  EXPECT_EQ(evaluate(f, RationalVector{Q("-1/2")}), Q("1/2"));
  const TropicalRationalMap g(item(1), item(2));
  EXPECT_EQ(evaluate(g, V({2})), 5 - 4);
  const auto t = f.term(2);
  EXPECT_EQ(t.gradient, V({2}));
  EXPECT_EQ(t.intercept, 1);
}

TEST(TropicalPolynomial, Constructors) {
  const auto c = TropicalPolynomial::constant(2, Q("3/4"));
  EXPECT_EQ(evaluate(c, V({5, -7})), Q("3/4"));
  const auto v = TropicalPolynomial::variable(2, 1, 2);
  EXPECT_EQ(evaluate(v, V({5, -7})), -5);
  EXPECT_EQ(v.exponent_matrix(), M({{0, 1}}));
}

// Semiring operations agree with max / + / scaling pointwise.
TEST(TropicalProperty, OperationsArePointwise) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 3);
    const auto a = random_polynomial(n, 1 + uniform_index(rng, 4), rng());
    const auto b = random_polynomial(n, 1 + uniform_index(rng, 4), rng());
    const Rational c = random_rational(rng, 3, 4) + 3;  // nonnegative
    const auto sum = oplus(a, b), prod = otimes(a, b), pw = power(a, c);
    for (int k = 0; k < 5; ++k) {
      const RationalVector x = random_point(rng, n);
      EXPECT_EQ(evaluate(sum, x), std::max(evaluate(a, x), evaluate(b, x)));
      EXPECT_EQ(evaluate(prod, x), evaluate(a, x) + evaluate(b, x));
      EXPECT_EQ(evaluate(pw, x), c * evaluate(a, x));
    }
    EXPECT_EQ(oplus(a, a), a);
    EXPECT_EQ(oplus(a, b), oplus(b, a));
    EXPECT_EQ(otimes(a, b), otimes(b, a));
  }
}

TEST(TropicalExamples, MonomialRegions) {
  const auto f1 = item(1);
  EXPECT_TRUE(same_set(monomial_region(f1, 0), interval({{1, -1}})));
  EXPECT_TRUE(same_set(monomial_region(f1, 1), interval({{1, 0}, {-1, 1}})));
  EXPECT_TRUE(same_set(monomial_region(f1, 2), interval({{-1, 0}})));

  const auto f2 = item(2);
  EXPECT_TRUE(same_set(monomial_region(f2, 0), interval({{1, 1}})));
  EXPECT_TRUE(same_set(monomial_region(f2, 1), interval({{-1, -1}})));

  const auto f3 = item(3);
  EXPECT_TRUE(same_set(monomial_region(f3, 0), interval({{1, 0}})));
  EXPECT_TRUE(same_set(monomial_region(f3, 1), interval({{1, 0}, {-1, 0}})));
  EXPECT_TRUE(same_set(monomial_region(f3, 2), interval({{-1, 0}})));

  const auto f4 = item(4);
  EXPECT_TRUE(same_set(monomial_region(f4, 0), interval({{1, Q("-1/2")}})));
  EXPECT_TRUE(is_empty(monomial_region(f4, 1)));
  EXPECT_TRUE(same_set(monomial_region(f4, 2), interval({{-1, Q("1/2")}})));
}

TEST(TropicalExamples, Redundancy) {
  EXPECT_TRUE(redundant_monomials(item(1)).empty());
  EXPECT_TRUE(redundant_monomials(item(2)).empty());
  EXPECT_EQ(redundant_monomials(item(3)), std::vector<std::size_t>{1});
  EXPECT_EQ(redundant_monomials(item(4)), std::vector<std::size_t>{1});
  EXPECT_EQ(prune(item(3)), poly(1, {{1, {0}}, {1, {2}}}));
  EXPECT_EQ(prune(item(4)), poly(1, {{1, {2}}, {2, {4}}}));
  EXPECT_EQ(monomial_complexity(TropicalRationalMap(item(3), item(4))), (std::pair<std::size_t, std::size_t>{2, 2}));
}

// Pruning never changes the function and leaves only irredundant terms.
TEST(TropicalProperty, PruneKeepsFunction) {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 2);
    const auto f = random_polynomial(n, 2 + uniform_index(rng, 6), rng());
    const auto g = prune(f);
    EXPECT_LE(g.size(), f.size());
    EXPECT_TRUE(redundant_monomials(g).empty());
    for (int k = 0; k < 10; ++k) {
      const RationalVector x = random_point(rng, n, 6, 4);
      EXPECT_EQ(evaluate(f, x), evaluate(g, x));
    }
  }
}

// A monomial attaining the max strictly at some point is never redundant.
TEST(TropicalProperty, StrictWinnersSurvivePruning) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_polynomial(2, 5, rng());
    const auto drop = redundant_monomials(f);
    for (int k = 0; k < 30; ++k) {
      const RationalVector x = random_point(rng, 2, 8, 4);
      std::size_t best = 0, ties = 0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        const Rational v = f.term(i)(x);
        if (v > f.term(best)(x)) best = i, ties = 0;
        else if (i != best && v == f.term(best)(x)) ++ties;
      }
      if (ties == 0) EXPECT_FALSE(std::binary_search(drop.begin(), drop.end(), best));
    }
  }
}

TEST(TropicalPolynomial, RandomIsDeterministic) {
  const auto a = random_polynomial(3, 6, 42);
  EXPECT_EQ(a, random_polynomial(3, 6, 42));
  for (const auto& m : a.monomials()) {
    EXPECT_GE(m.coeff, 0);
    EXPECT_LT(m.coeff, 1);
    for (const auto& e : m.exps) {
      EXPECT_GE(e, 0);
      EXPECT_LT(e, 1);
    }
  }
}

TEST(AffineMap, OrderAndDifference) {
  const AffineMap a{V({1, 2}), 3}, b{V({1, 2}), 4}, c{V({0, 5}), 0};
  EXPECT_TRUE(a < b);
  EXPECT_TRUE(c < a);
  EXPECT_EQ(b - a, (AffineMap{V({0, 0}), 1}));
  EXPECT_EQ(a(V({1, 1})), 6);
}
