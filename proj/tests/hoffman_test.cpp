#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "test_util.hpp"
#include "tropnet/hoffman.hpp"
#include "tropnet/regions.hpp"

using namespace tropnet;
using namespace tropnet::test;

namespace {

// Exact solution of a square system by Gaussian elimination, or nullopt if
// singular.
std::optional<RationalVector> solve_square(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// min ||A_J^T v||_1 over the simplex by brute force: the minimum sits at a
// point where sum v = 1 and |J| - 1 of the constraints v_i = 0 or
// (A_J^T v)_c = 0 are tight.
Rational vertex_oracle(const ExactMatrix& A, const std::vector<std::size_t>& J) {
  const std::size_t k = J.size(), n = A.cols();
  std::vector<RationalVector> cands;
  for (std::size_t i = 0; i < k; ++i) {
    RationalVector e(k);
    e[i] = 1;
    cands.push_back(e);
  }
  for (std::size_t c = 0; c < n; ++c) {
    RationalVector row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = A(J[i], c);
    cands.push_back(row);
  }
  std::optional<Rational> best;
  const std::size_t total = cands.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k - 1) continue;
    std::vector<RationalVector> sys{RationalVector(k, Rational(1))};
    RationalVector rhs{1};
    for (std::size_t c = 0; c < total; ++c) {
      if (mask >> c & 1U) {
        sys.push_back(cands[c]);
        rhs.push_back(0);
      }
    }
    const auto v = solve_square(sys, rhs);
    if (!v || std::any_of(v->begin(), v->end(), [](const Rational& x) { return sgn(x) < 0; })) continue;
    Rational norm = 0;
    for (std::size_t c = 0; c < n; ++c) {
      Rational s = 0;
      for (std::size_t i = 0; i < k; ++i) s += (*v)[i] * A(J[i], c);
      norm += abs(s);
    }
    if (!best || norm < *best) best = norm;
  }
  return *best;
}

ExactMatrix random_matrix(Rng& rng, std::size_t m, std::size_t n) {
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < m; ++i) rows.push_back(random_point(rng, n, 2, 4));
  return ExactMatrix::from_rows(rows);
}

}  // namespace

TEST(Surjectivity, Examples) {
  const auto A = M({{1}, {-1}});
  EXPECT_EQ(surjectivity_value(A, std::vector<std::size_t>{0, 1}), 0);
  EXPECT_EQ(surjectivity_value(A, std::vector<std::size_t>{0}), 1);
  const auto ones = M({{1, 1}, {1, 1}, {1, 1}});
  for (std::uint64_t mask = 1; mask < 8; ++mask) {
    std::vector<std::size_t> J;
    for (std::size_t i = 0; i < 3; ++i) {
      if (mask >> i & 1U) J.push_back(i);
    }
    EXPECT_GT(surjectivity_value(ones, J), 0);
  }
  EXPECT_THROW(surjectivity_value(A, std::vector<std::size_t>{}), std::invalid_argument);
  EXPECT_THROW(surjectivity_value(A, std::vector<std::size_t>{2}), std::out_of_range);
}

TEST(SurjectivityProperty, MatchesVertexEnumeration) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + uniform_index(rng, 4), n = 1 + uniform_index(rng, 3);
    const ExactMatrix A = random_matrix(rng, m, n);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<std::size_t> J;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask >> i & 1U) J.push_back(i);
      }
      EXPECT_EQ(surjectivity_value(A, J), vertex_oracle(A, J));
    }
  }
}

TEST(HoffmanExact, Examples) {
  EXPECT_EQ(hoffman_exact(M({{4}})).value, Q("1/4"));
  EXPECT_EQ(hoffman_exact(M({{-3}})).value, Q("1/3"));
  EXPECT_EQ(hoffman_exact(M({{1}, {-1}})).value, 1);
  EXPECT_EQ(hoffman_exact(ExactMatrix::identity(2)).value, 1);
  const auto r = hoffman_exact(M({{1, 0}, {0, 1}, {-1, -1}}));
  EXPECT_EQ(r.value, 2);
  EXPECT_EQ(r.witness_subset, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(hoffman_exact(M({{0, 0}})).value, 0);
  EXPECT_THROW(hoffman_exact(ExactMatrix(17, 2)), std::length_error);
  EXPECT_NO_THROW(hoffman_exact(ExactMatrix(3, 1), 3));
}

TEST(HoffmanLower, Examples) {
  const auto A = M({{1, 2}, {3, -1}, {-2, 1}});
  EXPECT_EQ(hoffman_lower(A, 200, 1).value, hoffman_exact(A).value);
  // Only {0, 1} is non-surjective for [[1], [-1]]; some single draw hits it.
  bool saw_zero = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto r = hoffman_lower(M({{1}, {-1}}), 1, seed);
    EXPECT_LE(r.value, 1);
    saw_zero = saw_zero || r.value == 0;
  }
  EXPECT_TRUE(saw_zero);
  EXPECT_EQ(hoffman_lower(A, 5, 9).value, hoffman_lower(A, 5, 9).value);
  EXPECT_THROW(hoffman_lower(A, 0, 0), std::invalid_argument);
}

TEST(HoffmanUpper, Examples) {
  EXPECT_NEAR(hoffman_upper(ExactMatrix::identity(3)).approx, 1.0, 1e-8);
  ExactMatrix D(2, 2);
  D(0, 0) = 2;
  D(1, 1) = Q("1/2");
  EXPECT_NEAR(hoffman_upper(D).approx, 2.0, 1e-8);
  UpperMode sampled{false, 50, 3};
  EXPECT_LE(hoffman_upper(D, sampled).approx, hoffman_upper(D).approx);
}

TEST(HoffmanUpper, SingularValues) {
  EXPECT_NEAR(smallest_singular_value({3, 0, 0, 4}, 2, 2), 3.0, 1e-12);
  EXPECT_NEAR(smallest_singular_value({1, 1, 1, 1}, 2, 2), 0.0, 1e-12);
  // [[1,0],[-1,-1]]: sigma_min^2 = (3 - sqrt 5) / 2.
  EXPECT_NEAR(smallest_singular_value({1, 0, -1, -1}, 2, 2), std::sqrt((3 - std::sqrt(5.0)) / 2), 1e-12);
  // 3x2 and 2x3 shapes agree with the transpose.
  EXPECT_NEAR(smallest_singular_value({1, 2, 3, 4, 5, 6}, 3, 2), smallest_singular_value({1, 3, 5, 2, 4, 6}, 2, 3), 1e-12);
}

// 1/sigma_min bounds the 2-norm constant; for the infinity-norm constant the
// normalisation ||v||_1 = 1 only gives ||v||_2 >= 1/sqrt|J|, and the bound
// can fail. This matrix is the smallest case found.
TEST(HoffmanUpper, SingularValueBoundIsNotAnInfinityNormBound) {
  const auto A = M({{1, 0}, {0, 1}, {-1, -1}});
  EXPECT_GT(hoffman_exact(A).value.get_d(), hoffman_upper(A).approx);
  EXPECT_LE(hoffman_exact(A).value.get_d(), std::sqrt(2.0) * hoffman_upper(A).approx);
}

TEST(HoffmanProperty, ScaleCovariance) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const ExactMatrix A = random_matrix(rng, 1 + uniform_index(rng, 4), 1 + uniform_index(rng, 3));
    Rational c = random_rational(rng, 3, 5);
    if (sgn(c) == 0) c = 1;
    c = abs(c);
    EXPECT_EQ(hoffman_exact(A.scaled(c)).value, hoffman_exact(A).value / c);
  }
}

TEST(HoffmanProperty, LowerNeverExceedsExact) {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const ExactMatrix A = random_matrix(rng, 2 + uniform_index(rng, 4), 1 + uniform_index(rng, 3));
    EXPECT_LE(hoffman_lower(A, 8, trial).value, hoffman_exact(A).value);
  }
}

TEST(HoffmanTropical, DifferenceMatrices) {
  // Canonical order: exponents (0,0), (0,2), (1,0).
  const auto f = poly(2, {{0, {0, 0}}, {0, {1, 0}}, {1, {0, 2}}});
  EXPECT_EQ(difference_matrix(f, 1), M({{0, -2}, {0, 0}, {1, -2}}));
  const TropicalRationalMap g(f, poly(2, {{0, {1, 1}}, {0, {0, 0}}}));
  EXPECT_EQ(difference_matrix(g, 0, 1), M({{0, 0}, {0, 2}, {1, 0}, {-1, -1}, {0, 0}}));
  EXPECT_THROW(difference_matrix(f, 3), std::out_of_range);
}

TEST(HoffmanTropical, Examples) {
  const auto item1 = poly(1, {{0, {0}}, {1, {1}}, {1, {2}}});
  const auto h = hoffman_tropical(item1);
  ASSERT_TRUE(h.exact.has_value());
  EXPECT_EQ(h.exact->value, 1);
  EXPECT_EQ(hoffman_tropical(poly(2, {{3, {1, 2}}})).exact->value, 0);
  const TropicalRationalMap over_const(item1, TropicalPolynomial::constant(1, 0));
  EXPECT_EQ(hoffman_tropical(over_const).exact->value, h.exact->value);
}

TEST(HoffmanTropicalProperty, ConstantDenominatorAgreesOnPrunedPolynomials) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto p = prune(random_polynomial(2, 4, seed));
    const auto a = hoffman_tropical(p);
    const auto b = hoffman_tropical(TropicalRationalMap(p, TropicalPolynomial::constant(2, 0)));
    EXPECT_EQ(a.exact->value, b.exact->value);
    EXPECT_LE(a.lower.value, a.exact->value);
  }
}

TEST(HoffmanTropical, CapFallsBackToBounds) {
  const TropicalRationalMap f(random_polynomial(2, 9, 1), random_polynomial(2, 9, 2));
  const auto h = hoffman_tropical(f, {16, 4, 0});
  EXPECT_FALSE(h.exact.has_value());
  EXPECT_GT(h.upper.approx, 0);
  EXPECT_GT(h.lower.value, 0);
}

TEST(Radius, Examples) {
  const TropicalRationalMap constants(TropicalPolynomial::constant(2, 3), TropicalPolynomial::constant(2, 1));
  EXPECT_EQ(radius_bound(constants, V({4, 5}), hoffman_tropical(constants)), 0);
  const TropicalRationalMap single(poly(1, {{2, {3}}}), TropicalPolynomial::constant(1, 0));
  EXPECT_EQ(radius_bound(single, V({7}), Rational(5)), 0);

  const auto item1 = poly(1, {{0, {0}}, {1, {1}}, {1, {2}}});
  const TropicalRationalMap f(item1, TropicalPolynomial::constant(1, 0));
  const Rational r = radius_bound(f, V({0}), hoffman_tropical(f));
  EXPECT_EQ(r, 1);
  const Polyhedron ball = P({{1}, {-1}}, {1, 1});
  for (const auto& region : rational_regions(f)) {
    bool hit = false;
    for (const auto& piece : region.pieces) hit = hit || intersects(piece, ball);
    EXPECT_TRUE(hit);
  }
}
