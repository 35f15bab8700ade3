#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "test_util.hpp"
#include "tropnet/parallel.hpp"
#include "tropnet/regions.hpp"
#include "tropnet/sampling.hpp"

using namespace tropnet;
using namespace tropnet::test;

namespace {

// relu(x) - 2 relu(x - 1) + relu(x - 2): zero on both sides of a bump.
Network bump() {
  std::vector<Layer> layers;
  layers.push_back({M({{1}, {1}, {1}}), V({0, -1, -2})});
  layers.push_back({M({{1, -2, 1}}), V({0})});
  return Network(layers, false);
}

SampleConfig config(double R, std::size_t N, std::uint64_t seed = 0) {
  SampleConfig c;
  c.R = R;
  c.N = N;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(SamplePoints, Uniform) {
  const auto cfg = config(3, 500, 4);
  const auto pts = sample_points(2, cfg);
  ASSERT_EQ(pts.size(), 500u);
  for (const auto& p : pts) {
    ASSERT_EQ(p.size(), 2u);
    for (double v : p) {
      EXPECT_GE(v, -3);
      EXPECT_LT(v, 3);
    }
  }
  EXPECT_EQ(pts, sample_points(2, cfg));
  EXPECT_NE(pts, sample_points(2, config(3, 500, 5)));
}

TEST(SamplePoints, GridAndCone) {
  auto cfg = config(2, 30);
  cfg.scheme = SampleScheme::kGrid;
  const auto pts = sample_points(2, cfg);
  // round(sqrt 30) = 5 points per axis.
  ASSERT_EQ(pts.size(), 25u);
  EXPECT_EQ(pts.front(), (std::vector<double>{-2, -2}));
  EXPECT_EQ(pts.back(), (std::vector<double>{2, 2}));
  EXPECT_EQ(pts[1], (std::vector<double>{-1, -2}));
  EXPECT_EQ(to_string(SampleScheme::kGrid), "grid");

  auto cone = config(1, 200, 3);
  cone.restrict_to_fundamental = true;
  for (const auto& p : sample_points(3, cone)) EXPECT_TRUE(std::is_sorted(p.rbegin(), p.rend()));
}

TEST(SamplePoints, Errors) {
  EXPECT_THROW(sample_points(2, config(0, 10)), std::invalid_argument);
  EXPECT_THROW(sample_points(2, config(1, 0)), std::invalid_argument);
  EXPECT_THROW(estimate_regions(random_network({2, 2, 2}, 0), config(1, 10)), std::invalid_argument);
}

TEST(Estimate, Simple) {
  const Network affine({{M({{2, -1}}), V({1})}}, false);
  EXPECT_EQ(estimate_regions(affine, config(5, 300)).count, 1);
  const Network relu({{M({{1}}), V({0})}}, true);
  const auto est = estimate_regions(relu, config(1, 300));
  EXPECT_EQ(est.count, 2);
  ASSERT_EQ(est.signatures.size(), 2u);
  EXPECT_EQ(est.signatures[0].entries, std::vector<double>{0});
  EXPECT_EQ(est.signatures[1].entries, std::vector<double>{1});
  EXPECT_EQ(est.points, 300u);
}

// The two zero pieces share a signature; the midpoint test keeps them apart.
TEST(Estimate, MidpointTestSeparatesDisjointPieces) {
  const auto est = estimate_regions(bump(), config(5, 2000, 1));
  EXPECT_EQ(est.signatures.size(), 3u);
  EXPECT_EQ(est.count, 4);
  EXPECT_EQ(network_regions(bump()).size(), 4u);
}

TEST(Estimate, DeterministicAndThreadIndependent) {
  const Network net = random_network({2, 6, 1}, 3);
  set_thread_count(1);
  const auto a = estimate_regions(net, config(10, 3000, 2));
  set_thread_count(3);
  const auto b = estimate_regions(net, config(10, 3000, 2));
  set_thread_count(0);
  EXPECT_EQ(a.count, b.count);
  EXPECT_EQ(a.signatures, b.signatures);
}

// Every numeric signature belongs to an exact region with that gradient.
TEST(EstimateProperty, SignaturesMatchExactGradients) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Network net = random_network({2, 4, 1}, seed);
    std::vector<JacobianSignature> exact;
    for (const auto& r : network_regions(net)) {
      JacobianSignature s{to_double(r.map.gradient)};
      for (auto& v : s.entries) v = round10(v);
      exact.push_back(s);
    }
    const auto est = estimate_regions(net, config(20, 3000, seed));
    EXPECT_LE(est.count, static_cast<double>(exact.size()));
    for (const auto& sig : est.signatures) EXPECT_NE(std::find(exact.begin(), exact.end(), sig), exact.end());
  }
}

TEST(Multiplicity, HandValues) {
  EXPECT_EQ(multiplicity({{3, 2, 1}}, 3), 6u);
  EXPECT_EQ(multiplicity({{1, 1, 2}}, 3), 3u);
  EXPECT_EQ(multiplicity({{5, 5, 5}}, 3), 1u);
  EXPECT_EQ(multiplicity({{1, 1, 2, 2}}, 4), 6u);
  EXPECT_EQ(multiplicity({{0, 0}}, 2), 1u);
  EXPECT_THROW(multiplicity({{1, 2}}, 3), std::invalid_argument);
}

TEST(Fundamental, UsesFewerPoints) {
  const Network net = build_invariant(3, 0.5, -0.2);
  const auto est = estimate_regions_fundamental(net, config(20, 1000, 1));
  EXPECT_EQ(est.points, 167u);  // ceil(1000 / 6)
  EXPECT_GT(est.count, 0);
}

TEST(FundamentalProperty, BoundsBracketExactCount) {
  Rng rng(6);
  for (int trial = 0; trial < 4; ++trial) {
    const Network net = build_invariant(2, uniform(rng, -1, 1), uniform(rng, -1, 1));
    const auto regions = network_regions(net);
    const auto [lo, hi] = fundamental_bounds(regions, 2);
    EXPECT_LE(lo, regions.size());
    EXPECT_GE(hi, regions.size());
  }
}
