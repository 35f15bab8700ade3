#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "test_util.hpp"
#include "tropnet/network.hpp"

using namespace tropnet;
using namespace tropnet::test;

namespace {

// relu(x - y), relu(2x - 1) -> 3 h1 - h2 + 1/2.
Network tiny(bool final_activation) {
  std::vector<Layer> layers;
  layers.push_back({M({{1, -1}, {2, 0}}), V({0, -1})});
  layers.push_back({M({{3, -1}}), {Q("1/2")}});
  return Network(layers, final_activation);
}

}  // namespace

TEST(Network, Validation) {
  EXPECT_THROW(Network(std::vector<Layer>{}), std::invalid_argument);
  EXPECT_THROW(Network(std::vector<Layer>{Layer{M({{1, 2}}), V({0, 0})}}), std::invalid_argument);
  std::vector<Layer> bad{{M({{1, 2}}), V({0})}, {M({{1, 1}}), V({0})}};
  EXPECT_THROW(Network{bad}, std::invalid_argument);
  EXPECT_THROW(forward(tiny(false), V({1})), std::invalid_argument);
  EXPECT_THROW(random_network({3}, 0), std::invalid_argument);
  EXPECT_THROW(build_invariant(1, 1, 1), std::invalid_argument);
}

TEST(Network, ForwardByHand) {
  const Network net = tiny(false);
  EXPECT_EQ(net.architecture(), (std::vector<std::size_t>{2, 2, 1}));
  // x = (1, 0): h = (1, 1) -> 3 - 1 + 1/2.
  EXPECT_EQ(forward(net, V({1, 0})), RationalVector{Q("5/2")});
  // x = (0, 1): h = (0, 0) -> 1/2.
  EXPECT_EQ(forward(net, V({0, 1})), RationalVector{Q("1/2")});
  // x = (2, 0): h = (2, 3) -> 6 - 3 + 1/2.
  EXPECT_EQ(forward(net, V({2, 0})), RationalVector{Q("7/2")});
  // x = (0, 3): h = (0, 0); a negative output is clipped only with the final ReLU.
  const Network neg({{M({{1}}), V({0})}, {M({{-1}}), V({-1})}}, false);
  EXPECT_EQ(forward(neg, V({3})), RationalVector{-4});
  const Network clipped({{M({{1}}), V({0})}, {M({{-1}}), V({-1})}}, true);
  EXPECT_EQ(forward(clipped, V({3})), RationalVector{0});
}

TEST(Network, JacobianByHand) {
  const Network net = tiny(false);
  EXPECT_EQ(jacobian(net, std::vector<double>{1.0, 0.0}).entries, (std::vector<double>{1, -3}));
  EXPECT_EQ(jacobian(net, std::vector<double>{0.0, 1.0}).entries, (std::vector<double>{0, 0}));
  // Preactivation exactly 0 counts as inactive: x = (0.5, 0.5).
  EXPECT_EQ(jacobian(net, std::vector<double>{0.5, 0.5}).entries, (std::vector<double>{0, 0}));
  EXPECT_EQ(jacobian(net, std::vector<double>{0.25, 0.0}).entries, (std::vector<double>{3, -3}));
}

TEST(Network, Round10) {
  EXPECT_EQ(round10(0.12345678901234), 0.1234567890);
  EXPECT_EQ(round10(2.0), 2.0);
  EXPECT_EQ(round10(-3.00000000004), -3.0);
  const double z = round10(-1e-13);
  EXPECT_EQ(z, 0.0);
  EXPECT_FALSE(std::signbit(z));
}

// forward_double matches exact forward on exactified points; the Jacobian
// matches a central finite difference away from kinks.
TEST(NetworkProperty, DoubleAgreesWithExact) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Network net = random_network({3, 4, 3, 2}, 100 + trial, trial % 2 == 0);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> x(3);
      for (auto& v : x) v = uniform(rng, -2, 2);
      const auto exact = forward(net, exactify(x));
      const auto approx = forward_double(net, x);
      for (std::size_t o = 0; o < 2; ++o) EXPECT_NEAR(approx[o], exact[o].get_d(), 1e-12);

      const auto J = jacobian_raw(net, x);
      const double h = 1e-7;
      for (std::size_t j = 0; j < 3; ++j) {
        auto xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const auto fp = forward_double(net, xp), fm = forward_double(net, xm);
        for (std::size_t o = 0; o < 2; ++o) {
          // A kink inside [x - h, x + h] is astronomically unlikely; allow it anyway.
          const double fd = (fp[o] - fm[o]) / (2 * h);
          if (std::abs(fd - J[o * 3 + j]) > 1e-5) ADD_FAILURE() << "jacobian mismatch, trial " << trial;
        }
      }
    }
  }
}

TEST(Network, RandomNetworkInit) {
  const Network a = random_network({4, 5, 1}, 7, true, true);
  const Network b = random_network({4, 5, 1}, 7, true, true);
  EXPECT_EQ(a.layers()[0].weights, b.layers()[0].weights);
  EXPECT_TRUE(a.final_activation());
  EXPECT_EQ(a.architecture(), (std::vector<std::size_t>{4, 5, 1}));
  EXPECT_NE(random_network({4, 5, 1}, 8).layers()[0].weights, a.layers()[0].weights);
  for (const auto& layer : a.layers()) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weights.cols()));
    for (const auto& w : layer.weights.entries()) EXPECT_LE(std::abs(w.get_d()), bound);
    for (const auto& c : layer.bias) EXPECT_LE(std::abs(c.get_d()), bound);
  }
  // Without bias the weights are unchanged: biases are still drawn, then zeroed.
  const Network nb = random_network({4, 5, 1}, 7, true, false);
  EXPECT_EQ(nb.layers()[1].weights, a.layers()[1].weights);
  for (const auto& layer : nb.layers()) {
    for (const auto& c : layer.bias) EXPECT_EQ(c, 0);
  }
}

TEST(NetworkProperty, InvariantNetIsSymmetric) {
  Rng rng(2);
  for (std::size_t n : {2, 3, 4}) {
    const Network net = build_invariant(n, 0.7, -0.3);
    EXPECT_EQ(net.architecture(), (std::vector<std::size_t>{n, n, 1}));
    for (int k = 0; k < 20; ++k) {
      RationalVector x = random_point(rng, n);
      const auto fx = forward(net, x);
      std::shuffle(x.begin(), x.end(), rng);
      EXPECT_EQ(forward(net, x), fx);
    }
  }
}
