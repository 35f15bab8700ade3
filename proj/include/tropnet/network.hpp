#ifndef TROPNET_NETWORK_HPP
#define TROPNET_NETWORK_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tropnet/exact.hpp"

namespace tropnet {

struct Layer {
  ExactMatrix weights;  // out x in
  RationalVector bias;
};

// Fully connected ReLU network. The ReLU after the last layer is applied
// only when final_activation is set.
class Network {
 public:
  Network(std::vector<Layer> layers, bool final_activation = false);

  const std::vector<Layer>& layers() const { return layers_; }
  bool final_activation() const { return final_activation_; }
  std::vector<std::size_t> architecture() const;
  std::size_t input_dim() const { return layers_.front().weights.cols(); }
  std::size_t output_dim() const { return layers_.back().weights.rows(); }

  // Double copies of the exact weights, for sampling.
  const std::vector<std::vector<double>>& weights_double() const { return wd_; }
  const std::vector<std::vector<double>>& bias_double() const { return bd_; }

 private:
  std::vector<Layer> layers_;
  bool final_activation_;
  std::vector<std::vector<double>> wd_;
  std::vector<std::vector<double>> bd_;
};

RationalVector forward(const Network& net, std::span<const Rational> x);
std::vector<double> forward_double(const Network& net, std::span<const double> x);

// Rounded Jacobian, row-major (output_dim x input_dim).
struct JacobianSignature {
  std::vector<double> entries;

  auto operator<=>(const JacobianSignature&) const = default;
};

// Round half away from zero to 10 decimals; -0 becomes 0.
double round10(double v);

// Unrounded Jacobian in double precision. A unit is active iff its
// preactivation is > 0.
std::vector<double> jacobian_raw(const Network& net, std::span<const double> x);
JacobianSignature jacobian(const Network& net, std::span<const double> x);

// x -> sum_i relu((lambda I + gamma 11^T) x)_i.
Network build_invariant(std::size_t n, double lambda, double gamma);

// Weights and biases uniform on [-1/sqrt(fan_in), 1/sqrt(fan_in)); biases are
// zero when with_bias is false.
Network random_network(const std::vector<std::size_t>& architecture, std::uint64_t seed,
                       bool final_activation = false, bool with_bias = true);

}  // namespace tropnet

#endif  // TROPNET_NETWORK_HPP
