#include "tropnet/network.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "tropnet/rng.hpp"

namespace tropnet {

Network::Network(std::vector<Layer> layers, bool final_activation)
    : layers_(std::move(layers)), final_activation_(final_activation) {
  if (layers_.empty()) throw std::invalid_argument("Network: no layers");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    if (layer.weights.rows() == 0 || layer.weights.cols() == 0) {
      throw std::invalid_argument("Network: layer " + std::to_string(l) + " is empty");
    }
    if (layer.bias.size() != layer.weights.rows()) {
      throw std::invalid_argument("Network: layer " + std::to_string(l) + " has " +
                                  std::to_string(layer.weights.rows()) + " units but " +
                                  std::to_string(layer.bias.size()) + " biases");
    }
    if (l > 0 && layer.weights.cols() != layers_[l - 1].weights.rows()) {
      throw std::invalid_argument("Network: layer " + std::to_string(l) + " expects " +
                                  std::to_string(layer.weights.cols()) + " inputs, previous layer has " +
                                  std::to_string(layers_[l - 1].weights.rows()) + " units");
    }
    wd_.push_back(to_double(layer.weights.entries()));
    bd_.push_back(to_double(layer.bias));
  }
}

std::vector<std::size_t> Network::architecture() const {
  std::vector<std::size_t> arch{input_dim()};
  for (const auto& layer : layers_) arch.push_back(layer.weights.rows());
  return arch;
}

RationalVector forward(const Network& net, std::span<const Rational> x) {
  if (x.size() != net.input_dim()) {
    throw std::invalid_argument("forward: expected " + std::to_string(net.input_dim()) +
                                " inputs, got " + std::to_string(x.size()));
  }
  RationalVector h(x.begin(), x.end());
  const auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    RationalVector z = layers[l].weights.multiply(h);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += layers[l].bias[i];
    if (l + 1 < layers.size() || net.final_activation()) {
      for (auto& v : z) {
        if (sgn(v) < 0) v = 0;
      }
    }
    h = std::move(z);
  }
  return h;
}

std::vector<double> forward_double(const Network& net, std::span<const double> x) {
  if (x.size() != net.input_dim()) throw std::invalid_argument("forward_double: length mismatch");
  std::vector<double> h(x.begin(), x.end());
  const std::size_t depth = net.layers().size();
  for (std::size_t l = 0; l < depth; ++l) {
    const auto& w = net.weights_double()[l];
    const auto& b = net.bias_double()[l];
    const std::size_t in = h.size();
    std::vector<double> z(b);
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (std::size_t j = 0; j < in; ++j) z[i] += w[i * in + j] * h[j];
    }
    if (l + 1 < depth || net.final_activation()) {
      for (auto& v : z) v = v > 0 ? v : 0.0;
    }
    h = std::move(z);
  }
  return h;
}

double round10(double v) {
  const double r = std::round(v * 1e10) / 1e10;
  return r == 0.0 ? 0.0 : r;
}

std::vector<double> jacobian_raw(const Network& net, std::span<const double> x) {
  if (x.size() != net.input_dim()) throw std::invalid_argument("jacobian: length mismatch");
  const std::size_t n0 = x.size();
  std::vector<double> h(x.begin(), x.end());
  // J is (current width) x n0.
  std::vector<double> J(n0 * n0, 0.0);
  for (std::size_t k = 0; k < n0; ++k) J[k * n0 + k] = 1.0;
  const std::size_t depth = net.layers().size();
  for (std::size_t l = 0; l < depth; ++l) {
    const auto& w = net.weights_double()[l];
    const auto& b = net.bias_double()[l];
    const std::size_t in = h.size();
    const std::size_t out = b.size();
    std::vector<double> z(b);
    std::vector<double> nj(out * n0, 0.0);
    for (std::size_t i = 0; i < out; ++i) {
      for (std::size_t j = 0; j < in; ++j) {
        const double wij = w[i * in + j];
        z[i] += wij * h[j];
        for (std::size_t k = 0; k < n0; ++k) nj[i * n0 + k] += wij * J[j * n0 + k];
      }
    }
    if (l + 1 < depth || net.final_activation()) {
      for (std::size_t i = 0; i < out; ++i) {
        if (z[i] > 0) continue;
        z[i] = 0.0;
        for (std::size_t k = 0; k < n0; ++k) nj[i * n0 + k] = 0.0;
      }
    }
    h = std::move(z);
    J = std::move(nj);
  }
  return J;
}

JacobianSignature jacobian(const Network& net, std::span<const double> x) {
  JacobianSignature sig{jacobian_raw(net, x)};
  for (auto& v : sig.entries) v = round10(v);
  return sig;
}

Network build_invariant(std::size_t n, double lambda, double gamma) {
  if (n < 2) throw std::invalid_argument("build_invariant: need n >= 2");
  const Rational l = exactify(lambda);
  const Rational g = exactify(gamma);
  ExactMatrix W(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) W(i, j) = i == j ? Rational(l + g) : g;
  }
  ExactMatrix ones(1, n);
  for (std::size_t j = 0; j < n; ++j) ones(0, j) = 1;
  std::vector<Layer> layers;
  layers.push_back({std::move(W), RationalVector(n)});
  layers.push_back({std::move(ones), RationalVector(1)});
  return Network(std::move(layers), false);
}

Network random_network(const std::vector<std::size_t>& architecture, std::uint64_t seed,
                       bool final_activation, bool with_bias) {
  if (architecture.size() < 2) throw std::invalid_argument("random_network: need >= 2 widths");
  Rng rng(seed);
  std::vector<Layer> layers;
  for (std::size_t l = 1; l < architecture.size(); ++l) {
    const std::size_t in = architecture[l - 1];
    const std::size_t out = architecture[l];
    if (in == 0 || out == 0) throw std::invalid_argument("random_network: zero width");
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    ExactMatrix W(out, in);
    for (std::size_t i = 0; i < out; ++i) {
      for (std::size_t j = 0; j < in; ++j) W(i, j) = exactify(uniform(rng, -bound, bound));
    }
    RationalVector b(out);
    for (auto& v : b) {
      const double d = uniform(rng, -bound, bound);
      v = with_bias ? exactify(d) : Rational(0);
    }
    layers.push_back({std::move(W), std::move(b)});
  }
  return Network(std::move(layers), final_activation);
}

}  // namespace tropnet
