#include "tropnet/tropicalize.hpp"

#include <optional>
#include <utility>

#include "tropnet/parallel.hpp"

namespace tropnet {

namespace {

// acc times f^c for every (f, c) in factors.
TropicalPolynomial product(TropicalPolynomial acc,
                           const std::vector<std::pair<const TropicalPolynomial*, Rational>>& factors) {
  for (const auto& [f, c] : factors) acc = otimes(acc, power(*f, c));
  return acc;
}

}  // namespace

Tropicalization tropicalize_with_counts(const Network& net) {
  Tropicalization out;
  const std::size_t n = net.input_dim();
  std::vector<TropicalPolynomial> F;
  std::vector<TropicalPolynomial> G;
  for (std::size_t i = 0; i < n; ++i) {
    F.push_back(TropicalPolynomial::variable(n, i));
    G.push_back(TropicalPolynomial::constant(n, 0));
  }

  const auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const ExactMatrix& W = layers[l].weights;
    const bool activate = l + 1 < layers.size() || net.final_activation();
    std::vector<std::optional<TropicalPolynomial>> nextF(W.rows());
    std::vector<std::optional<TropicalPolynomial>> nextG(W.rows());
    std::vector<std::pair<std::size_t, std::size_t>> terms(W.rows());
    parallel_for(W.rows(), [&](std::size_t k) {
      std::vector<std::pair<const TropicalPolynomial*, Rational>> h_factors;
      std::vector<std::pair<const TropicalPolynomial*, Rational>> g_factors;
      for (std::size_t i = 0; i < W.cols(); ++i) {
        const Rational& w = W(k, i);
        if (sgn(w) > 0) {
          h_factors.emplace_back(&F[i], w);
          g_factors.emplace_back(&G[i], w);
        } else if (sgn(w) < 0) {
          h_factors.emplace_back(&G[i], -w);
          g_factors.emplace_back(&F[i], -w);
        }
      }
      TropicalPolynomial h = product(TropicalPolynomial::constant(n, layers[l].bias[k]), h_factors);
      TropicalPolynomial g = product(TropicalPolynomial::constant(n, 0), g_factors);
      terms[k] = {activate ? h.size() + g.size() : h.size(), g.size()};
      nextF[k] = activate ? oplus(h, g) : std::move(h);
      nextG[k] = std::move(g);
    });
    F.clear();
    G.clear();
    for (std::size_t k = 0; k < W.rows(); ++k) {
      F.push_back(std::move(*nextF[k]));
      G.push_back(std::move(*nextG[k]));
    }
    if (l + 1 == layers.size()) out.formal_terms = std::move(terms);
  }

  for (std::size_t k = 0; k < F.size(); ++k) out.maps.emplace_back(std::move(F[k]), std::move(G[k]));
  return out;
}

std::vector<TropicalRationalMap> tropicalize(const Network& net) { return tropicalize_with_counts(net).maps; }

}  // namespace tropnet
