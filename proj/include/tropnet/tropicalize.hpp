#ifndef TROPNET_TROPICALIZE_HPP
#define TROPNET_TROPICALIZE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "tropnet/network.hpp"
#include "tropnet/tropical.hpp"

namespace tropnet {

// One rational map per output unit, equal to the network as a function.
// Each weight matrix is split into positive and negative parts so that all
// exponents stay nonnegative.
std::vector<TropicalRationalMap> tropicalize(const Network& net);

struct Tropicalization {
  std::vector<TropicalRationalMap> maps;
  // Per output: the number of terms in H (+) G' and in G' as the last layer
  // forms them, before terms with equal exponents are merged.
  std::vector<std::pair<std::size_t, std::size_t>> formal_terms;
};
Tropicalization tropicalize_with_counts(const Network& net);

}  // namespace tropnet

#endif  // TROPNET_TROPICALIZE_HPP
