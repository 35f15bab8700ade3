#include "tropnet/regions.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "tropnet/parallel.hpp"
#include "tropnet/tropicalize.hpp"

namespace tropnet {

bool is_bounded(const LinearRegion& region) {
  for (const auto& p : region.pieces) {
    if (!is_bounded(p)) return false;
  }
  return true;
}

std::vector<LinearRegion> polynomial_regions(const TropicalPolynomial& f) {
  const std::vector<std::size_t> drop = redundant_monomials(f);
  std::vector<LinearRegion> out;
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (d < drop.size() && drop[d] == i) {
      ++d;
      continue;
    }
    out.push_back(LinearRegion{f.term(i), {monomial_region(f, i)}});
  }
  return out;
}

std::vector<LinearRegion> rational_regions(const TropicalRationalMap& f) {
  const TropicalPolynomial p = prune(f.numerator);
  const TropicalPolynomial q = prune(f.denominator);
  std::vector<Polyhedron> U;
  std::vector<Polyhedron> V;
  for (std::size_t i = 0; i < p.size(); ++i) U.push_back(monomial_region(p, i));
  for (std::size_t j = 0; j < q.size(); ++j) V.push_back(monomial_region(q, j));

  const std::size_t pairs = p.size() * q.size();
  std::vector<std::optional<Polyhedron>> cell(pairs);
  parallel_for(pairs, [&](std::size_t idx) {
    Polyhedron w = intersect(U[idx / q.size()], V[idx % q.size()]);
    if (is_full_dimensional(w)) cell[idx] = std::move(w);
  });

  std::map<AffineMap, std::vector<Polyhedron>> groups;
  for (std::size_t idx = 0; idx < pairs; ++idx) {
    if (!cell[idx]) continue;
    AffineMap T = p.term(idx / q.size()) - q.term(idx % q.size());
    groups[std::move(T)].push_back(std::move(*cell[idx]));
  }

  std::vector<LinearRegion> out;
  for (auto& [map, pieces] : groups) {
    for (const auto& comp : connected_components(pieces)) {
      LinearRegion region{map, {}};
      for (std::size_t k : comp) region.pieces.push_back(pieces[k]);
      out.push_back(std::move(region));
    }
  }
  return out;
}

std::vector<LinearRegion> network_regions(const Network& net) {
  if (net.output_dim() != 1) {
    throw std::invalid_argument("network_regions: network has " +
                                std::to_string(net.output_dim()) + " outputs, expected 1");
  }
  return rational_regions(tropicalize(net).front());
}

}  // namespace tropnet
