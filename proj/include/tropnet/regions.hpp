#ifndef TROPNET_REGIONS_HPP
#define TROPNET_REGIONS_HPP

#include <vector>

#include "tropnet/network.hpp"
#include "tropnet/polyhedron.hpp"
#include "tropnet/tropical.hpp"

namespace tropnet {

// A connected union of full-dimensional polyhedra on which the function
// equals `map`.
struct LinearRegion {
  AffineMap map;
  std::vector<Polyhedron> pieces;
};

// True when every piece is bounded.
bool is_bounded(const LinearRegion& region);

// One region per irredundant monomial, in monomial order.
std::vector<LinearRegion> polynomial_regions(const TropicalPolynomial& f);

// Regions of p - q: full-dimensional intersections of the numerator and
// denominator monomial regions, grouped by their exact affine map and split
// into connected components. Sorted by map, then by smallest piece index.
std::vector<LinearRegion> rational_regions(const TropicalRationalMap& f);

// Requires a scalar-output network.
std::vector<LinearRegion> network_regions(const Network& net);

}  // namespace tropnet

#endif  // TROPNET_REGIONS_HPP
