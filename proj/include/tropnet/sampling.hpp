#ifndef TROPNET_SAMPLING_HPP
#define TROPNET_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tropnet/network.hpp"
#include "tropnet/regions.hpp"

namespace tropnet {

enum class SampleScheme { kUniform, kGrid };

std::string to_string(SampleScheme s);

struct SampleConfig {
  double R = 1.0;
  std::size_t N = 1000;
  std::uint64_t seed = 0;
  SampleScheme scheme = SampleScheme::kUniform;
  // Sort each point descending, i.e. sample the cone x_1 >= ... >= x_n.
  bool restrict_to_fundamental = false;
};

struct RegionEstimate {
  double count = 0.0;
  std::vector<JacobianSignature> signatures;  // distinct, sorted
  std::size_t points = 0;
  double elapsed = 0.0;  // seconds
};

// Sample points of [-R, R]^n: N uniform points, or a grid with
// round(N^(1/n)) points per axis.
std::vector<std::vector<double>> sample_points(std::size_t n, const SampleConfig& cfg);

// Counts regions by Jacobian signature. Points sharing a signature are
// compared against the existing representatives of that signature in order;
// a point joins the first one whose midpoint value equals the mean of the
// two outputs, otherwise it starts a new region.
RegionEstimate estimate_regions(const Network& net, const SampleConfig& cfg);

// n! / prod(c!) over the multiplicities c of equal entries.
std::uint64_t multiplicity(const JacobianSignature& sig, std::size_t n);

// Samples ceil(N / n!) points sorted into the cone and returns the sum of
// multiplicity over the distinct signatures found.
RegionEstimate estimate_regions_fundamental(const Network& net, const SampleConfig& cfg);

// Orbit-counting bounds for a permutation-invariant function: regions inside
// the cone x_1 >= ... >= x_n count n! each; regions meeting it without being
// inside add the multiplicity of their gradient to the upper bound.
std::pair<std::uint64_t, std::uint64_t> fundamental_bounds(const std::vector<LinearRegion>& regions,
                                                           std::size_t n);

}  // namespace tropnet

#endif  // TROPNET_SAMPLING_HPP
