#ifndef TROPNET_HOFFMAN_HPP
#define TROPNET_HOFFMAN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tropnet/exact.hpp"
#include "tropnet/tropical.hpp"

namespace tropnet {

inline constexpr std::size_t kDefaultSubsetCap = 16;

enum class HoffmanKind { kExact, kLower, kUpper };

struct HoffmanResult {
  HoffmanKind kind = HoffmanKind::kExact;
  // Exact for kExact and kLower; the exactified double for kUpper.
  Rational value;
  double approx = 0.0;
  // Row subset attaining the value (sorted). Empty when the value is 0.
  std::vector<std::size_t> witness_subset;
};

// min ||A_J^T v||_1 over v >= 0 with sum(v) = 1. J is A-surjective iff the
// result is positive.
Rational surjectivity_value(const ExactMatrix& A, std::span<const std::size_t> J);

// Max of 1/t(J) over all nonempty row subsets with t(J) > 0. Throws
// std::length_error when A has more rows than cap.
HoffmanResult hoffman_exact(const ExactMatrix& A, std::size_t cap = kDefaultSubsetCap);

// B random subsets, size uniform on {1..m}.
HoffmanResult hoffman_lower(const ExactMatrix& A, std::size_t B, std::uint64_t seed);

// Max of 1/sigma_min(A_J) over subsets where A_J has rank min(|J|, n), padded
// by 1e-9. Exhaustive over all subsets (subject to cap) unless sampled.
struct UpperMode {
  bool exhaustive = true;
  std::size_t B = 0;
  std::uint64_t seed = 0;
};
HoffmanResult hoffman_upper(const ExactMatrix& A, UpperMode mode = {},
                            std::size_t cap = kDefaultSubsetCap);

// Smallest of the min(rows, cols) singular values of a row-major matrix,
// via cyclic Jacobi on the smaller Gram matrix.
double smallest_singular_value(const std::vector<double>& a, std::size_t rows, std::size_t cols);

// A - 1 a_i for the exponent matrix of f.
ExactMatrix difference_matrix(const TropicalPolynomial& f, std::size_t i);
// [A - 1 a_i ; A' - 1 a'_j] for numerator and denominator exponent matrices.
ExactMatrix difference_matrix(const TropicalRationalMap& f, std::size_t i, std::size_t j);

struct TropicalHoffman {
  std::optional<HoffmanResult> exact;  // absent when the cap is exceeded
  HoffmanResult lower;
  HoffmanResult upper;
  // Monomial indices of the matrix attaining the reported value.
  std::pair<std::size_t, std::size_t> witness_terms{0, 0};
};

struct TropicalHoffmanOptions {
  std::size_t cap = kDefaultSubsetCap;
  std::size_t lower_samples = 10;
  std::uint64_t seed = 0;
};

// H of the given expression: max over the irredundant monomials of a
// polynomial, or over all monomial pairs of a rational map.
TropicalHoffman hoffman_tropical(const TropicalPolynomial& f, const TropicalHoffmanOptions& opt = {});
TropicalHoffman hoffman_tropical(const TropicalRationalMap& f, const TropicalHoffmanOptions& opt = {});

// H * max{p(x) - pmin(x), q(x) - qmin(x)}.
Rational radius_bound(const TropicalRationalMap& f, std::span<const Rational> x, const Rational& H);
// Uses the exact constant when available, otherwise the upper bound.
Rational radius_bound(const TropicalRationalMap& f, std::span<const Rational> x,
                      const TropicalHoffman& h);

}  // namespace tropnet

#endif  // TROPNET_HOFFMAN_HPP
