#ifndef TROPNET_TROPICAL_HPP
#define TROPNET_TROPICAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tropnet/exact.hpp"
#include "tropnet/polyhedron.hpp"

namespace tropnet {

struct Monomial {
  Rational coeff;
  RationalVector exps;

  bool operator==(const Monomial&) const = default;
};

// x -> <gradient, x> + intercept.
struct AffineMap {
  RationalVector gradient;
  Rational intercept;

  Rational operator()(std::span<const Rational> x) const;
  bool operator==(const AffineMap&) const = default;
};

AffineMap operator-(const AffineMap& a, const AffineMap& b);
// Lexicographic on (gradient, intercept).
bool operator<(const AffineMap& a, const AffineMap& b);

// Max-plus polynomial  max_i (coeff_i + <exps_i, x>)  with nonnegative
// rational exponents. Monomials are kept sorted by exponent vector with no
// repeated exponents (the larger coefficient wins).
class TropicalPolynomial {
 public:
  TropicalPolynomial(std::size_t nvars, std::vector<Monomial> monomials);

  static TropicalPolynomial constant(std::size_t nvars, const Rational& c);
  // c + x_var.
  static TropicalPolynomial variable(std::size_t nvars, std::size_t var, const Rational& c = 0);

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }

  AffineMap term(std::size_t i) const;
  ExactMatrix exponent_matrix() const;

  bool operator==(const TropicalPolynomial&) const = default;

 private:
  std::size_t nvars_;
  std::vector<Monomial> monomials_;
};

// p - q as a function.
struct TropicalRationalMap {
  TropicalPolynomial numerator;
  TropicalPolynomial denominator;

  TropicalRationalMap(TropicalPolynomial p, TropicalPolynomial q);
  std::size_t nvars() const { return numerator.nvars(); }
};

Rational evaluate(const TropicalPolynomial& f, std::span<const Rational> x);
Rational evaluate(const TropicalRationalMap& f, std::span<const Rational> x);
// Min over the same affine terms.
Rational evaluate_min(const TropicalPolynomial& f, std::span<const Rational> x);

TropicalPolynomial oplus(const TropicalPolynomial& a, const TropicalPolynomial& b);
TropicalPolynomial otimes(const TropicalPolynomial& a, const TropicalPolynomial& b);
// Throws std::invalid_argument for c < 0.
TropicalPolynomial power(const TropicalPolynomial& a, const Rational& c);

// Points where monomial i attains the max: one row per monomial j, with
// row a_j - a_i and right-hand side c_i - c_j.
Polyhedron monomial_region(const TropicalPolynomial& f, std::size_t i);

// Indices whose monomial region is not full-dimensional.
std::vector<std::size_t> redundant_monomials(const TropicalPolynomial& f);
TropicalPolynomial prune(const TropicalPolynomial& f);

// Irredundant monomial counts of numerator and denominator.
std::pair<std::size_t, std::size_t> monomial_complexity(const TropicalRationalMap& f);

// Coefficients and exponents drawn uniformly from [0, 1] and exactified.
TropicalPolynomial random_polynomial(std::size_t nvars, std::size_t nmono, std::uint64_t seed);

}  // namespace tropnet

#endif  // TROPNET_TROPICAL_HPP
