#ifndef TROPNET_EXACT_HPP
#define TROPNET_EXACT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropnet {

// Arbitrary-precision rational. gmpxx keeps every result in canonical form
// (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Exact dyadic value of a finite double. Throws std::invalid_argument on
// NaN or infinity.
Rational exactify(double x);
RationalVector exactify(std::span<const double> xs);

double to_double(const Rational& q);
std::vector<double> to_double(std::span<const Rational> qs);

// "p/q", with "/q" omitted when q = 1.
std::string to_string(const Rational& q);

// Accepts "p/q", integers and plain decimal notation ("-0.25", "3e-2").
// Decimal strings are read exactly, not through a double.
Rational parse_rational(std::string_view text);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

// Dense row-major rational matrix.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static ExactMatrix from_rows(const std::vector<RationalVector>& rows);
  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<Rational> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

  const std::vector<Rational>& entries() const { return entries_; }

  ExactMatrix transpose() const;
  ExactMatrix select_rows(std::span<const std::size_t> indices) const;
  // Rows of `top` followed by rows of `bottom`.
  static ExactMatrix vstack(const ExactMatrix& top, const ExactMatrix& bottom);

  RationalVector multiply(std::span<const Rational> x) const;
  ExactMatrix scaled(const Rational& c) const;

  bool operator==(const ExactMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

// Exact rank. Rows are scaled to integers and reduced with fraction-free
// (Bareiss) elimination.
std::size_t rank(const ExactMatrix& m);

}  // namespace tropnet

#endif  // TROPNET_EXACT_HPP
