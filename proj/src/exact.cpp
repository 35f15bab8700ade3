#include "tropnet/exact.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace tropnet {

Rational exactify(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("exactify: non-finite value " + std::to_string(x));
  }
  // mpq_set_d is exact for finite doubles.
  Rational q(x);
  q.canonicalize();
  return q;
}

RationalVector exactify(std::span<const double> xs) {
  RationalVector out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(exactify(x));
  return out;
}

double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_double(std::span<const Rational> qs) {
  std::vector<double> out;
  out.reserve(qs.size());
  for (const auto& q : qs) out.push_back(q.get_d());
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    digits = std::string(s);
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) {
      num_digits.remove_prefix(1);
    }
    if (!all_digits(num_digits) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num_digits), 10);
    if (!num.empty() && num.front() == '-') n = -n;
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
  }
  return acc;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("ExactMatrix: entry count does not match shape");
  }
}

ExactMatrix ExactMatrix::from_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  std::vector<Rational> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ExactMatrix: ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return ExactMatrix(rows.size(), cols, std::move(entries));
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

ExactMatrix ExactMatrix::select_rows(std::span<const std::size_t> indices) const {
  ExactMatrix out(indices.size(), cols_);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= rows_) throw std::out_of_range("select_rows: index out of range");
    for (std::size_t c = 0; c < cols_; ++c) out(k, c) = (*this)(indices[k], c);
  }
  return out;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& top, const ExactMatrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column mismatch");
  std::vector<Rational> entries = top.entries_;
  entries.insert(entries.end(), bottom.entries_.begin(), bottom.entries_.end());
  return ExactMatrix(top.rows() + bottom.rows(), top.cols(), std::move(entries));
}

RationalVector ExactMatrix::multiply(std::span<const Rational> x) const {
  if (x.size() != cols_) throw std::invalid_argument("multiply: length mismatch");
  RationalVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) y[r] = dot(row(r), x);
  return y;
}

ExactMatrix ExactMatrix::scaled(const Rational& c) const {
  ExactMatrix out = *this;
  for (auto& e : out.entries_) e *= c;
  return out;
}

std::size_t rank(const ExactMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Clear denominators row by row; scaling a row does not change the rank.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
  }

  std::size_t rank = 0;
  mpz_class prev_pivot = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot_row = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r][c] != 0) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row == rows) continue;
    std::swap(a[rank], a[pivot_row]);
    const mpz_class pivot = a[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = (a[r][k] * pivot - a[r][c] * a[rank][k]) / prev_pivot;
      }
      a[r][c] = 0;
    }
    prev_pivot = pivot;
    ++rank;
  }
  return rank;
}

}  // namespace tropnet
