#include "tropnet/tropical.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "tropnet/parallel.hpp"
#include "tropnet/rng.hpp"

namespace tropnet {

namespace {

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_arity(std::size_t nvars, std::size_t len, const char* where) {
  if (len != nvars) {
    throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(nvars) +
                                " values, got " + std::to_string(len));
  }
}

}  // namespace

Rational AffineMap::operator()(std::span<const Rational> x) const {
  check_arity(gradient.size(), x.size(), "AffineMap");
  return dot(gradient, x) + intercept;
}

AffineMap operator-(const AffineMap& a, const AffineMap& b) {
  if (a.gradient.size() != b.gradient.size()) {
    throw std::invalid_argument("AffineMap: dimension mismatch");
  }
  AffineMap d;
  d.gradient.resize(a.gradient.size());
  for (std::size_t k = 0; k < a.gradient.size(); ++k) d.gradient[k] = a.gradient[k] - b.gradient[k];
  d.intercept = a.intercept - b.intercept;
  return d;
}

bool operator<(const AffineMap& a, const AffineMap& b) {
  if (a.gradient != b.gradient) return lex_less(a.gradient, b.gradient);
  return a.intercept < b.intercept;
}

TropicalPolynomial::TropicalPolynomial(std::size_t nvars, std::vector<Monomial> monomials)
    : nvars_(nvars), monomials_(std::move(monomials)) {
  if (monomials_.empty()) throw std::invalid_argument("TropicalPolynomial: no monomials");
  for (const auto& m : monomials_) {
    check_arity(nvars_, m.exps.size(), "TropicalPolynomial exponent");
    for (const auto& e : m.exps) {
      if (sgn(e) < 0) {
        throw std::invalid_argument("TropicalPolynomial: negative exponent " + to_string(e));
      }
    }
  }
  std::sort(monomials_.begin(), monomials_.end(), [](const Monomial& a, const Monomial& b) {
    if (a.exps != b.exps) return lex_less(a.exps, b.exps);
    return a.coeff > b.coeff;
  });
  // After the sort the first monomial of each exponent run has the max coefficient.
  auto last = std::unique(monomials_.begin(), monomials_.end(),
                          [](const Monomial& a, const Monomial& b) { return a.exps == b.exps; });
  monomials_.erase(last, monomials_.end());
}

TropicalPolynomial TropicalPolynomial::constant(std::size_t nvars, const Rational& c) {
  return TropicalPolynomial(nvars, {Monomial{c, RationalVector(nvars)}});
}

TropicalPolynomial TropicalPolynomial::variable(std::size_t nvars, std::size_t var,
                                                const Rational& c) {
  if (var >= nvars) throw std::out_of_range("TropicalPolynomial::variable: index out of range");
  RationalVector e(nvars);
  e[var] = 1;
  return TropicalPolynomial(nvars, {Monomial{c, std::move(e)}});
}

AffineMap TropicalPolynomial::term(std::size_t i) const {
  return AffineMap{monomials_.at(i).exps, monomials_.at(i).coeff};
}

ExactMatrix TropicalPolynomial::exponent_matrix() const {
  ExactMatrix A(monomials_.size(), nvars_);
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    for (std::size_t k = 0; k < nvars_; ++k) A(i, k) = monomials_[i].exps[k];
  }
  return A;
}

TropicalRationalMap::TropicalRationalMap(TropicalPolynomial p, TropicalPolynomial q)
    : numerator(std::move(p)), denominator(std::move(q)) {
  if (numerator.nvars() != denominator.nvars()) {
    throw std::invalid_argument("TropicalRationalMap: numerator has " +
                                std::to_string(numerator.nvars()) + " variables, denominator " +
                                std::to_string(denominator.nvars()));
  }
}

Rational evaluate(const TropicalPolynomial& f, std::span<const Rational> x) {
  check_arity(f.nvars(), x.size(), "evaluate");
  Rational best = dot(f[0].exps, x) + f[0].coeff;
  for (std::size_t i = 1; i < f.size(); ++i) {
    Rational v = dot(f[i].exps, x) + f[i].coeff;
    if (v > best) best = std::move(v);
  }
  return best;
}

Rational evaluate(const TropicalRationalMap& f, std::span<const Rational> x) {
  return evaluate(f.numerator, x) - evaluate(f.denominator, x);
}

Rational evaluate_min(const TropicalPolynomial& f, std::span<const Rational> x) {
  check_arity(f.nvars(), x.size(), "evaluate_min");
  Rational best = dot(f[0].exps, x) + f[0].coeff;
  for (std::size_t i = 1; i < f.size(); ++i) {
    Rational v = dot(f[i].exps, x) + f[i].coeff;
    if (v < best) best = std::move(v);
  }
  return best;
}

TropicalPolynomial oplus(const TropicalPolynomial& a, const TropicalPolynomial& b) {
  check_arity(a.nvars(), b.nvars(), "oplus");
  std::vector<Monomial> ms = a.monomials();
  ms.insert(ms.end(), b.monomials().begin(), b.monomials().end());
  return TropicalPolynomial(a.nvars(), std::move(ms));
}

TropicalPolynomial otimes(const TropicalPolynomial& a, const TropicalPolynomial& b) {
  check_arity(a.nvars(), b.nvars(), "otimes");
  const std::size_t n = a.nvars();
  std::vector<Monomial> ms;
  ms.reserve(a.size() * b.size());
  for (const auto& x : a.monomials()) {
    for (const auto& y : b.monomials()) {
      Monomial m{x.coeff + y.coeff, RationalVector(n)};
      for (std::size_t k = 0; k < n; ++k) m.exps[k] = x.exps[k] + y.exps[k];
      ms.push_back(std::move(m));
    }
  }
  return TropicalPolynomial(n, std::move(ms));
}

TropicalPolynomial power(const TropicalPolynomial& a, const Rational& c) {
  if (sgn(c) < 0) throw std::invalid_argument("power: negative exponent " + to_string(c));
  std::vector<Monomial> ms = a.monomials();
  for (auto& m : ms) {
    m.coeff *= c;
    for (auto& e : m.exps) e *= c;
  }
  return TropicalPolynomial(a.nvars(), std::move(ms));
}

Polyhedron monomial_region(const TropicalPolynomial& f, std::size_t i) {
  if (i >= f.size()) throw std::out_of_range("monomial_region: index out of range");
  const std::size_t n = f.nvars();
  ExactMatrix A(f.size(), n);
  RationalVector b(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (std::size_t k = 0; k < n; ++k) A(j, k) = f[j].exps[k] - f[i].exps[k];
    b[j] = f[i].coeff - f[j].coeff;
  }
  return Polyhedron(std::move(A), std::move(b));
}

std::vector<std::size_t> redundant_monomials(const TropicalPolynomial& f) {
  std::vector<char> full(f.size());
  parallel_for(f.size(), [&](std::size_t i) {
    full[i] = is_full_dimensional(monomial_region(f, i)) ? 1 : 0;
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!full[i]) out.push_back(i);
  }
  return out;
}

TropicalPolynomial prune(const TropicalPolynomial& f) {
  const std::vector<std::size_t> drop = redundant_monomials(f);
  std::vector<Monomial> kept;
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (d < drop.size() && drop[d] == i) {
      ++d;
      continue;
    }
    kept.push_back(f[i]);
  }
  return TropicalPolynomial(f.nvars(), std::move(kept));
}

std::pair<std::size_t, std::size_t> monomial_complexity(const TropicalRationalMap& f) {
  return {prune(f.numerator).size(), prune(f.denominator).size()};
}

TropicalPolynomial random_polynomial(std::size_t nvars, std::size_t nmono, std::uint64_t seed) {
  if (nmono == 0) throw std::invalid_argument("random_polynomial: need at least one monomial");
  Rng rng(seed);
  std::vector<Monomial> ms(nmono);
  for (auto& m : ms) {
    m.exps.resize(nvars);
    for (auto& e : m.exps) e = exactify(uniform01(rng));
    m.coeff = exactify(uniform01(rng));
  }
  return TropicalPolynomial(nvars, std::move(ms));
}

}  // namespace tropnet
