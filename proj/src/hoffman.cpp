#include "tropnet/hoffman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tropnet/lp.hpp"
#include "tropnet/parallel.hpp"
#include "tropnet/rng.hpp"

namespace tropnet {

namespace {

void check_cap(std::size_t m, std::size_t cap) {
  if (m > cap) {
    throw std::length_error("matrix has " + std::to_string(m) + " rows, above the subset cap " +
                            std::to_string(cap) + "; raise --subset-cap or use --lower/--upper");
  }
}

std::vector<std::size_t> subset_of(std::uint64_t mask, std::size_t m) {
  std::vector<std::size_t> J;
  for (std::size_t i = 0; i < m; ++i) {
    if (mask >> i & 1U) J.push_back(i);
  }
  return J;
}

std::vector<std::size_t> random_subset(Rng& rng, std::size_t m) {
  const std::size_t k = 1 + uniform_index(rng, m);
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + uniform_index(rng, m - i)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

bool has_zero_row(const ExactMatrix& A, std::span<const std::size_t> J) {
  for (std::size_t i : J) {
    bool zero = true;
    for (const auto& v : A.row(i)) {
      if (sgn(v) != 0) {
        zero = false;
        break;
      }
    }
    if (zero) return true;
  }
  return false;
}

// Keeps the largest candidate; ties go to the earlier one.
void take_max(HoffmanResult& best, const Rational& value, std::vector<std::size_t> J) {
  if (value > best.value) {
    best.value = value;
    best.witness_subset = std::move(J);
  }
}

// 1/t(J), or 0 if J is not surjective.
Rational inverse_t(const ExactMatrix& A, std::span<const std::size_t> J) {
  const Rational t = surjectivity_value(A, J);
  return sgn(t) > 0 ? Rational(1 / t) : Rational(0);
}

// 1/sigma_min(A_J) if A_J has full rank, else 0.
double inverse_sigma(const ExactMatrix& A, std::span<const std::size_t> J) {
  const ExactMatrix sub = A.select_rows(J);
  if (rank(sub) != std::min(J.size(), A.cols())) return 0.0;
  const double s = smallest_singular_value(to_double(sub.entries()), sub.rows(), sub.cols());
  return s > 0 ? 1.0 / s : 0.0;
}

HoffmanResult finish_upper(double best, std::vector<std::size_t> J) {
  HoffmanResult r;
  r.kind = HoffmanKind::kUpper;
  r.approx = best > 0 ? best + 1e-9 : 0.0;
  r.value = exactify(r.approx);
  if (best > 0) r.witness_subset = std::move(J);
  return r;
}

}  // namespace

Rational surjectivity_value(const ExactMatrix& A, std::span<const std::size_t> J) {
  if (J.empty()) throw std::invalid_argument("surjectivity_value: empty subset");
  for (std::size_t i : J) {
    if (i >= A.rows()) throw std::out_of_range("surjectivity_value: row index out of range");
  }
  if (has_zero_row(A, J)) return 0;

  // Variables (v_1..v_k >= 0, u_1..u_n free); minimize sum u subject to
  //   A_J^T v - u <= 0,  -A_J^T v - u <= 0,  sum v <= 1,  -sum v <= -1.
  const std::size_t k = J.size();
  const std::size_t n = A.cols();
  lp::Problem prob;
  prob.sense = lp::Sense::kMinimize;
  prob.objective.assign(k + n, Rational(0));
  for (std::size_t c = 0; c < n; ++c) prob.objective[k + c] = 1;
  prob.nonneg.assign(k + n, false);
  for (std::size_t r = 0; r < k; ++r) prob.nonneg[r] = true;
  prob.constraints = ExactMatrix(2 * n + 2, k + n);
  prob.rhs.assign(2 * n + 2, Rational(0));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < k; ++r) {
      prob.constraints(c, r) = A(J[r], c);
      prob.constraints(n + c, r) = -A(J[r], c);
    }
    prob.constraints(c, k + c) = -1;
    prob.constraints(n + c, k + c) = -1;
  }
  for (std::size_t r = 0; r < k; ++r) {
    prob.constraints(2 * n, r) = 1;
    prob.constraints(2 * n + 1, r) = -1;
  }
  prob.rhs[2 * n] = 1;
  prob.rhs[2 * n + 1] = -1;
  const lp::Outcome out = lp::solve(prob);
  if (out.status != lp::Status::kOptimal) {
    throw std::logic_error("surjectivity_value: LP did not reach an optimum");
  }
  return out.value;
}

HoffmanResult hoffman_exact(const ExactMatrix& A, std::size_t cap) {
  const std::size_t m = A.rows();
  check_cap(m, cap);
  HoffmanResult best;
  best.kind = HoffmanKind::kExact;
  if (m == 0) return best;
  const std::uint64_t count = (std::uint64_t{1} << m) - 1;
  std::vector<Rational> values(count);
  parallel_for(count, [&](std::size_t s) {
    const auto J = subset_of(s + 1, m);
    values[s] = inverse_t(A, J);
  });
  for (std::uint64_t s = 0; s < count; ++s) take_max(best, values[s], subset_of(s + 1, m));
  return best;
}

HoffmanResult hoffman_lower(const ExactMatrix& A, std::size_t B, std::uint64_t seed) {
  if (B == 0) throw std::invalid_argument("hoffman_lower: need at least one sample");
  HoffmanResult best;
  best.kind = HoffmanKind::kLower;
  const std::size_t m = A.rows();
  if (m == 0) return best;
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t b = 0; b < B; ++b) subsets.push_back(random_subset(rng, m));
  std::vector<Rational> values(B);
  parallel_for(B, [&](std::size_t b) { values[b] = inverse_t(A, subsets[b]); });
  for (std::size_t b = 0; b < B; ++b) take_max(best, values[b], subsets[b]);
  return best;
}

HoffmanResult hoffman_upper(const ExactMatrix& A, UpperMode mode, std::size_t cap) {
  const std::size_t m = A.rows();
  std::vector<std::vector<std::size_t>> subsets;
  if (m > 0) {
    if (mode.exhaustive) {
      check_cap(m, cap);
      const std::uint64_t count = (std::uint64_t{1} << m) - 1;
      for (std::uint64_t s = 1; s <= count; ++s) subsets.push_back(subset_of(s, m));
    } else {
      if (mode.B == 0) throw std::invalid_argument("hoffman_upper: need at least one sample");
      Rng rng(mode.seed);
      for (std::size_t b = 0; b < mode.B; ++b) subsets.push_back(random_subset(rng, m));
    }
  }
  std::vector<double> values(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t s) { values[s] = inverse_sigma(A, subsets[s]); });
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (values[s] > best) {
      best = values[s];
      arg = s;
    }
  }
  return finish_upper(best, best > 0 ? subsets[arg] : std::vector<std::size_t>{});
}

double smallest_singular_value(const std::vector<double>& a, std::size_t rows, std::size_t cols) {
  if (a.size() != rows * cols) throw std::invalid_argument("smallest_singular_value: bad shape");
  if (rows == 0 || cols == 0) return 0.0;
  const bool by_rows = rows <= cols;
  const std::size_t k = by_rows ? rows : cols;
  std::vector<double> g(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      if (by_rows) {
        for (std::size_t c = 0; c < cols; ++c) s += a[i * cols + c] * a[j * cols + c];
      } else {
        for (std::size_t r = 0; r < rows; ++r) s += a[r * cols + i] * a[r * cols + j];
      }
      g[i * k + j] = s;
      g[j * k + i] = s;
    }
  }

  double total = 0.0;
  for (double v : g) total += v * v;
  const double tol = 1e-12 * std::sqrt(total);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) off += 2 * g[i * k + j] * g[i * k + j];
    }
    if (std::sqrt(off) <= tol) break;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double apq = g[p * k + q];
        if (apq == 0.0) continue;
        const double theta = (g[q * k + q] - g[p * k + p]) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (std::size_t r = 0; r < k; ++r) {
          const double grp = g[r * k + p];
          const double grq = g[r * k + q];
          g[r * k + p] = c * grp - s * grq;
          g[r * k + q] = s * grp + c * grq;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const double gpr = g[p * k + r];
          const double gqr = g[q * k + r];
          g[p * k + r] = c * gpr - s * gqr;
          g[q * k + r] = s * gpr + c * gqr;
        }
      }
    }
  }
  double lo = g[0];
  for (std::size_t i = 1; i < k; ++i) lo = std::min(lo, g[i * k + i]);
  return std::sqrt(std::max(lo, 0.0));
}

ExactMatrix difference_matrix(const TropicalPolynomial& f, std::size_t i) {
  if (i >= f.size()) throw std::out_of_range("difference_matrix: index out of range");
  ExactMatrix A = f.exponent_matrix();
  for (std::size_t r = 0; r < A.rows(); ++r) {
    for (std::size_t c = 0; c < A.cols(); ++c) A(r, c) -= f[i].exps[c];
  }
  return A;
}

ExactMatrix difference_matrix(const TropicalRationalMap& f, std::size_t i, std::size_t j) {
  return ExactMatrix::vstack(difference_matrix(f.numerator, i), difference_matrix(f.denominator, j));
}

namespace {

struct Candidate {
  ExactMatrix matrix;
  std::pair<std::size_t, std::size_t> terms;
};

TropicalHoffman combine(const std::vector<Candidate>& cands, const TropicalHoffmanOptions& opt) {
  const std::size_t rows = cands.empty() ? 0 : cands.front().matrix.rows();
  const bool exact_ok = rows <= opt.cap;
  std::vector<HoffmanResult> ex(cands.size());
  std::vector<HoffmanResult> lo(cands.size());
  std::vector<HoffmanResult> up(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const ExactMatrix& A = cands[c].matrix;
    if (exact_ok) ex[c] = hoffman_exact(A, opt.cap);
    lo[c] = hoffman_lower(A, opt.lower_samples, opt.seed + c);
    up[c] = exact_ok ? hoffman_upper(A, {}, opt.cap)
                     : hoffman_upper(A, {false, opt.lower_samples, opt.seed + c}, opt.cap);
  }
  auto argmax = [](const std::vector<HoffmanResult>& rs) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < rs.size(); ++c) {
      if (rs[c].value > rs[best].value) best = c;
    }
    return best;
  };
  TropicalHoffman out;
  out.lower.kind = HoffmanKind::kLower;
  out.upper.kind = HoffmanKind::kUpper;
  if (cands.empty()) return out;
  const std::size_t lo_arg = argmax(lo);
  const std::size_t up_arg = argmax(up);
  out.lower = lo[lo_arg];
  out.upper = up[up_arg];
  out.witness_terms = cands[up_arg].terms;
  if (exact_ok) {
    const std::size_t ex_arg = argmax(ex);
    out.exact = ex[ex_arg];
    out.witness_terms = cands[ex_arg].terms;
  } else {
    out.witness_terms = cands[lo_arg].terms;
  }
  return out;
}

}  // namespace

TropicalHoffman hoffman_tropical(const TropicalPolynomial& f, const TropicalHoffmanOptions& opt) {
  const std::vector<std::size_t> drop = redundant_monomials(f);
  std::vector<Candidate> cands;
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (d < drop.size() && drop[d] == i) {
      ++d;
      continue;
    }
    cands.push_back({difference_matrix(f, i), {i, 0}});
  }
  return combine(cands, opt);
}

TropicalHoffman hoffman_tropical(const TropicalRationalMap& f, const TropicalHoffmanOptions& opt) {
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < f.numerator.size(); ++i) {
    for (std::size_t j = 0; j < f.denominator.size(); ++j) {
      cands.push_back({difference_matrix(f, i, j), {i, j}});
    }
  }
  return combine(cands, opt);
}

Rational radius_bound(const TropicalRationalMap& f, std::span<const Rational> x, const Rational& H) {
  const Rational gp = evaluate(f.numerator, x) - evaluate_min(f.numerator, x);
  const Rational gq = evaluate(f.denominator, x) - evaluate_min(f.denominator, x);
  return H * (gp > gq ? gp : gq);
}

Rational radius_bound(const TropicalRationalMap& f, std::span<const Rational> x,
                      const TropicalHoffman& h) {
  return radius_bound(f, x, h.exact ? h.exact->value : h.upper.value);
}

}  // namespace tropnet
