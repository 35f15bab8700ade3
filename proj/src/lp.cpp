#include "tropnet/lp.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace tropnet::lp {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Dense simplex tableau in the form  T x = rhs, x >= 0, with an explicit
// reduced-cost row. The objective is always minimized.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), rows_(rows, RationalVector(cols + 1)), cost_(cols + 1),
        basis_(rows, kNone), allowed_(cols, true) {}

  Rational& at(std::size_t r, std::size_t c) { return rows_[r][c]; }
  Rational& rhs(std::size_t r) { return rows_[r][cols_]; }
  const Rational& reduced_cost(std::size_t c) const { return cost_[c]; }
  void set_basis(std::size_t r, std::size_t c) { basis_[r] = c; }
  std::size_t basis(std::size_t r) const { return basis_[r]; }
  std::size_t rows() const { return rows_.size(); }
  void forbid(std::size_t c) { allowed_[c] = false; }

  // Installs a cost vector and prices out the basic columns.
  void set_costs(const RationalVector& costs) {
    for (std::size_t c = 0; c < cols_; ++c) cost_[c] = costs[c];
    cost_[cols_] = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = costs[basis_[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (sgn(rows_[r][c]) != 0) cost_[c] -= f * rows_[r][c];
      }
    }
  }

  Rational objective_value() const { return -cost_[cols_]; }

  // Runs Bland's rule to optimality. Returns false if unbounded.
  bool optimize() {
    for (;;) {
      std::size_t entering = kNone;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed_[c] && sgn(cost_[c]) < 0) {
          entering = c;
          break;
        }
      }
      if (entering == kNone) return true;

      std::size_t leaving = kNone;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& a = rows_[r][entering];
        if (sgn(a) <= 0) continue;
        Rational ratio = rows_[r][cols_] / a;
        if (leaving == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == kNone) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    RationalVector& prow = rows_[r];
    const Rational inv = 1 / prow[c];
    for (auto& v : prow) {
      if (sgn(v) != 0) v *= inv;
    }
    auto eliminate = [&](RationalVector& row) {
      if (sgn(row[c]) == 0) return;
      const Rational f = row[c];
      for (std::size_t k = 0; k <= cols_; ++k) {
        if (sgn(prow[k]) != 0) row[k] -= f * prow[k];
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(cost_);
    basis_[r] = c;
  }

  void erase_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  Rational basic_value(std::size_t c) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] == c) return rows_[r][cols_];
    }
    return 0;
  }

 private:
  std::size_t cols_;
  std::vector<RationalVector> rows_;
  RationalVector cost_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
};

void check_dimensions(const Problem& p) {
  const std::size_t n = p.constraints.cols();
  const std::size_t m = p.constraints.rows();
  if (p.objective.size() != n && !(m == 0 && n == 0)) {
    throw std::invalid_argument("lp::solve: objective length " + std::to_string(p.objective.size()) +
                                " does not match " + std::to_string(n) + " columns");
  }
  if (p.rhs.size() != m) {
    throw std::invalid_argument("lp::solve: rhs length " + std::to_string(p.rhs.size()) +
                                " does not match " + std::to_string(m) + " rows");
  }
  if (!p.nonneg.empty() && p.nonneg.size() != p.objective.size()) {
    throw std::invalid_argument("lp::solve: nonneg mask length mismatch");
  }
}

bool is_nonneg(const Problem& p, std::size_t j) { return !p.nonneg.empty() && p.nonneg[j]; }

}  // namespace

bool satisfies(const Problem& p, const RationalVector& x) {
  if (x.size() != p.objective.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (is_nonneg(p, j) && sgn(x[j]) < 0) return false;
  }
  for (std::size_t i = 0; i < p.constraints.rows(); ++i) {
    if (dot(p.constraints.row(i), x) > p.rhs[i]) return false;
  }
  return true;
}

bool certifies_infeasible(const Problem& p, const RationalVector& y) {
  const std::size_t m = p.constraints.rows();
  const std::size_t n = p.constraints.cols();
  if (y.size() != m) return false;
  for (const auto& v : y) {
    if (sgn(v) < 0) return false;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(y[i]) != 0) s += y[i] * p.constraints(i, j);
    }
    if (is_nonneg(p, j) ? sgn(s) < 0 : sgn(s) != 0) return false;
  }
  return dot(y, p.rhs) < 0;
}

Outcome solve(const Problem& p) {
  check_dimensions(p);
  const std::size_t m = p.constraints.rows();
  const std::size_t n = p.objective.size();

  // Column layout: variable parts, then one slack per row, then artificials
  // for the rows whose right-hand side is negative.
  std::vector<std::size_t> plus_col(n);
  std::vector<std::size_t> minus_col(n, kNone);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus_col[j] = cols++;
    if (!is_nonneg(p, j)) minus_col[j] = cols++;
  }
  const std::size_t slack_begin = cols;
  cols += m;
  std::vector<std::size_t> art_col(m, kNone);
  std::size_t art_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(p.rhs[i]) < 0) art_col[i] = cols + art_count++;
  }
  const std::size_t art_begin = cols;
  cols += art_count;

  Tableau t(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = art_col[i] != kNone;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = p.constraints(i, j);
      if (sgn(a) == 0) continue;
      t.at(i, plus_col[j]) = flip ? Rational(-a) : a;
      if (minus_col[j] != kNone) t.at(i, minus_col[j]) = flip ? a : Rational(-a);
    }
    t.at(i, slack_begin + i) = flip ? -1 : 1;
    t.rhs(i) = flip ? Rational(-p.rhs[i]) : p.rhs[i];
    if (flip) {
      t.at(i, art_col[i]) = 1;
      t.set_basis(i, art_col[i]);
    } else {
      t.set_basis(i, slack_begin + i);
    }
  }

  Outcome out;
  if (art_count > 0) {
    RationalVector phase1(cols);
    for (std::size_t c = art_begin; c < cols; ++c) phase1[c] = 1;
    t.set_costs(phase1);
    t.optimize();  // bounded below by zero
    if (sgn(t.objective_value()) > 0) {
      out.status = Status::kInfeasible;
      // Phase-1 duals read off the slack reduced costs.
      out.farkas.resize(m);
      for (std::size_t i = 0; i < m; ++i) out.farkas[i] = t.reduced_cost(slack_begin + i);
      if (!certifies_infeasible(p, out.farkas)) {
        throw std::logic_error("lp::solve: Farkas certificate failed verification");
      }
      return out;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = t.rows(); r-- > 0;) {
      if (t.basis(r) < art_begin) continue;
      std::size_t replacement = kNone;
      for (std::size_t c = 0; c < art_begin; ++c) {
        if (sgn(t.at(r, c)) != 0) {
          replacement = c;
          break;
        }
      }
      if (replacement == kNone) {
        t.erase_row(r);
      } else {
        t.pivot(r, replacement);
      }
    }
    for (std::size_t c = art_begin; c < cols; ++c) t.forbid(c);
  }

  RationalVector phase2(cols);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational c = p.sense == Sense::kMaximize ? Rational(-p.objective[j]) : p.objective[j];
    phase2[plus_col[j]] = c;
    if (minus_col[j] != kNone) phase2[minus_col[j]] = -c;
  }
  t.set_costs(phase2);
  if (!t.optimize()) {
    out.status = Status::kUnbounded;
    return out;
  }

  out.status = Status::kOptimal;
  out.witness.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.witness[j] = t.basic_value(plus_col[j]);
    if (minus_col[j] != kNone) out.witness[j] -= t.basic_value(minus_col[j]);
  }
  const Rational z = t.objective_value();
  out.value = p.sense == Sense::kMaximize ? Rational(-z) : z;
  if (!satisfies(p, out.witness) || dot(p.objective, out.witness) != out.value) {
    throw std::logic_error("lp::solve: optimal witness failed verification");
  }
  return out;
}

Outcome find_feasible(const ExactMatrix& constraints, const RationalVector& rhs) {
  Problem p;
  p.objective.assign(constraints.cols(), Rational(0));
  p.constraints = constraints;
  p.rhs = rhs;
  return solve(p);
}

}  // namespace tropnet::lp
