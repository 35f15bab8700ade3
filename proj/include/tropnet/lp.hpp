#ifndef TROPNET_LP_HPP
#define TROPNET_LP_HPP

#include <vector>

#include "tropnet/exact.hpp"

namespace tropnet::lp {

enum class Sense { kMaximize, kMinimize };
enum class Status { kInfeasible, kUnbounded, kOptimal };

// optimize <objective, x> subject to constraints * x <= rhs, with x_j >= 0
// for every j flagged in nonneg (an empty mask means all variables are free).
struct Problem {
  RationalVector objective;
  ExactMatrix constraints;
  RationalVector rhs;
  Sense sense = Sense::kMaximize;
  std::vector<bool> nonneg;
};

struct Outcome {
  Status status = Status::kInfeasible;
  Rational value;           // set when Optimal
  RationalVector witness;   // optimal point when Optimal
  // Set when Infeasible: y >= 0 with (y^T A)_j = 0 on free variables,
  // (y^T A)_j >= 0 on nonnegative ones, and y^T b < 0.
  RationalVector farkas;
};

// Exact two-phase primal simplex with Bland's rule. Free variables are split
// into differences of nonnegative pairs. The witness (or Farkas certificate)
// is checked by substitution before returning; a failed check throws
// std::logic_error.
Outcome solve(const Problem& problem);

// Feasibility of constraints * x <= rhs over free x. Returns a point or the
// certificate in the outcome.
Outcome find_feasible(const ExactMatrix& constraints, const RationalVector& rhs);

bool satisfies(const Problem& problem, const RationalVector& x);
bool certifies_infeasible(const Problem& problem, const RationalVector& y);

}  // namespace tropnet::lp

#endif  // TROPNET_LP_HPP
