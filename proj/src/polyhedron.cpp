#include "tropnet/polyhedron.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <utility>

#include "tropnet/lp.hpp"
#include "tropnet/parallel.hpp"

namespace tropnet {

namespace {

bool is_zero_row(const ExactMatrix& A, std::size_t r) {
  for (const auto& v : A.row(r)) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

// maximize s  s.t.  a_i x + s <= b_i  (rows flagged in with_slack)
//                   a_i x     <= b_i  (other rows)
//                   s <= 1
lp::Outcome max_slack(const Polyhedron& P, const std::vector<bool>& with_slack) {
  const std::size_t n = P.ambient_dim();
  const std::size_t m = P.num_rows();
  lp::Problem prob;
  prob.objective.assign(n + 1, Rational(0));
  prob.objective[n] = 1;
  prob.constraints = ExactMatrix(m + 1, n + 1);
  prob.rhs.resize(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) prob.constraints(i, j) = P.A()(i, j);
    if (with_slack[i]) prob.constraints(i, n) = 1;
    prob.rhs[i] = P.b()[i];
  }
  prob.constraints(m, n) = 1;
  prob.rhs[m] = 1;
  return lp::solve(prob);
}

RationalVector head(const RationalVector& v, std::size_t n) {
  return RationalVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace

Polyhedron::Polyhedron(ExactMatrix A, RationalVector b) : A_(std::move(A)), b_(std::move(b)) {
  if (b_.size() != A_.rows()) {
    throw std::invalid_argument("Polyhedron: b has " + std::to_string(b_.size()) +
                                " entries for " + std::to_string(A_.rows()) + " rows");
  }
  if (A_.cols() == 0) throw std::invalid_argument("Polyhedron: ambient dimension must be >= 1");
}

Polyhedron Polyhedron::universe(std::size_t n) { return Polyhedron(ExactMatrix(0, n), {}); }

bool Polyhedron::contains(std::span<const Rational> x) const {
  if (x.size() != ambient_dim()) throw std::invalid_argument("Polyhedron::contains: length mismatch");
  for (std::size_t i = 0; i < num_rows(); ++i) {
    if (dot(A_.row(i), x) > b_[i]) return false;
  }
  return true;
}

bool Polyhedron::strict_at(std::size_t row, std::span<const Rational> x) const {
  return dot(A_.row(row), x) < b_[row];
}

Polyhedron intersect(const Polyhedron& P, const Polyhedron& Q) {
  if (P.ambient_dim() != Q.ambient_dim()) {
    throw std::invalid_argument("intersect: ambient dimensions " + std::to_string(P.ambient_dim()) +
                                " and " + std::to_string(Q.ambient_dim()) + " differ");
  }
  RationalVector b = P.b();
  b.insert(b.end(), Q.b().begin(), Q.b().end());
  ExactMatrix A = ExactMatrix::vstack(P.A(), Q.A());
  if (A.rows() == 0) A = ExactMatrix(0, P.ambient_dim());
  return Polyhedron(std::move(A), std::move(b));
}

std::optional<RationalVector> feasible_point(const Polyhedron& P) {
  if (P.num_rows() == 0) return RationalVector(P.ambient_dim());
  lp::Outcome out = lp::find_feasible(P.A(), P.b());
  if (out.status == lp::Status::kInfeasible) return std::nullopt;
  return std::move(out.witness);
}

bool is_empty(const Polyhedron& P) { return !feasible_point(P).has_value(); }

bool intersects(const Polyhedron& P, const Polyhedron& Q) { return !is_empty(intersect(P, Q)); }

ImplicitSplit implicit_split(const Polyhedron& P) {
  const std::size_t m = P.num_rows();
  const std::size_t n = P.ambient_dim();
  std::optional<RationalVector> start = feasible_point(P);
  if (!start) throw std::invalid_argument("implicit_split: polyhedron is empty");

  // 1 = strict, 2 = implicit, 0 = undecided.
  std::vector<int> state(m, 0);
  std::vector<bool> nonzero(m);
  for (std::size_t i = 0; i < m; ++i) {
    nonzero[i] = !is_zero_row(P.A(), i);
    if (!nonzero[i]) state[i] = sgn(P.b()[i]) == 0 ? 2 : 1;
  }
  auto mark_strict_at = [&](const RationalVector& x) {
    for (std::size_t i = 0; i < m; ++i) {
      if (state[i] == 0 && P.strict_at(i, x)) state[i] = 1;
    }
  };

  const lp::Outcome slack = max_slack(P, nonzero);
  if (sgn(slack.value) > 0) {
    for (std::size_t i = 0; i < m; ++i) {
      if (state[i] == 0) state[i] = 1;
    }
  } else {
    mark_strict_at(head(slack.witness, n));
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (state[i] != 0) continue;
    lp::Problem prob;
    prob.objective.assign(P.A().row(i).begin(), P.A().row(i).end());
    prob.constraints = P.A();
    prob.rhs = P.b();
    prob.sense = lp::Sense::kMinimize;
    const lp::Outcome out = lp::solve(prob);
    if (out.status == lp::Status::kOptimal && out.value == P.b()[i]) {
      state[i] = 2;
    } else {
      state[i] = 1;
      if (out.status == lp::Status::kOptimal) mark_strict_at(out.witness);
    }
  }

  ImplicitSplit split;
  for (std::size_t i = 0; i < m; ++i) {
    (state[i] == 2 ? split.equality_indices : split.strict_indices).push_back(i);
  }
  return split;
}

int dimension(const Polyhedron& P) {
  if (is_empty(P)) return -1;
  const ImplicitSplit split = implicit_split(P);
  const std::size_t r = rank(P.A().select_rows(split.equality_indices));
  return static_cast<int>(P.ambient_dim() - r);
}

bool is_full_dimensional(const Polyhedron& P) {
  const std::size_t m = P.num_rows();
  std::vector<bool> nonzero(m);
  for (std::size_t i = 0; i < m; ++i) {
    nonzero[i] = !is_zero_row(P.A(), i);
    if (!nonzero[i] && sgn(P.b()[i]) < 0) return false;
  }
  const lp::Outcome out = max_slack(P, nonzero);
  return out.status == lp::Status::kOptimal && sgn(out.value) > 0;
}

RationalVector interior_point(const Polyhedron& P) {
  const std::size_t n = P.ambient_dim();
  const ImplicitSplit split = implicit_split(P);
  std::vector<bool> with_slack(P.num_rows(), false);
  for (std::size_t i : split.strict_indices) with_slack[i] = !is_zero_row(P.A(), i);
  const lp::Outcome out = max_slack(P, with_slack);
  if (out.status != lp::Status::kOptimal || sgn(out.value) <= 0) {
    throw std::logic_error("interior_point: no strictly interior point found");
  }
  RationalVector x = head(out.witness, n);
  for (std::size_t i : split.strict_indices) {
    if (!P.strict_at(i, x)) throw std::logic_error("interior_point: strictness check failed");
  }
  for (std::size_t i : split.equality_indices) {
    if (dot(P.A().row(i), x) != P.b()[i]) {
      throw std::logic_error("interior_point: equality check failed");
    }
  }
  return x;
}

bool is_bounded(const Polyhedron& P) {
  if (is_empty(P)) throw std::invalid_argument("is_bounded: polyhedron is empty");
  const std::size_t n = P.ambient_dim();
  for (std::size_t k = 0; k < n; ++k) {
    for (lp::Sense sense : {lp::Sense::kMaximize, lp::Sense::kMinimize}) {
      lp::Problem prob;
      prob.objective.assign(n, Rational(0));
      prob.objective[k] = 1;
      prob.constraints = P.A();
      prob.rhs = P.b();
      prob.sense = sense;
      if (P.num_rows() == 0 || lp::solve(prob).status == lp::Status::kUnbounded) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> connected_components(std::span<const Polyhedron> polys) {
  const std::size_t k = polys.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::vector<char> edge(pairs.size(), 0);
  parallel_for(pairs.size(), [&](std::size_t e) {
    edge[e] = intersects(polys[pairs[e].first], polys[pairs[e].second]) ? 1 : 0;
  });
  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    if (!edge[e]) continue;
    adj[pairs[e].first].push_back(pairs[e].second);
    adj[pairs[e].second].push_back(pairs[e].first);
  }

  std::vector<std::vector<std::size_t>> components;
  std::vector<bool> seen(k, false);
  for (std::size_t s = 0; s < k; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (std::size_t v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

}  // namespace tropnet
