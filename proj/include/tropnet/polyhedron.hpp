#ifndef TROPNET_POLYHEDRON_HPP
#define TROPNET_POLYHEDRON_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tropnet/exact.hpp"

namespace tropnet {

// {x in Q^n : A x <= b}. Rows are never simplified or removed.
class Polyhedron {
 public:
  Polyhedron(ExactMatrix A, RationalVector b);

  // The whole space, with no rows.
  static Polyhedron universe(std::size_t n);

  const ExactMatrix& A() const { return A_; }
  const RationalVector& b() const { return b_; }
  std::size_t ambient_dim() const { return A_.cols(); }
  std::size_t num_rows() const { return A_.rows(); }

  bool contains(std::span<const Rational> x) const;
  // <a_i, x> < b_i.
  bool strict_at(std::size_t row, std::span<const Rational> x) const;

 private:
  ExactMatrix A_;
  RationalVector b_;
};

struct ImplicitSplit {
  std::vector<std::size_t> equality_indices;
  std::vector<std::size_t> strict_indices;
};

// Rows of P followed by rows of Q.
Polyhedron intersect(const Polyhedron& P, const Polyhedron& Q);

std::optional<RationalVector> feasible_point(const Polyhedron& P);
bool is_empty(const Polyhedron& P);
bool intersects(const Polyhedron& P, const Polyhedron& Q);

// Throws std::invalid_argument when P is empty.
ImplicitSplit implicit_split(const Polyhedron& P);

// n - rank(A=), or -1 for the empty set.
int dimension(const Polyhedron& P);

// Same answer as dimension(P) == n using a single LP.
bool is_full_dimensional(const Polyhedron& P);

// A point with A= x = b= and A+ x < b+. Throws on empty P.
RationalVector interior_point(const Polyhedron& P);

// Finite max and min of every coordinate. Throws on empty P.
bool is_bounded(const Polyhedron& P);

// Components of the graph joining two polyhedra when they intersect. Each
// component is sorted, and components are ordered by their smallest member.
std::vector<std::vector<std::size_t>> connected_components(std::span<const Polyhedron> polys);

}  // namespace tropnet

#endif  // TROPNET_POLYHEDRON_HPP
