#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "jetflow/numeric/gaussian_rational.hpp"

namespace jetflow {

using IntVector = std::vector<mpz_class>;
/// Row-major list of rows.
using IntMatrix = std::vector<IntVector>;

/// Sublattice of Z^ambient_rank given by a basis in Hermite normal form
/// (row echelon, positive pivots, entries above each pivot reduced into
/// [0, pivot)). The HNF basis is unique, so lattices compare by basis.
struct IntLattice {
  std::size_t ambient_rank = 0;
  std::vector<IntVector> basis;

  std::size_t rank() const { return basis.size(); }
  bool contains(const IntVector& v) const;

  friend bool operator==(const IntLattice&, const IntLattice&) = default;
};

/// HNF basis of the lattice spanned by `generators` (all of length `ambient`).
IntLattice lattice_from_generators(std::size_t ambient, std::vector<IntVector> generators);

/// {e in Z^cols : A e = 0}.
IntLattice integer_kernel(const IntMatrix& a, std::size_t cols);

/// Some integer solution y of A y = b, if one exists.
std::optional<IntVector> solve_integer_system(const IntMatrix& a, std::size_t cols, const IntVector& b);

/// Order k in {1, 2, 4} of the group of roots of unity inside the
/// multiplicative subgroup of Q(i)* generated by `lambdas`.
/// Throws DomainError on a zero generator.
unsigned torsion_order(std::span<const GaussianRational> lambdas);

/// {e in Z^n : prod lambda_j^{e_j} = 1}.
IntLattice relation_lattice(std::span<const GaussianRational> lambdas);

/// {e in Z^n : prod lambda_j^{e_j} is a root of unity}, together with the
/// exponent u(e) mod 4 of that root for each basis vector (root = i^u).
struct UnitRelations {
  IntLattice lattice;
  std::vector<int> unit_characters;
};
UnitRelations unit_relations(std::span<const GaussianRational> lambdas);

/// prod lambda_j^{e_j}, exactly.
GaussianRational evaluate_monomial(std::span<const GaussianRational> lambdas, const IntVector& e);

}  // namespace jetflow
