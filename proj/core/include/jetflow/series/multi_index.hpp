#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace jetflow {

/// Exponent vector alpha of a monomial x^alpha.
using MultiIndex = std::vector<unsigned>;

unsigned degree(std::span<const unsigned> alpha);

/// Deglex comparison: total degree first, then lexicographic with x1 most
/// significant and larger exponents first. In two variables the order is
/// 1, x, y, x^2, xy, y^2, x^3, ...
bool deglex_less(std::span<const unsigned> a, std::span<const unsigned> b);

/// Binomial coefficient C(n, k) for small arguments.
std::uint64_t binomial(unsigned n, unsigned k);

/// Number of monomials of degree <= d in n variables, C(n + d, n).
std::size_t monomial_count(std::size_t nvars, unsigned max_degree);

/// Position of x^alpha in the deglex enumeration (0 for the constant).
/// Ranks do not depend on a truncation order.
std::size_t deglex_rank(std::span<const unsigned> alpha);

/// Inverse of deglex_rank for `nvars` variables.
MultiIndex deglex_unrank(std::size_t nvars, std::size_t rank);

/// The deglex-ordered monomial list of C_p[[x]].
std::vector<MultiIndex> monomial_basis(std::size_t nvars, unsigned max_degree);

/// "x^2*y" style label; "1" for the constant monomial.
std::string monomial_label(std::span<const unsigned> alpha, std::span<const std::string> vars);

/// Default variable names: x for n = 1, x,y for n = 2, x,y,z for n = 3,
/// x1..xn otherwise.
std::vector<std::string> default_variable_names(std::size_t nvars);

}  // namespace jetflow
