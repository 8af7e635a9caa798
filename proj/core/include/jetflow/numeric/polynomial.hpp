#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetflow/numeric/gaussian_rational.hpp"
#include "jetflow/numeric/matrix.hpp"

namespace jetflow {

/// Univariate polynomial over Q(i); coefficients stored from the constant
/// term upwards, with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<GaussianRational> coeffs);
  static Polynomial constant(const GaussianRational& c) { return Polynomial({c}); }
  /// x - root
  static Polynomial linear_factor(const GaussianRational& root);
  static Polynomial from_roots(std::span<const GaussianRational> roots);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<GaussianRational>& coeffs() const noexcept { return coeffs_; }
  GaussianRational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : GaussianRational(); }
  const GaussianRational& leading() const { return coeffs_.back(); }

  Polynomial monic() const;
  Polynomial derivative() const;
  GaussianRational operator()(const GaussianRational& x) const;
  /// Horner evaluation at a square matrix.
  Matrix operator()(const Matrix& m) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const GaussianRational& s);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division; throws DomainError on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// p / gcd(p, p'), monic.
Polynomial squarefree_part(const Polynomial& p);

/// Characteristic polynomial det(x I - M), monic, via Hessenberg reduction.
Polynomial characteristic_polynomial(const Matrix& m);

/// Every root of `p` lying in Q(i), each with its multiplicity, found by
/// divisor enumeration on the Gaussian-integer content (rational-root
/// theorem over Z[i]).
std::vector<std::pair<GaussianRational, unsigned>> roots_in_gaussian_rationals(const Polynomial& p);

/// Distinct roots of `p`; throws SpectrumError if p does not split into
/// linear factors over Q(i).
std::vector<GaussianRational> split_roots(const Polynomial& p);

/// Distinct eigenvalues of a square matrix, sorted by the canonical order.
/// Lower-triangular matrices read their diagonal; otherwise the
/// characteristic polynomial is split over Q(i) (SpectrumError if impossible).
std::vector<GaussianRational> distinct_eigenvalues(const Matrix& m);

}  // namespace jetflow
