#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "jetflow/numeric/gaussian_rational.hpp"

namespace jetflow {

/// Element of Z[i].
struct GaussianInteger {
  mpz_class re{0};
  mpz_class im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  mpz_class norm() const { return re * re + im * im; }
  GaussianRational to_rational() const { return {re, im, 1}; }
  std::string to_string() const { return to_rational().to_string(); }

  friend bool operator==(const GaussianInteger&, const GaussianInteger&) = default;
};

GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b);

/// Exact divisibility test; on success stores a / b in `quotient`.
bool divides(const GaussianInteger& b, const GaussianInteger& a, GaussianInteger& quotient);

/// Euclidean gcd in Z[i], returned in canonical-associate form.
GaussianInteger gaussian_gcd(GaussianInteger a, GaussianInteger b);

/// The associate u*z (u a unit) with re > 0 and im >= 0; sets `unit_exp`
/// so that z = i^unit_exp * result. Zero maps to zero.
GaussianInteger canonical_associate(const GaussianInteger& z, int* unit_exp = nullptr);

/// z = i^unit_exp * prod prime^exponent. Primes are canonical associates,
/// distinct, and sorted by (norm, re). Negative exponents come from the
/// denominator.
struct GaussianFactorization {
  int unit_exp = 0;
  std::vector<std::pair<GaussianInteger, long>> factors;

  GaussianRational reconstruct() const;
};

/// Throws DomainError for z = 0.
GaussianFactorization gauss_factor(const GaussianRational& z);

/// Factorization of a nonzero Gaussian integer (all exponents positive).
GaussianFactorization gauss_factor(const GaussianInteger& z);

/// Rational primes dividing |n| with multiplicity, by trial division.
std::vector<std::pair<mpz_class, unsigned long>> factor_integer(mpz_class n);

}  // namespace jetflow
