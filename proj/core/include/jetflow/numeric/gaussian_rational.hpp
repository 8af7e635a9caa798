#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jetflow {

/// Exact element (re + im*i) / den of Q(i).
///
/// Stored normalized: den > 0 and gcd(re, im, den) = 1, so two values are
/// equal exactly when their fields are equal.
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0), den_(1) {}
  GaussianRational(long value) : re_(value), im_(0), den_(1) {}  // NOLINT
  GaussianRational(const mpz_class& value) : re_(value), im_(0), den_(1) {}  // NOLINT
  GaussianRational(const mpq_class& value);  // NOLINT
  GaussianRational(mpz_class re, mpz_class im, mpz_class den = 1);

  static GaussianRational from_parts(const mpq_class& re, const mpq_class& im);
  static GaussianRational imaginary_unit() { return {0, 1, 1}; }

  const mpz_class& num_re() const noexcept { return re_; }
  const mpz_class& num_im() const noexcept { return im_; }
  const mpz_class& den() const noexcept { return den_; }

  mpq_class real() const;
  mpq_class imag() const;

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const noexcept { return im_ == 0 && den_ == 1 && re_ == 1; }
  bool is_real() const noexcept { return sgn(im_) == 0; }
  bool is_gaussian_integer() const noexcept { return den_ == 1; }

  GaussianRational conj() const { return {re_, -im_, den_}; }
  /// |z|^2 as an exact rational.
  mpq_class norm() const;
  /// Throws DomainError on zero.
  GaussianRational inverse() const;
  GaussianRational pow(long exponent) const;

  std::complex<double> to_complex() const;

  GaussianRational operator-() const { return {-re_, -im_, den_}; }
  GaussianRational& operator+=(const GaussianRational& rhs);
  GaussianRational& operator-=(const GaussianRational& rhs);
  GaussianRational& operator*=(const GaussianRational& rhs);
  GaussianRational& operator/=(const GaussianRational& rhs);

  friend GaussianRational operator+(GaussianRational lhs, const GaussianRational& rhs) {
    return lhs += rhs;
  }
  friend GaussianRational operator-(GaussianRational lhs, const GaussianRational& rhs) {
    return lhs -= rhs;
  }
  friend GaussianRational operator*(GaussianRational lhs, const GaussianRational& rhs) {
    return lhs *= rhs;
  }
  friend GaussianRational operator/(GaussianRational lhs, const GaussianRational& rhs) {
    return lhs /= rhs;
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_ && a.den_ == b.den_;
  }
  /// Total order (real part, then imaginary part); used for canonical
  /// ordering of keys only, it has no field meaning.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

  /// Canonical text: "a/b+c/di" with zero parts omitted, e.g. "3/5+4/5i",
  /// "-1", "i", "-2i", "0".
  std::string to_string() const;
  static GaussianRational parse(std::string_view text);

 private:
  void normalize();

  mpz_class re_;
  mpz_class im_;
  mpz_class den_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

namespace detail {

/// Reads an unsigned rational literal "digits[/digits]" optionally followed
/// by a bare 'i' at `pos` (no sign). Advances `pos` past the literal.
/// Returns false and leaves `pos` unchanged if no digits are present.
/// Throws ParseError on a zero denominator.
bool read_number_literal(std::string_view text, std::size_t& pos, GaussianRational& out);

}  // namespace detail

}  // namespace jetflow
