#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jetflow/numeric/gaussian_rational.hpp"

namespace jetflow {

/// Dense exact matrix over Q(i), row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const GaussianRational> entries);
  /// Build from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<GaussianRational>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_identity() const;
  bool is_lower_triangular() const;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const GaussianRational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const GaussianRational& s) { return a *= s; }
  friend Matrix operator*(const GaussianRational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend std::vector<GaussianRational> operator*(const Matrix& a, std::span<const GaussianRational> v);

  friend bool operator==(const Matrix&, const Matrix&) = default;

  /// Nonnegative power by repeated squaring.
  Matrix pow(unsigned long exponent) const;
  /// Gauss-Jordan inverse; throws DomainError when singular.
  Matrix inverse() const;
  std::size_t rank() const;
  /// Smallest k with A^k = 0, or 0 if A is not nilpotent.
  std::size_t nilpotency_index() const;
  bool is_nilpotent() const { return nilpotency_index() != 0; }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

/// Commutator AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace jetflow
