#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetflow/numeric/gaussian_rational.hpp"
#include "jetflow/numeric/matrix.hpp"

namespace jetflow {

enum class CharacterKind { Mult, Exp };

/// t -> base^t (Mult) or t -> e^{freq t} (Exp).
struct Character {
  CharacterKind kind = CharacterKind::Exp;
  GaussianRational value;

  static Character mult(const GaussianRational& base);
  static Character exp(const GaussianRational& freq) { return {CharacterKind::Exp, freq}; }
  static Character trivial(CharacterKind kind) { return kind == CharacterKind::Mult ? mult(1) : exp(0); }

  bool is_trivial() const { return kind == CharacterKind::Mult ? value.is_one() : value.is_zero(); }
  Character operator*(const Character& rhs) const;

  friend bool operator==(const Character&, const Character&) = default;
  friend std::strong_ordering operator<=>(const Character& a, const Character& b);
};

/// Finite sum of coefficient * character(t) * t^k, all characters of one kind.
class ExpPoly {
 public:
  using Key = std::pair<Character, unsigned>;
  using Terms = std::map<Key, GaussianRational>;

  explicit ExpPoly(CharacterKind kind = CharacterKind::Exp) : kind_(kind) {}
  static ExpPoly constant(CharacterKind kind, const GaussianRational& c);
  static ExpPoly term(const Character& ch, unsigned t_power, const GaussianRational& c = 1);

  CharacterKind kind() const noexcept { return kind_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest power of t present (0 for the zero polynomial).
  unsigned max_t_power() const;
  /// True when every character is trivial, i.e. the value is a polynomial in t.
  bool is_polynomial() const;

  void add_term(const Character& ch, unsigned t_power, const GaussianRational& c);

  ExpPoly operator-() const;
  ExpPoly& operator+=(const ExpPoly& rhs);
  ExpPoly& operator-=(const ExpPoly& rhs);
  ExpPoly& operator*=(const GaussianRational& s);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(ExpPoly a, const GaussianRational& s) { return a *= s; }
  friend ExpPoly operator*(const GaussianRational& s, ExpPoly a) { return a *= s; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

  /// "(1/2)*2^t*t^2 + 3^t", "(2)*exp((1+i)*t)*t".
  std::string to_string(const std::string& var = "t") const;

 private:
  CharacterKind kind_;
  Terms terms_;
};

ExpPoly ep_add(const ExpPoly& a, const ExpPoly& b);
ExpPoly ep_mul(const ExpPoly& a, const ExpPoly& b);
/// d/dt; Exp kind only.
ExpPoly ep_dt(const ExpPoly& e);

/// Exact value at an integer; Mult kind only.
GaussianRational ep_eval_int(const ExpPoly& e, long m);
/// Exact value at any t when every character is trivial.
GaussianRational ep_eval_polynomial(const ExpPoly& e, const GaussianRational& t);
/// Double-precision value; Mult bases use the principal logarithm.
std::complex<double> ep_eval_num(const ExpPoly& e, std::complex<double> t);

/// Dense matrix of exponential polynomials of a single kind.
class ExpPolyMatrix {
 public:
  ExpPolyMatrix() = default;
  ExpPolyMatrix(std::size_t rows, std::size_t cols, CharacterKind kind)
      : rows_(rows), cols_(cols), data_(rows * cols, ExpPoly(kind)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  ExpPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const ExpPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  unsigned max_t_power() const;

  friend bool operator==(const ExpPolyMatrix&, const ExpPolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExpPoly> data_;
};

struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::complex<double>> data;
  std::complex<double>& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const std::complex<double>& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

Matrix eval_int(const ExpPolyMatrix& m, long t);
Matrix eval_polynomial(const ExpPolyMatrix& m, const GaussianRational& t);
ComplexMatrix eval_num(const ExpPolyMatrix& m, std::complex<double> t);
ExpPolyMatrix dt(const ExpPolyMatrix& m);
/// Constant matrix times an exponential-polynomial matrix.
ExpPolyMatrix operator*(const Matrix& a, const ExpPolyMatrix& m);
ExpPolyMatrix operator*(const ExpPolyMatrix& a, const ExpPolyMatrix& b);

/// Long-format CSV "row,col,value,tag" of the nonzero entries, with deglex
/// monomial labels for rows and columns.
std::string to_csv(const ExpPolyMatrix& m, std::size_t nvars, std::span<const std::string> vars);

}  // namespace jetflow
