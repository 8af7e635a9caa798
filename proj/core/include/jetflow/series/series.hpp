#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jetflow/numeric/gaussian_rational.hpp"
#include "jetflow/series/multi_index.hpp"

namespace jetflow {

/// Element of C_p[[x]] = C[[x]] / m^{p+1} with Q(i) coefficients.
///
/// Coefficients are kept in a sparse map keyed by deglex rank. Every stored
/// index has degree <= order() and no stored coefficient is zero.
class TruncatedSeries {
 public:
  using Terms = std::map<std::size_t, GaussianRational>;

  TruncatedSeries() = default;
  TruncatedSeries(std::size_t nvars, unsigned order) : nvars_(nvars), order_(order) {}

  static TruncatedSeries constant(std::size_t nvars, unsigned order, const GaussianRational& c);
  /// The coordinate function x_{index} (0-based).
  static TruncatedSeries variable(std::size_t nvars, unsigned order, std::size_t index);
  static TruncatedSeries monomial(std::size_t nvars, unsigned order, const MultiIndex& alpha,
                                  const GaussianRational& c = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned order() const noexcept { return order_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  GaussianRational coefficient(std::size_t rank) const;
  GaussianRational coefficient(const MultiIndex& alpha) const;
  GaussianRational constant_term() const { return coefficient(std::size_t{0}); }

  /// Adds c * x^alpha; silently dropped when deg alpha > order.
  void add_term(const MultiIndex& alpha, const GaussianRational& c);
  void add_term_by_rank(std::size_t rank, const GaussianRational& c);

  /// Minimal degree of a nonzero coefficient; nullopt when the series is
  /// zero at this order (the true order is then >= order() + 1).
  std::optional<unsigned> valuation() const;

  /// Drop all terms of degree > q; q must not exceed order().
  TruncatedSeries truncated(unsigned q) const;
  /// Homogeneous component of degree d.
  TruncatedSeries homogeneous_part(unsigned d) const;

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(const GaussianRational& s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const GaussianRational& s) { return a *= s; }
  friend TruncatedSeries operator*(const GaussianRational& s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Same nvars, order and coefficients.
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  std::string to_string(std::span<const std::string> vars) const;
  std::string to_string() const;

 private:
  std::size_t nvars_ = 0;
  unsigned order_ = 0;
  Terms terms_;
};

/// Result order is the minimum of the operand orders; throws DomainError on
/// an nvars mismatch.
TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// f(g_1, ..., g_m): f has m variables, each g_i has n variables and zero
/// constant term (DomainError otherwise). Result order is the minimum order
/// among f and the g_i.
TruncatedSeries ts_compose(const TruncatedSeries& f, std::span<const TruncatedSeries> g);

/// Order of vanishing; nullopt stands for "zero at this order", i.e. the
/// true order is at least order() + 1.
inline std::optional<unsigned> ts_order(const TruncatedSeries& f) { return f.valuation(); }

/// Multiplicative inverse of a unit (nonzero constant term).
TruncatedSeries ts_invert_unit(const TruncatedSeries& f);

/// d f / d x_i; the top-degree information is lost, so the result carries
/// order max(order - 1, 0).
TruncatedSeries partial_derivative(const TruncatedSeries& f, std::size_t i);

/// Same coefficients viewed at a lower order (q <= order) or, for q above
/// the order, a DomainError; truncation never invents missing tail data.
TruncatedSeries at_order(const TruncatedSeries& f, unsigned q);

/// Parses "y - x^2", "3/5*x*y + (1+2i)*x^3", "x/(1-x)" and friends into a
/// series over the declared variables, truncated at `order`. Supports
/// + - * / ^ (nonnegative integer powers), parentheses, rational and
/// imaginary literals ("4/5i" is (4/5)*i), the imaginary unit i, and
/// division by units. Errors are reported as ParseError with a position.
TruncatedSeries parse_series(std::string_view text, std::span<const std::string> vars, unsigned order);

}  // namespace jetflow
