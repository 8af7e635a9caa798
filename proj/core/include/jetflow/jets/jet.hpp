#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jetflow/numeric/matrix.hpp"
#include "jetflow/series/series.hpp"

namespace jetflow {

/// p-jet of a formal diffeomorphism of (C^n, 0): the images F_1..F_n of the
/// coordinate functions. Components share nvars and order, vanish at the
/// origin, and the linear part is invertible.
class JetDiffeo {
 public:
  explicit JetDiffeo(std::vector<TruncatedSeries> components);

  static JetDiffeo identity(std::size_t nvars, unsigned order);
  /// Linear map with linear_part() == l.
  static JetDiffeo linear(const Matrix& l, unsigned order);

  std::size_t nvars() const noexcept { return components_.size(); }
  unsigned order() const noexcept { return components_.front().order(); }
  const std::vector<TruncatedSeries>& components() const noexcept { return components_; }
  const TruncatedSeries& component(std::size_t i) const { return components_.at(i); }

  /// L(i, j) = coefficient of x_i in F_j, i.e. the induced operator on the
  /// degree-one monomials. Lower-triangular L makes the whole induced
  /// operator lower-triangular in deglex.
  Matrix linear_part() const;
  JetDiffeo linear_diffeo() const { return linear(linear_part(), order()); }
  bool is_identity() const;

  JetDiffeo truncated(unsigned q) const;

  std::string to_string(std::span<const std::string> vars) const;
  std::string to_string() const;

  friend bool operator==(const JetDiffeo&, const JetDiffeo&) = default;

 private:
  std::vector<TruncatedSeries> components_;
};

/// p-jet of a singular formal vector field sum V_i d/dx_i; components
/// vanish at the origin.
class JetVectorField {
 public:
  explicit JetVectorField(std::vector<TruncatedSeries> components);

  static JetVectorField zero(std::size_t nvars, unsigned order);

  std::size_t nvars() const noexcept { return components_.size(); }
  unsigned order() const noexcept { return components_.front().order(); }
  const std::vector<TruncatedSeries>& components() const noexcept { return components_; }
  const TruncatedSeries& component(std::size_t i) const { return components_.at(i); }

  /// L(i, j) = coefficient of x_i in V_j (same convention as JetDiffeo).
  Matrix linear_part() const;
  bool is_zero() const;

  /// V(f) = sum V_i df/dx_i, exact at the field's order.
  TruncatedSeries apply(const TruncatedSeries& f) const;

  std::string to_string(std::span<const std::string> vars) const;
  std::string to_string() const;

  friend bool operator==(const JetVectorField&, const JetVectorField&) = default;

 private:
  std::vector<TruncatedSeries> components_;
};

/// (F o G)_i = F_i(G_1, ..., G_n).
JetDiffeo diffeo_compose(const JetDiffeo& f, const JetDiffeo& g);
JetDiffeo diffeo_inverse(const JetDiffeo& f);
/// Repeated squaring; negative exponents go through the inverse.
JetDiffeo diffeo_power(const JetDiffeo& f, long k);
/// F o G o F^-1 o G^-1.
JetDiffeo group_commutator(const JetDiffeo& f, const JetDiffeo& g);

/// Components separated by ';' or newlines, each in the series text format.
JetDiffeo parse_diffeo(std::string_view text, std::span<const std::string> vars, unsigned order);
JetVectorField parse_vector_field(std::string_view text, std::span<const std::string> vars, unsigned order);

std::vector<std::string> split_components(std::string_view text);

}  // namespace jetflow
