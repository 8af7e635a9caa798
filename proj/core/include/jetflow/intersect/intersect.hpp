#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetflow/jets/jet.hpp"
#include "jetflow/series/series.hpp"

namespace jetflow {

/// Generators of an ideal of C[[x]], known up to a common order.
class IdealGens {
 public:
  IdealGens(std::size_t nvars, unsigned order, std::vector<TruncatedSeries> gens);
  explicit IdealGens(std::vector<TruncatedSeries> gens);

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned order() const noexcept { return order_; }
  const std::vector<TruncatedSeries>& gens() const noexcept { return gens_; }

  /// Concatenated generators: the ideal I + J.
  IdealGens operator+(const IdealGens& other) const;
  friend bool operator==(const IdealGens&, const IdealGens&) = default;

  std::string to_string(std::span<const std::string> vars) const;

 private:
  std::size_t nvars_;
  unsigned order_;
  std::vector<TruncatedSeries> gens_;
};

IdealGens parse_ideal(std::string_view text, std::span<const std::string> vars, unsigned order);

struct MultResult {
  enum class Kind { Finite, ExceededCap };
  Kind kind = Kind::ExceededCap;
  unsigned value = 0;
  unsigned stabilized_at = 0;
  unsigned cap = 0;

  static MultResult finite(unsigned value, unsigned m, unsigned cap) { return {Kind::Finite, value, m, cap}; }
  static MultResult exceeded(unsigned cap) { return {Kind::ExceededCap, 0, 0, cap}; }
  bool is_finite() const noexcept { return kind == Kind::Finite; }

  /// "finite:v@m" or "exceeded:cap".
  std::string to_string() const;
  /// Same value and kind; the cap is not compared.
  friend bool operator==(const MultResult& a, const MultResult& b) {
    return a.kind == b.kind && (a.kind == Kind::ExceededCap || (a.value == b.value && a.stabilized_at == b.stabilized_at));
  }
};

/// dim C_m[[x]] / j_m(I), by exact rank of the truncated multiplication map.
unsigned jet_colength(const IdealGens& ideal, unsigned m);

/// jet_colength(I, m) for every m = 0..cap from a single elimination at
/// order cap.
std::vector<unsigned> colength_profile(const IdealGens& ideal, unsigned cap);

/// Colength of I itself: the first m <= cap with colength(m) <= m, or
/// ExceededCap.
MultResult ideal_multiplicity(const IdealGens& ideal, unsigned cap);
/// (V, W) = dim C[[x]] / (I_V + I_W).
MultResult multiplicity(const IdealGens& v, const IdealGens& w, unsigned cap);

/// Generators v o F^-1 (the pull-back of V by F^-1). With this convention
/// pullback(F o G, I) == pullback(F, pullback(G, I)).
IdealGens pullback(const JetDiffeo& f, const IdealGens& ideal);

/// mu_k = multiplicity(pullback(F^k, V), W, cap) for k = 0..kmax, in order.
/// With parallel set, independent k are evaluated on worker threads; the
/// result does not depend on it.
std::vector<std::pair<unsigned, MultResult>> mu_sequence(const JetDiffeo& f, const IdealGens& v, const IdealGens& w,
                                                         unsigned kmax, unsigned cap, bool parallel = false);

/// Index of 0 as a fixed point of F^k: colength of (F^k_i - x_i).
MultResult fixed_point_index(const JetDiffeo& f, unsigned k, unsigned cap);
std::vector<std::pair<unsigned, MultResult>> index_sequence(const JetDiffeo& f, unsigned kmax, unsigned cap,
                                                            bool parallel = false);

}  // namespace jetflow
