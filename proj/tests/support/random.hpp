#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "jetflow/jets/jet.hpp"
#include "jetflow/numeric/gaussian_rational.hpp"
#include "jetflow/numeric/matrix.hpp"
#include "jetflow/series/series.hpp"

namespace jetflow::testing {

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }

  GaussianRational small_rational(long bound = 3) {
    return {integer(-bound, bound), 0, integer(1, bound)};
  }
  GaussianRational small_gaussian(long bound = 3) {
    return {integer(-bound, bound), integer(-bound, bound), integer(1, bound)};
  }
  GaussianRational nonzero(long bound = 3) {
    for (;;) {
      GaussianRational z = small_gaussian(bound);
      if (!z.is_zero()) return z;
    }
  }

  /// Sparse series with each coefficient present with probability `density`.
  TruncatedSeries series(std::size_t n, unsigned p, unsigned min_degree, double density, bool complex = false) {
    TruncatedSeries s(n, p);
    const std::size_t d = monomial_count(n, p);
    for (std::size_t r = min_degree == 0 ? 0 : monomial_count(n, min_degree - 1); r < d; ++r) {
      if (chance(density)) s.add_term_by_rank(r, complex ? small_gaussian() : small_rational());
    }
    return s;
  }

  /// Lower-triangular linear part with the given diagonal, plus random
  /// nonlinear terms.
  JetDiffeo triangular_diffeo(const std::vector<GaussianRational>& diag, unsigned p, double density) {
    const std::size_t n = diag.size();
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      l(i, i) = diag[i];
      for (std::size_t j = 0; j < i; ++j) l(i, j) = chance(0.5) ? small_rational() : GaussianRational();
    }
    return with_higher_terms(l, p, density);
  }

  JetDiffeo unipotent_diffeo(std::size_t n, unsigned p, double density) {
    return triangular_diffeo(std::vector<GaussianRational>(n, GaussianRational(1)), p, density);
  }

  JetDiffeo generic_diffeo(std::size_t n, unsigned p, double density) {
    for (;;) {
      Matrix l(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) l(i, j) = small_rational();
      }
      if (l.rank() == n) return with_higher_terms(l, p, density);
    }
  }

  JetDiffeo with_higher_terms(const Matrix& l, unsigned p, double density) {
    const std::size_t n = l.rows();
    std::vector<TruncatedSeries> c;
    for (std::size_t j = 0; j < n; ++j) {
      TruncatedSeries s = p >= 2 ? series(n, p, 2, density) : TruncatedSeries(n, p);
      for (std::size_t i = 0; i < n; ++i) {
        if (p >= 1) s.add_term_by_rank(i + 1, l(i, j));
      }
      c.push_back(std::move(s));
    }
    return JetDiffeo(std::move(c));
  }

  /// Vector field with strictly lower-triangular (hence nilpotent) linear part.
  JetVectorField nilpotent_field(std::size_t n, unsigned p, double density) {
    std::vector<TruncatedSeries> c;
    for (std::size_t j = 0; j < n; ++j) {
      TruncatedSeries s = p >= 2 ? series(n, p, 2, density) : TruncatedSeries(n, p);
      for (std::size_t i = j + 1; i < n; ++i) {
        if (p >= 1 && chance(0.5)) s.add_term_by_rank(i + 1, small_rational());
      }
      c.push_back(std::move(s));
    }
    return JetVectorField(std::move(c));
  }

  JetVectorField triangular_field(const std::vector<GaussianRational>& diag, unsigned p, double density) {
    const std::size_t n = diag.size();
    std::vector<TruncatedSeries> c;
    for (std::size_t j = 0; j < n; ++j) {
      TruncatedSeries s = p >= 2 ? series(n, p, 2, density) : TruncatedSeries(n, p);
      if (p >= 1) {
        s.add_term_by_rank(j + 1, diag[j]);
        for (std::size_t i = j + 1; i < n; ++i) {
          if (chance(0.5)) s.add_term_by_rank(i + 1, small_rational());
        }
      }
      c.push_back(std::move(s));
    }
    return JetVectorField(std::move(c));
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline std::vector<std::string> vars(std::size_t n) { return default_variable_names(n); }

inline TruncatedSeries S(const char* text, std::size_t n, unsigned p) {
  const auto v = vars(n);
  return parse_series(text, v, p);
}

inline JetDiffeo D(const char* text, std::size_t n, unsigned p) {
  const auto v = vars(n);
  return parse_diffeo(text, v, p);
}

inline JetVectorField VF(const char* text, std::size_t n, unsigned p) {
  const auto v = vars(n);
  return parse_vector_field(text, v, p);
}

inline GaussianRational Q(const char* text) { return GaussianRational::parse(text); }

}  // namespace jetflow::testing
