#include "jetflow/series/multi_index.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "jetflow/errors.hpp"

namespace jetflow {

namespace {

constexpr unsigned kTable = 96;

struct BinomialTable {
  std::array<std::array<std::uint64_t, kTable>, kTable> c{};
  BinomialTable() {
    for (unsigned n = 0; n < kTable; ++n) {
      c[n][0] = 1;
      for (unsigned k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
  }
};

// Monomials of degree exactly d in m variables.
std::uint64_t count_degree(unsigned m, unsigned d) {
  if (m == 0) return d == 0 ? 1 : 0;
  return binomial(d + m - 1, m - 1);
}

}  // namespace

unsigned degree(std::span<const unsigned> alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0U);
}

bool deglex_less(std::span<const unsigned> a, std::span<const unsigned> b) {
  const unsigned da = degree(a);
  const unsigned db = degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  static const BinomialTable table;
  if (n < kTable) return table.c[n][k];
  // Multiplicative formula; exact at each step.
  std::uint64_t r = 1;
  k = std::min(k, n - k);
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

std::size_t monomial_count(std::size_t nvars, unsigned max_degree) {
  return static_cast<std::size_t>(binomial(static_cast<unsigned>(nvars) + max_degree, static_cast<unsigned>(nvars)));
}

std::size_t deglex_rank(std::span<const unsigned> alpha) {
  const auto n = static_cast<unsigned>(alpha.size());
  const unsigned d = degree(alpha);
  if (d == 0) return 0;
  std::size_t r = monomial_count(n, d - 1);
  unsigned rem = d;
  for (unsigned i = 0; i + 1 < n; ++i) {
    // Monomials sharing the prefix but with a larger exponent at i come first.
    for (unsigned v = rem; v > alpha[i]; --v) r += count_degree(n - i - 1, rem - v);
    rem -= alpha[i];
  }
  return r;
}

MultiIndex deglex_unrank(std::size_t nvars, std::size_t rank) {
  const auto n = static_cast<unsigned>(nvars);
  MultiIndex alpha(nvars, 0);
  if (rank == 0 || n == 0) {
    if (rank != 0) throw DomainError("deglex_unrank: rank out of range for zero variables");
    return alpha;
  }
  unsigned d = 1;
  while (monomial_count(n, d) <= rank) ++d;
  std::size_t offset = rank - monomial_count(n, d - 1);
  unsigned rem = d;
  for (unsigned i = 0; i + 1 < n; ++i) {
    unsigned v = rem;
    for (;; --v) {
      const std::uint64_t block = count_degree(n - i - 1, rem - v);
      if (offset < block) break;
      offset -= block;
    }
    alpha[i] = v;
    rem -= v;
  }
  alpha[n - 1] = rem;
  return alpha;
}

std::vector<MultiIndex> monomial_basis(std::size_t nvars, unsigned max_degree) {
  const std::size_t count = monomial_count(nvars, max_degree);
  std::vector<MultiIndex> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) out.push_back(deglex_unrank(nvars, r));
  return out;
}

std::string monomial_label(std::span<const unsigned> alpha, std::span<const std::string> vars) {
  std::string out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (alpha[i] > 1) out += '^' + std::to_string(alpha[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
  if (nvars == 1) return {"x"};
  if (nvars == 2) return {"x", "y"};
  if (nvars == 3) return {"x", "y", "z"};
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= nvars; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

}  // namespace jetflow
