#include "jetflow/numeric/lattice.hpp"

#include <map>
#include <numeric>
#include <utility>

#include "jetflow/errors.hpp"
#include "jetflow/numeric/factor.hpp"

namespace jetflow {

namespace {

void axpy(IntVector& y, const mpz_class& a, const IntVector& x) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

// Unimodular integer row operations bringing the first `width` columns of
// `rows` into Hermite normal form. Returns the number of pivot rows; each
// of those has its pivot column recorded in `pivots`.
std::size_t hermite_rows(std::vector<IntVector>& rows, std::size_t width,
                         std::vector<std::size_t>* pivots = nullptr) {
  std::size_t r = 0;
  const std::size_t m = rows.size();
  for (std::size_t col = 0; col < width && r < m; ++col) {
    for (std::size_t k = r + 1; k < m; ++k) {
      if (sgn(rows[k][col]) == 0) continue;
      if (sgn(rows[r][col]) == 0) {
        std::swap(rows[r], rows[k]);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][col].get_mpz_t(),
                 rows[k][col].get_mpz_t());
      const mpz_class a_g = rows[r][col] / g;
      const mpz_class b_g = rows[k][col] / g;
      IntVector new_r(rows[r].size());
      IntVector new_k(rows[r].size());
      for (std::size_t j = 0; j < new_r.size(); ++j) {
        new_r[j] = s * rows[r][j] + t * rows[k][j];
        new_k[j] = a_g * rows[k][j] - b_g * rows[r][j];
      }
      rows[r] = std::move(new_r);
      rows[k] = std::move(new_k);
    }
    if (sgn(rows[r][col]) == 0) continue;
    if (sgn(rows[r][col]) < 0) {
      for (auto& v : rows[r]) v = -v;
    }
    for (std::size_t k = 0; k < r; ++k) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[k][col].get_mpz_t(), rows[r][col].get_mpz_t());
      if (sgn(q) != 0) axpy(rows[k], -q, rows[r]);
    }
    if (pivots != nullptr) pivots->push_back(col);
    ++r;
  }
  return r;
}

// Rows [A^T | I]; after HNF on the A^T block the trailing rows carry a
// kernel basis and the leading rows the echelon form.
std::vector<IntVector> augmented_transpose(const IntMatrix& a, std::size_t cols) {
  const std::size_t r = a.size();
  std::vector<IntVector> rows(cols, IntVector(r + cols, mpz_class(0)));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < r; ++i) {
      if (a[i].size() != cols) throw DomainError("integer matrix rows have inconsistent length");
      rows[j][i] = a[i][j];
    }
    rows[j][r + j] = 1;
  }
  return rows;
}

}  // namespace

bool IntLattice::contains(const IntVector& v) const {
  if (v.size() != ambient_rank) return false;
  IntVector w = v;
  for (const auto& row : basis) {
    std::size_t p = 0;
    while (p < row.size() && sgn(row[p]) == 0) ++p;
    for (std::size_t j = 0; j < p; ++j) {
      if (sgn(w[j]) != 0) return false;
    }
    if (!mpz_divisible_p(w[p].get_mpz_t(), row[p].get_mpz_t())) return false;
    const mpz_class q = w[p] / row[p];
    axpy(w, -q, row);
  }
  for (const auto& x : w) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

IntLattice lattice_from_generators(std::size_t ambient, std::vector<IntVector> generators) {
  for (const auto& g : generators) {
    if (g.size() != ambient) throw DomainError("lattice generator has wrong length");
  }
  const std::size_t r = hermite_rows(generators, ambient);
  generators.resize(r);
  return {ambient, std::move(generators)};
}

IntLattice integer_kernel(const IntMatrix& a, std::size_t cols) {
  const std::size_t r = a.size();
  std::vector<IntVector> rows = augmented_transpose(a, cols);
  const std::size_t rank = hermite_rows(rows, r);
  std::vector<IntVector> kernel;
  for (std::size_t k = rank; k < cols; ++k) {
    kernel.emplace_back(rows[k].begin() + static_cast<std::ptrdiff_t>(r), rows[k].end());
  }
  return lattice_from_generators(cols, std::move(kernel));
}

std::optional<IntVector> solve_integer_system(const IntMatrix& a, std::size_t cols, const IntVector& b) {
  const std::size_t r = a.size();
  if (b.size() != r) throw DomainError("solve_integer_system: right-hand side has wrong length");
  std::vector<IntVector> rows = augmented_transpose(a, cols);
  std::vector<std::size_t> pivots;
  const std::size_t rank = hermite_rows(rows, r, &pivots);
  IntVector residual = b;
  IntVector y(cols, mpz_class(0));
  for (std::size_t k = 0; k < rank; ++k) {
    const std::size_t p = pivots[k];
    const mpz_class& h = rows[k][p];
    if (!mpz_divisible_p(residual[p].get_mpz_t(), h.get_mpz_t())) return std::nullopt;
    const mpz_class z = residual[p] / h;
    if (sgn(z) == 0) continue;
    for (std::size_t i = 0; i < r; ++i) residual[i] -= z * rows[k][i];
    for (std::size_t j = 0; j < cols; ++j) y[j] += z * rows[k][r + j];
  }
  for (const auto& x : residual) {
    if (sgn(x) != 0) return std::nullopt;
  }
  return y;
}

UnitRelations unit_relations(std::span<const GaussianRational> lambdas) {
  const std::size_t n = lambdas.size();
  std::vector<GaussianFactorization> factored;
  factored.reserve(n);
  for (const auto& l : lambdas) {
    if (l.is_zero()) throw DomainError("torsion: generators must be nonzero");
    factored.push_back(gauss_factor(l));
  }
  // One row per distinct Gaussian prime.
  std::map<std::pair<mpz_class, mpz_class>, std::size_t> prime_row;
  IntMatrix exponents;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [prime, e] : factored[j].factors) {
      auto key = std::make_pair(prime.re, prime.im);
      auto it = prime_row.find(key);
      if (it == prime_row.end()) {
        it = prime_row.emplace(key, exponents.size()).first;
        exponents.emplace_back(n, mpz_class(0));
      }
      exponents[it->second][j] = e;
    }
  }
  UnitRelations out;
  out.lattice = integer_kernel(exponents, n);
  for (const auto& e : out.lattice.basis) {
    mpz_class u = 0;
    for (std::size_t j = 0; j < n; ++j) u += e[j] * factored[j].unit_exp;
    out.unit_characters.push_back(static_cast<int>(mpz_fdiv_ui(u.get_mpz_t(), 4)));
  }
  return out;
}

unsigned torsion_order(std::span<const GaussianRational> lambdas) {
  const UnitRelations rel = unit_relations(lambdas);
  int g = 4;
  for (int u : rel.unit_characters) g = std::gcd(g, u);
  return static_cast<unsigned>(4 / g);
}

IntLattice relation_lattice(std::span<const GaussianRational> lambdas) {
  const UnitRelations rel = unit_relations(lambdas);
  const std::size_t n = lambdas.size();
  const std::size_t r = rel.lattice.rank();
  if (r == 0) return {n, {}};
  // c in Z^r with sum c_b u_b = 0 mod 4 is the projection of ker [u | 4].
  IntMatrix char_row(1, IntVector(r + 1));
  for (std::size_t b = 0; b < r; ++b) char_row[0][b] = rel.unit_characters[b];
  char_row[0][r] = 4;
  const IntLattice coeffs = integer_kernel(char_row, r + 1);
  std::vector<IntVector> gens;
  for (const auto& c : coeffs.basis) {
    IntVector g(n, mpz_class(0));
    for (std::size_t b = 0; b < r; ++b) {
      if (sgn(c[b]) != 0) axpy(g, c[b], rel.lattice.basis[b]);
    }
    gens.push_back(std::move(g));
  }
  return lattice_from_generators(n, std::move(gens));
}

GaussianRational evaluate_monomial(std::span<const GaussianRational> lambdas, const IntVector& e) {
  if (e.size() != lambdas.size()) throw DomainError("evaluate_monomial: length mismatch");
  GaussianRational value(1);
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (!e[j].fits_slong_p()) throw DomainError("evaluate_monomial: exponent too large");
    value *= lambdas[j].pow(e[j].get_si());
  }
  return value;
}

}  // namespace jetflow
