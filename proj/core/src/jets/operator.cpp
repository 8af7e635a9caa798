#include "jetflow/jets/operator.hpp"

#include <set>
#include <utility>

#include "jetflow/errors.hpp"
#include "jetflow/numeric/polynomial.hpp"

namespace jetflow {

namespace {

TruncatedSeries column_series(const JetOperator& op, std::size_t col) {
  TruncatedSeries s(op.nvars, op.order);
  for (std::size_t r = 0; r < op.dimension(); ++r) {
    const auto& c = op.matrix(r, col);
    if (!c.is_zero()) s.add_term_by_rank(r, c);
  }
  return s;
}

void set_column(Matrix& m, std::size_t col, const TruncatedSeries& s) {
  for (const auto& [rank, c] : s.terms()) m(rank, col) = c;
}

}  // namespace

TruncatedSeries JetOperator::image(std::size_t rank) const {
  if (rank >= dimension()) throw DomainError("JetOperator::image: rank out of range");
  return column_series(*this, rank);
}

TruncatedSeries JetOperator::apply(const TruncatedSeries& f) const {
  if (f.nvars() != nvars || f.order() < order) throw DomainError("JetOperator::apply: incompatible series");
  TruncatedSeries out(nvars, order);
  for (const auto& [rank, c] : f.terms()) {
    if (rank >= dimension()) continue;
    for (std::size_t r = 0; r < dimension(); ++r) {
      const auto& m = matrix(r, rank);
      if (!m.is_zero()) out.add_term_by_rank(r, m * c);
    }
  }
  return out;
}

JetOperator make_operator(std::size_t nvars, unsigned order, Matrix m) {
  const std::size_t d = monomial_count(nvars, order);
  if (m.rows() != d || m.cols() != d) {
    throw DomainError("make_operator: expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  }
  return JetOperator{nvars, order, std::move(m)};
}

JetOperator as_operator(const JetDiffeo& f) {
  const std::size_t n = f.nvars();
  const unsigned p = f.order();
  const std::size_t d = monomial_count(n, p);
  Matrix m(d, d);
  std::vector<TruncatedSeries> images;
  images.reserve(d);
  images.push_back(TruncatedSeries::constant(n, p, 1));
  for (std::size_t r = 1; r < d; ++r) {
    MultiIndex a = deglex_unrank(n, r);
    std::size_t j = 0;
    while (a[j] == 0) ++j;
    a[j] -= 1;
    images.push_back(images[deglex_rank(a)] * f.component(j));
  }
  for (std::size_t r = 0; r < d; ++r) set_column(m, r, images[r]);
  return JetOperator{n, p, std::move(m)};
}

JetOperator vf_as_operator(const JetVectorField& v) {
  const std::size_t n = v.nvars();
  const unsigned p = v.order();
  const std::size_t d = monomial_count(n, p);
  std::vector<std::vector<std::pair<MultiIndex, GaussianRational>>> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [rank, c] : v.component(i).terms()) terms[i].emplace_back(deglex_unrank(n, rank), c);
  }
  Matrix m(d, d);
  for (std::size_t r = 1; r < d; ++r) {
    const MultiIndex a = deglex_unrank(n, r);
    const unsigned da = degree(a);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      const GaussianRational k(static_cast<long>(a[i]));
      for (const auto& [b, c] : terms[i]) {
        if (da - 1 + degree(b) > p) continue;
        MultiIndex g = b;
        for (std::size_t l = 0; l < n; ++l) g[l] += a[l];
        g[i] -= 1;
        m(deglex_rank(g), r) += k * c;
      }
    }
  }
  return JetOperator{n, p, std::move(m)};
}

JetDiffeo diffeo_from_operator(const JetOperator& op) {
  std::vector<TruncatedSeries> c;
  for (std::size_t i = 0; i < op.nvars; ++i) c.push_back(column_series(op, i + 1));
  return JetDiffeo(std::move(c));
}

JetVectorField field_from_operator(const JetOperator& op) {
  std::vector<TruncatedSeries> c;
  for (std::size_t i = 0; i < op.nvars; ++i) c.push_back(column_series(op, i + 1));
  return JetVectorField(std::move(c));
}

bool is_algebra_automorphism(const JetOperator& op) {
  if (op.order == 0) return op.matrix.is_identity();
  try {
    return as_operator(diffeo_from_operator(op)) == op;
  } catch (const DomainError&) {
    return false;
  }
}

bool is_derivation(const JetOperator& op) {
  try {
    return vf_as_operator(field_from_operator(op)) == op;
  } catch (const DomainError&) {
    return false;
  }
}

std::vector<GaussianRational> linear_spectrum(const Matrix& linear_part) {
  if (!linear_part.is_square()) throw DomainError("linear_spectrum: matrix not square");
  const std::size_t n = linear_part.rows();
  std::vector<GaussianRational> out;
  if (linear_part.is_lower_triangular()) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(linear_part(i, i));
    return out;
  }
  for (const auto& [root, mult] : roots_in_gaussian_rationals(characteristic_polynomial(linear_part))) {
    for (unsigned k = 0; k < mult; ++k) out.push_back(root);
  }
  if (out.size() != n) {
    throw SpectrumError("linear part has eigenvalues outside Q(i); characteristic polynomial " +
                        characteristic_polynomial(linear_part).to_string() + " does not split");
  }
  return out;
}

namespace {

template <class Combine>
std::vector<GaussianRational> monomial_eigenvalues(const std::vector<GaussianRational>& lambda, unsigned p,
                                                   GaussianRational unit, Combine combine) {
  const std::size_t n = lambda.size();
  std::set<GaussianRational> values;
  for (const auto& a : monomial_basis(n, p)) {
    GaussianRational v = unit;
    for (std::size_t i = 0; i < n; ++i) {
      for (unsigned k = 0; k < a[i]; ++k) v = combine(v, lambda[i]);
    }
    values.insert(std::move(v));
  }
  return {values.begin(), values.end()};
}

}  // namespace

std::vector<GaussianRational> operator_eigenvalues(const JetDiffeo& f) {
  return monomial_eigenvalues(linear_spectrum(f.linear_part()), f.order(), GaussianRational(1),
                              [](const GaussianRational& a, const GaussianRational& b) { return a * b; });
}

std::vector<GaussianRational> operator_eigenvalues(const JetVectorField& v) {
  return monomial_eigenvalues(linear_spectrum(v.linear_part()), v.order(), GaussianRational(0),
                              [](const GaussianRational& a, const GaussianRational& b) { return a + b; });
}

std::vector<GaussianRational> jet_spectrum(const JetVectorField& v) {
  const Matrix l = v.linear_part();
  if (!l.is_lower_triangular()) throw DomainError("jet_spectrum: linear part is not lower-triangular");
  const std::size_t n = v.nvars();
  std::vector<GaussianRational> out;
  const std::size_t d = monomial_count(n, v.order());
  for (std::size_t r = 1; r < d; ++r) {
    const MultiIndex a = deglex_unrank(n, r);
    GaussianRational s;
    for (std::size_t i = 0; i < n; ++i) s += GaussianRational(static_cast<long>(a[i])) * l(i, i);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace jetflow
