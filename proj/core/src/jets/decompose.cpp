#include "jetflow/jets/decompose.hpp"

#include <bit>
#include <utility>
#include <vector>

#include "jetflow/errors.hpp"
#include "jetflow/numeric/polynomial.hpp"

namespace jetflow {

namespace {

bool is_unipotent(const Matrix& m) { return (m - Matrix::identity(m.rows())).is_nilpotent(); }

}  // namespace

JordanChevalley jordan_chevalley(const Matrix& m) {
  if (!m.is_square()) throw DomainError("jordan_chevalley: matrix not square");
  const auto eigenvalues = distinct_eigenvalues(m);
  return jordan_chevalley(m, eigenvalues);
}

JordanChevalley jordan_chevalley(const Matrix& m, std::span<const GaussianRational> eigenvalues) {
  if (!m.is_square()) throw DomainError("jordan_chevalley: matrix not square");
  const std::size_t d = m.rows();
  if (d == 0) return {m, m};
  const Polynomial q = Polynomial::from_roots(eigenvalues);
  const Polynomial dq = q.derivative();
  const unsigned iterations = static_cast<unsigned>(std::bit_width(d - 1)) + 1;
  Matrix s = m;
  for (unsigned it = 0; it < iterations; ++it) {
    const Matrix qs = q(s);
    if (qs.is_zero()) break;
    s -= qs * dq(s).inverse();
  }
  if (!q(s).is_zero()) throw DomainError("jordan_chevalley: eigenvalue list does not cover the spectrum");
  Matrix n = m - s;
  if (!n.is_nilpotent()) throw InternalError("jordan_chevalley: nilpotent part is not nilpotent");
  if (!commutator(s, n).is_zero()) throw InternalError("jordan_chevalley: parts do not commute");
  return {std::move(s), std::move(n)};
}

MultiplicativeJordan multiplicative_jordan(const JetDiffeo& f) {
  const JetOperator op = as_operator(f);
  const auto eigenvalues = operator_eigenvalues(f);
  const JordanChevalley jc = jordan_chevalley(op.matrix, eigenvalues);
  const JetOperator s = make_operator(f.nvars(), f.order(), jc.semisimple);
  const JetOperator u = make_operator(f.nvars(), f.order(), jc.semisimple.inverse() * op.matrix);
  if (!is_algebra_automorphism(s) || !is_algebra_automorphism(u)) {
    throw InternalError("multiplicative_jordan: factor is not an algebra automorphism");
  }
  JetDiffeo fs = diffeo_from_operator(s);
  JetDiffeo fu = diffeo_from_operator(u);
  if (diffeo_compose(fs, fu) != f || diffeo_compose(fu, fs) != f) {
    throw InternalError("multiplicative_jordan: factors do not reproduce F or do not commute");
  }
  if (f.order() >= 1 && !is_unipotent(fu.linear_part())) {
    throw InternalError("multiplicative_jordan: unipotent factor has non-unipotent linear part");
  }
  return {std::move(fs), std::move(fu)};
}

JetDiffeo exp_vf(const JetVectorField& v) {
  if (!v.linear_part().is_nilpotent()) {
    throw DomainError("exp_vf: linear part is not nilpotent; use flow_operator for the symbolic flow");
  }
  const std::size_t n = v.nvars();
  const unsigned p = v.order();
  const std::size_t bound = monomial_count(n, p) + 1;
  std::vector<TruncatedSeries> c;
  for (std::size_t i = 0; i < n; ++i) {
    TruncatedSeries term = TruncatedSeries::variable(n, p, i);
    TruncatedSeries sum = term;
    for (std::size_t k = 1; k <= bound; ++k) {
      term = v.apply(term) * GaussianRational(1, 0, static_cast<long>(k));
      if (term.is_zero()) break;
      sum += term;
    }
    if (!term.is_zero()) throw InternalError("exp_vf: Lie series did not terminate");
    c.push_back(std::move(sum));
  }
  return JetDiffeo(std::move(c));
}

JetVectorField log_unipotent(const JetDiffeo& f) {
  if (!is_unipotent(f.linear_part())) throw DomainError("log_unipotent: linear part is not unipotent");
  const std::size_t n = f.nvars();
  const unsigned p = f.order();
  const JetOperator op = as_operator(f);
  const std::size_t d = op.dimension();
  const Matrix nil = op.matrix - Matrix::identity(d);
  std::vector<TruncatedSeries> c;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<GaussianRational> v(d);
    v[i + 1] = 1;
    std::vector<GaussianRational> acc(d);
    bool vanished = false;
    for (std::size_t k = 1; k <= d; ++k) {
      v = nil * std::span<const GaussianRational>(v);
      bool zero = true;
      const GaussianRational w((k % 2 == 1) ? 1 : -1, 0, static_cast<long>(k));
      for (std::size_t r = 0; r < d; ++r) {
        if (v[r].is_zero()) continue;
        zero = false;
        acc[r] += w * v[r];
      }
      if (zero) {
        vanished = true;
        break;
      }
    }
    if (!vanished && d > 0) throw InternalError("log_unipotent: logarithm series did not terminate");
    TruncatedSeries s(n, p);
    for (std::size_t r = 0; r < d; ++r) s.add_term_by_rank(r, acc[r]);
    c.push_back(std::move(s));
  }
  JetVectorField v(std::move(c));
  // exp is injective on nilpotent operators, so the round trip certifies
  // that the logarithm is the derivation v.
  if (exp_vf(v) != f) throw InternalError("log_unipotent: logarithm is not a derivation");
  return v;
}

}  // namespace jetflow
