#include "jetflow/expoly/closed_form.hpp"

#include <utility>
#include <vector>

#include "jetflow/errors.hpp"
#include "jetflow/jets/decompose.hpp"
#include "jetflow/jets/operator.hpp"

namespace jetflow {

namespace {

// Solution of y' - a y = g with y(0) = 0.
ExpPoly solve_scalar_ode(const GaussianRational& a, const ExpPoly& g) {
  ExpPoly y(CharacterKind::Exp);
  GaussianRational y0;
  for (const auto& [key, c] : g.terms()) {
    const auto& [ch, k] = key;
    if (ch.value == a) {
      // Resonance: the t-power goes up by one.
      y.add_term(ch, k + 1, c * GaussianRational(1, 0, static_cast<long>(k) + 1));
      continue;
    }
    const GaussianRational inv = (ch.value - a).inverse();
    GaussianRational falling = 1;
    GaussianRational inv_pow = inv;
    for (unsigned j = 0; j <= k; ++j) {
      GaussianRational coef = c * falling * inv_pow;
      if (j % 2 == 1) coef = -coef;
      if (j == k) y0 += coef;
      y.add_term(ch, k - j, coef);
      falling *= GaussianRational(static_cast<long>(k - j));
      inv_pow *= inv;
    }
  }
  y.add_term(Character::exp(a), 0, -y0);
  return y;
}

GaussianRational value_at_zero(const ExpPoly& e) {
  GaussianRational v;
  for (const auto& [key, c] : e.terms()) {
    if (key.second == 0) v += c;
  }
  return v;
}

// Coefficients of binom(t, k) as a polynomial in t, constant term first.
std::vector<GaussianRational> binomial_polynomial(unsigned k) {
  std::vector<GaussianRational> b{1};
  for (unsigned j = 0; j < k; ++j) {
    std::vector<GaussianRational> next(b.size() + 1);
    const GaussianRational shift(-static_cast<long>(j));
    for (std::size_t i = 0; i < b.size(); ++i) {
      next[i + 1] += b[i];
      next[i] += b[i] * shift;
    }
    b = std::move(next);
  }
  mpz_class fact = 1;
  for (unsigned j = 2; j <= k; ++j) fact *= j;
  const GaussianRational scale = GaussianRational(fact).inverse();
  for (auto& c : b) c *= scale;
  return b;
}

}  // namespace

ExpPolyMatrix flow_operator(const JetVectorField& v) {
  if (!v.linear_part().is_lower_triangular()) {
    throw DomainError("flow_operator: linear part is not lower-triangular");
  }
  const Matrix a = vf_as_operator(v).matrix;
  if (!a.is_lower_triangular()) throw InternalError("flow_operator: operator of a triangular field is not triangular");
  const std::size_t d = a.rows();
  ExpPolyMatrix m(d, d, CharacterKind::Exp);
  for (std::size_t c = 0; c < d; ++c) {
    m(c, c) = ExpPoly::term(Character::exp(a(c, c)), 0);
    for (std::size_t r = c + 1; r < d; ++r) {
      ExpPoly g(CharacterKind::Exp);
      for (std::size_t s = c; s < r; ++s) {
        if (!a(r, s).is_zero() && !m(s, c).is_zero()) g += m(s, c) * a(r, s);
      }
      if (!g.is_zero()) m(r, c) = solve_scalar_ode(a(r, r), g);
    }
  }
  return m;
}

bool satisfies_flow_equation(const JetVectorField& v, const ExpPolyMatrix& m) {
  const Matrix a = vf_as_operator(v).matrix;
  if (m.rows() != a.rows() || m.cols() != a.cols()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (value_at_zero(m(r, c)) != GaussianRational(r == c ? 1 : 0)) return false;
    }
  }
  return dt(m) == a * m;
}

ExpPolyMatrix power_operator(const JetDiffeo& f) {
  const Matrix m = as_operator(f).matrix;
  const std::size_t d = m.rows();
  const auto eigenvalues = operator_eigenvalues(f);
  const JordanChevalley jc = jordan_chevalley(m, eigenvalues);
  const Matrix& s = jc.semisimple;
  const Matrix nil = s.inverse() * m - Matrix::identity(d);

  std::vector<Matrix> nil_powers{Matrix::identity(d)};
  while (!nil_powers.back().is_zero()) {
    if (nil_powers.size() > d) throw InternalError("power_operator: unipotent factor is not unipotent");
    nil_powers.push_back(nil_powers.back() * nil);
  }
  nil_powers.pop_back();
  std::vector<std::vector<GaussianRational>> binomials;
  for (unsigned k = 0; k < nil_powers.size(); ++k) binomials.push_back(binomial_polynomial(k));

  ExpPolyMatrix out(d, d, CharacterKind::Mult);
  Matrix total_projector(d, d);
  for (const auto& mu : eigenvalues) {
    // Lagrange basis polynomial at mu, evaluated at S.
    Matrix p = Matrix::identity(d);
    for (const auto& nu : eigenvalues) {
      if (nu == mu) continue;
      p = p * ((s - Matrix::identity(d) * nu) * (mu - nu).inverse());
    }
    total_projector += p;
    const Character ch = Character::mult(mu);
    for (std::size_t k = 0; k < nil_powers.size(); ++k) {
      const Matrix b = p * nil_powers[k];
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          if (b(r, c).is_zero()) continue;
          for (std::size_t j = 0; j < binomials[k].size(); ++j) {
            out(r, c).add_term(ch, static_cast<unsigned>(j), b(r, c) * binomials[k][j]);
          }
        }
      }
    }
  }
  if (!total_projector.is_identity()) throw InternalError("power_operator: spectral projectors do not sum to I");
  return out;
}

bool semisimple_coefficient_check(const JetDiffeo& f) { return power_operator(f).max_t_power() == 0; }

}  // namespace jetflow
