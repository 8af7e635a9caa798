#include "jetflow/numeric/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "jetflow/errors.hpp"
#include "jetflow/numeric/factor.hpp"

namespace jetflow {

namespace {

constexpr std::size_t kMaxRootCandidates = 2'000'000;

// All divisors of a nonzero Gaussian integer up to associates.
std::vector<GaussianInteger> divisors_up_to_units(const GaussianInteger& z) {
  const GaussianFactorization f = gauss_factor(z);
  std::size_t count = 1;
  for (const auto& [prime, e] : f.factors) {
    count *= static_cast<std::size_t>(e + 1);
    if (count > kMaxRootCandidates) {
      throw SpectrumError("root search: too many divisor candidates (" + z.to_string() + ")");
    }
  }
  std::vector<GaussianInteger> divs{{1, 0}};
  for (const auto& [prime, e] : f.factors) {
    std::vector<GaussianInteger> next;
    next.reserve(divs.size() * static_cast<std::size_t>(e + 1));
    for (const auto& d : divs) {
      GaussianInteger x = d;
      next.push_back(x);
      for (long k = 0; k < e; ++k) {
        x = x * prime;
        next.push_back(x);
      }
    }
    divs = std::move(next);
  }
  return divs;
}

}  // namespace

Polynomial::Polynomial(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::linear_factor(const GaussianRational& root) { return Polynomial({-root, 1}); }

Polynomial Polynomial::from_roots(std::span<const GaussianRational> roots) {
  Polynomial p = constant(1);
  for (const auto& r : roots) p = p * linear_factor(r);
  return p;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

Polynomial Polynomial::derivative() const {
  std::vector<GaussianRational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * GaussianRational(static_cast<long>(k)));
  return Polynomial(std::move(d));
}

GaussianRational Polynomial::operator()(const GaussianRational& x) const {
  GaussianRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Matrix Polynomial::operator()(const Matrix& m) const {
  if (!m.is_square()) throw DomainError("Polynomial: evaluation at a non-square matrix");
  Matrix acc(m.rows(), m.cols());
  const Matrix id = Matrix::identity(m.rows());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * m;
    if (!it->is_zero()) acc += id * (*it);
  }
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(Polynomial a, const GaussianRational& s) {
  for (auto& c : a.coeffs_) c *= s;
  a.trim();
  return a;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("Polynomial::divmod: division by zero polynomial");
  std::vector<GaussianRational> rem = coeffs_;
  const long dd = divisor.degree();
  if (degree() < dd) return {Polynomial(), *this};
  std::vector<GaussianRational> quot(static_cast<std::size_t>(degree() - dd + 1));
  const GaussianRational lead_inv = divisor.leading().inverse();
  for (long k = degree() - dd; k >= 0; --k) {
    const auto top = static_cast<std::size_t>(k + dd);
    if (rem[top].is_zero()) continue;
    const GaussianRational q = rem[top] * lead_inv;
    quot[static_cast<std::size_t>(k)] = q;
    for (long j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::string Polynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << coeffs_[k] << ')';
    if (k >= 1) os << '*' << var;
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  const Polynomial g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw DomainError("characteristic_polynomial: matrix not square");
  const std::size_t n = m.rows();
  Matrix h = m;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t col = 0; col + 2 < n; ++col) {
    const std::size_t target = col + 1;
    std::size_t piv = target;
    while (piv < n && h(piv, col).is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != target) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(target, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, target));
    }
    const GaussianRational inv = h(target, col).inverse();
    for (std::size_t r = target + 1; r < n; ++r) {
      if (h(r, col).is_zero()) continue;
      const GaussianRational u = h(r, col) * inv;
      for (std::size_t c = 0; c < n; ++c) {
        if (!h(target, c).is_zero()) h(r, c) -= u * h(target, c);
      }
      for (std::size_t rr = 0; rr < n; ++rr) {
        if (!h(rr, r).is_zero()) h(rr, target) += u * h(rr, r);
      }
    }
  }
  std::vector<Polynomial> p;
  p.reserve(n + 1);
  p.push_back(Polynomial::constant(1));
  const Polynomial x({0, 1});
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial pk = (x - Polynomial::constant(h(k - 1, k - 1))) * p[k - 1];
    GaussianRational t(1);
    for (std::size_t i = 1; i < k; ++i) {
      t *= h(k - i, k - i - 1);
      if (t.is_zero()) break;
      const GaussianRational c = t * h(k - i - 1, k - 1);
      if (!c.is_zero()) pk -= p[k - i - 1] * c;
    }
    p.push_back(std::move(pk));
  }
  return p[n];
}

std::vector<std::pair<GaussianRational, unsigned>> roots_in_gaussian_rationals(const Polynomial& poly) {
  if (poly.is_zero()) throw DomainError("roots: zero polynomial");
  std::vector<std::pair<GaussianRational, unsigned>> out;
  Polynomial p = poly;
  unsigned zero_mult = 0;
  while (p.degree() > 0 && p.coeff(0).is_zero()) {
    p = p.divmod(Polynomial({0, 1})).first;
    ++zero_mult;
  }
  if (zero_mult != 0) out.emplace_back(GaussianRational(), zero_mult);
  if (p.degree() <= 0) return out;

  const Polynomial s = squarefree_part(p);
  // Scale to Gaussian-integer coefficients.
  mpz_class l = 1;
  for (const auto& c : s.coeffs()) l = lcm(l, c.den());
  std::vector<GaussianInteger> ic;
  for (const auto& c : s.coeffs()) {
    const GaussianRational scaled = c * GaussianRational(l);
    ic.push_back({scaled.num_re(), scaled.num_im()});
  }
  // Cauchy bound on |root| with a safety margin for the float comparison.
  const double lead_abs = std::sqrt(ic.back().norm().get_d());
  double bound = 0;
  for (std::size_t k = 0; k + 1 < ic.size(); ++k) {
    bound = std::max(bound, std::sqrt(ic[k].norm().get_d()) / lead_abs);
  }
  bound = (1.0 + bound) * 1.0001 + 1e-9;

  const auto numer = divisors_up_to_units(ic.front());
  const auto denom = divisors_up_to_units(ic.back());
  if (numer.size() * denom.size() * 4 > kMaxRootCandidates) {
    throw SpectrumError("root search: too many rational-root candidates");
  }
  std::set<GaussianRational> found;
  const GaussianInteger units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto target = static_cast<std::size_t>(s.degree());
  for (const auto& b : denom) {
    const double nb = std::sqrt(b.norm().get_d());
    for (const auto& a0 : numer) {
      if (std::sqrt(a0.norm().get_d()) / nb > bound) continue;
      for (const auto& u : units) {
        const GaussianInteger a = a0 * u;
        const GaussianRational r = a.to_rational() / b.to_rational();
        if (found.count(r) != 0) continue;
        if (s(r).is_zero()) found.insert(r);
        if (found.size() == target) break;
      }
      if (found.size() == target) break;
    }
    if (found.size() == target) break;
  }
  for (const auto& r : found) {
    unsigned mult = 0;
    const Polynomial f = Polynomial::linear_factor(r);
    while (p.degree() > 0) {
      auto [q, rem] = p.divmod(f);
      if (!rem.is_zero()) break;
      p = std::move(q);
      ++mult;
    }
    out.emplace_back(r, mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GaussianRational> split_roots(const Polynomial& p) {
  const auto roots = roots_in_gaussian_rationals(p);
  long total = 0;
  std::vector<GaussianRational> out;
  for (const auto& [r, m] : roots) {
    total += m;
    out.push_back(r);
  }
  if (total != p.degree()) {
    throw SpectrumError("spectrum not in Q(i): the characteristic polynomial has an irreducible factor of degree >= 2 over Q(i)");
  }
  return out;
}

std::vector<GaussianRational> distinct_eigenvalues(const Matrix& m) {
  if (!m.is_square()) throw DomainError("distinct_eigenvalues: matrix not square");
  if (m.is_lower_triangular() || m.transpose().is_lower_triangular()) {
    std::set<GaussianRational> diag;
    for (std::size_t k = 0; k < m.rows(); ++k) diag.insert(m(k, k));
    return {diag.begin(), diag.end()};
  }
  return split_roots(characteristic_polynomial(m));
}

}  // namespace jetflow
