#include "jetflow/numeric/factor.hpp"

#include <algorithm>
#include <map>

#include "jetflow/errors.hpp"

namespace jetflow {

namespace {

// Nearest-integer quotient, ties toward +infinity.
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  // floor((2a + b) / (2b)) for b > 0
  mpz_class num = 2 * a + b;
  mpz_class den = 2 * b;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

GaussianInteger times_i(const GaussianInteger& z) { return {-z.im, z.re}; }

// Order primes by norm, then real part.
struct PrimeLess {
  bool operator()(const GaussianInteger& a, const GaussianInteger& b) const {
    const int c = cmp(a.norm(), b.norm());
    if (c != 0) return c < 0;
    const int d = cmp(a.re, b.re);
    if (d != 0) return d < 0;
    return cmp(a.im, b.im) < 0;
  }
};

// A square root of -1 modulo a prime p = 1 mod 4.
mpz_class sqrt_minus_one(const mpz_class& p) {
  const mpz_class e = (p - 1) / 4;
  const mpz_class minus_one = p - 1;
  for (mpz_class c = 2; c < p; ++c) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_class sq = (x * x) % p;
    if (sq == minus_one) return x;
  }
  throw InternalError("sqrt_minus_one: no square root of -1 found");
}

int strip(GaussianInteger& w, const GaussianInteger& prime) {
  int count = 0;
  GaussianInteger q;
  while (divides(prime, w, q)) {
    w = q;
    ++count;
  }
  return count;
}

}  // namespace

GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

bool divides(const GaussianInteger& b, const GaussianInteger& a, GaussianInteger& quotient) {
  if (b.is_zero()) return false;
  const mpz_class n = b.norm();
  // a / b = a * conj(b) / N(b)
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  if (!mpz_divisible_p(re.get_mpz_t(), n.get_mpz_t()) ||
      !mpz_divisible_p(im.get_mpz_t(), n.get_mpz_t())) {
    return false;
  }
  mpz_divexact(re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
  quotient = {std::move(re), std::move(im)};
  return true;
}

GaussianInteger gaussian_gcd(GaussianInteger a, GaussianInteger b) {
  while (!b.is_zero()) {
    const mpz_class n = b.norm();
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    GaussianInteger q{round_div(re, n), round_div(im, n)};
    GaussianInteger qb = q * b;
    GaussianInteger r{a.re - qb.re, a.im - qb.im};
    a = std::move(b);
    b = std::move(r);
  }
  return canonical_associate(a);
}

GaussianInteger canonical_associate(const GaussianInteger& z, int* unit_exp) {
  if (z.is_zero()) {
    if (unit_exp != nullptr) *unit_exp = 0;
    return z;
  }
  // z = i^k * c  <=>  c = i^{-k} z; try c = i^{j} z for j = 0..3, k = -j.
  GaussianInteger c = z;
  for (int j = 0; j < 4; ++j) {
    if (sgn(c.re) > 0 && sgn(c.im) >= 0) {
      if (unit_exp != nullptr) *unit_exp = (4 - j) % 4;
      return c;
    }
    c = times_i(c);
  }
  throw InternalError("canonical_associate: no canonical associate");
}

std::vector<std::pair<mpz_class, unsigned long>> factor_integer(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, unsigned long>> out;
  if (n <= 1) return out;
  auto take = [&](const mpz_class& d) {
    unsigned long e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0) {
      mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
      ++e;
    }
    if (e != 0) out.emplace_back(d, e);
  };
  take(2);
  for (mpz_class d = 3; d * d <= n; d += 2) take(d);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

GaussianFactorization gauss_factor(const GaussianInteger& z) {
  if (z.is_zero()) throw DomainError("gauss_factor: zero has no factorization");
  GaussianInteger w = z;
  std::map<GaussianInteger, long, PrimeLess> exps;
  for (const auto& [p, e] : factor_integer(z.norm())) {
    (void)e;
    if (p == 2) {
      const GaussianInteger ramified{1, 1};
      if (int c = strip(w, ramified); c != 0) exps[ramified] += c;
    } else if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
      const GaussianInteger inert{p, 0};
      if (int c = strip(w, inert); c != 0) exps[inert] += c;
    } else {
      const mpz_class x = sqrt_minus_one(p);
      const GaussianInteger pi = gaussian_gcd({p, 0}, {x, 1});
      const GaussianInteger pi_bar = canonical_associate({pi.re, -pi.im});
      for (const auto& prime : {pi, pi_bar}) {
        if (int c = strip(w, prime); c != 0) exps[prime] += c;
      }
    }
  }
  GaussianFactorization f;
  int unit = 0;
  const GaussianInteger rest = canonical_associate(w, &unit);
  if (!(rest.re == 1 && rest.im == 0)) {
    throw InternalError("gauss_factor: cofactor " + w.to_string() + " is not a unit");
  }
  f.unit_exp = unit;
  for (auto& [prime, e] : exps) f.factors.emplace_back(prime, e);
  return f;
}

GaussianFactorization gauss_factor(const GaussianRational& z) {
  if (z.is_zero()) throw DomainError("gauss_factor: zero has no factorization");
  GaussianFactorization num = gauss_factor(GaussianInteger{z.num_re(), z.num_im()});
  if (z.den() == 1) return num;
  GaussianFactorization den = gauss_factor(GaussianInteger{z.den(), 0});
  std::map<GaussianInteger, long, PrimeLess> exps;
  for (const auto& [prime, e] : num.factors) exps[prime] += e;
  for (const auto& [prime, e] : den.factors) exps[prime] -= e;
  GaussianFactorization f;
  f.unit_exp = ((num.unit_exp - den.unit_exp) % 4 + 4) % 4;
  for (auto& [prime, e] : exps) {
    if (e != 0) f.factors.emplace_back(prime, e);
  }
  return f;
}

GaussianRational GaussianFactorization::reconstruct() const {
  GaussianRational value = GaussianRational::imaginary_unit().pow(unit_exp);
  for (const auto& [prime, e] : factors) value *= prime.to_rational().pow(e);
  return value;
}

}  // namespace jetflow
