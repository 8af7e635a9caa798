#include "jetflow/cli/ptx.hpp"

#include <gmpxx.h>

#include <cmath>
#include <numbers>

#include "jetflow/errors.hpp"

namespace jetflow::cli {

PtxResult ptx_demo(unsigned prime, unsigned order) {
  if (prime < 2 || mpz_probab_prime_p(mpz_class(prime).get_mpz_t(), 25) == 0) {
    throw DomainError("ptx-demo: " + std::to_string(prime) + " is not prime");
  }
  if (order < prime) {
    throw DomainError("ptx-demo: order " + std::to_string(order) + " is below the prime " + std::to_string(prime));
  }
  mpz_class t;
  mpz_fac_ui(t.get_mpz_t(), prime - 1);

  PtxResult out;
  out.prime = prime;
  out.t = t.get_str();
  for (unsigned j = 1; j <= order; ++j) {
    PtxCoefficient c;
    c.j = j;
    c.vanishes = mpz_divisible_ui_p(t.get_mpz_t(), j) != 0;
    // sin(pi t / j) has period 2j in t; reduce first so the double is small.
    const mpz_class r = t % (2 * j);
    c.modulus = std::abs(2 * std::sin(std::numbers::pi * r.get_d() / j));
    if ((c.modulus < 1e-12) != c.vanishes) {
      throw InternalError("ptx-demo: numeric and exact vanishing disagree at j = " + std::to_string(j));
    }
    if (!c.vanishes && out.vanishing_order == 0) out.vanishing_order = j;
    out.coefficients.push_back(c);
  }
  if (out.vanishing_order != prime) throw InternalError("ptx-demo: order of vanishing differs from the prime");
  return out;
}

}  // namespace jetflow::cli
