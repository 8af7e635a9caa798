#pragma once

#include <string>
#include <vector>

namespace jetflow::cli {

struct PtxCoefficient {
  unsigned j = 0;
  bool vanishes = false;
  /// |2 sin(pi t / j)|, the modulus of the j-th coefficient.
  double modulus = 0;
};

struct PtxResult {
  unsigned prime = 0;
  /// t = (prime - 1)! in decimal.
  std::string t;
  unsigned vanishing_order = 0;
  std::vector<PtxCoefficient> coefficients;
};

/// Order of vanishing of P_t(x) = sum_{j >= 1} (e^{pi i t/j} - e^{-pi i t/j}) x^j
/// at t = (p-1)!, from the rule "coefficient j vanishes iff j | t" over
/// j = 1..order, cross-checked against |2 sin(pi t/j)| < 1e-12.
PtxResult ptx_demo(unsigned prime, unsigned order);

}  // namespace jetflow::cli
