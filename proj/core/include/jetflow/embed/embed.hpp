#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jetflow/expoly/expoly.hpp"
#include "jetflow/jets/jet.hpp"
#include "jetflow/numeric/lattice.hpp"
#include "jetflow/numeric/matrix.hpp"

namespace jetflow {

/// Polynomial over Q(i) in the symbols theta_1..theta_n (standing for chosen
/// logarithms of lambda_1..lambda_n) and tau (standing for 2*pi*i).
class LogSymbol {
 public:
  /// Exponents of theta_1..theta_n followed by the exponent of tau.
  using Monomial = std::vector<unsigned>;

  LogSymbol() = default;
  explicit LogSymbol(std::size_t nsymbols) : nsymbols_(nsymbols) {}

  static LogSymbol constant(std::size_t nsymbols, const GaussianRational& c);
  static LogSymbol theta(std::size_t nsymbols, std::size_t i);
  static LogSymbol tau(std::size_t nsymbols);

  std::size_t nsymbols() const noexcept { return nsymbols_; }
  const std::map<Monomial, GaussianRational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Monomial& m, const GaussianRational& c);

  LogSymbol& operator+=(const LogSymbol& rhs);
  LogSymbol& operator-=(const LogSymbol& rhs);
  LogSymbol& operator*=(const GaussianRational& s);
  friend LogSymbol operator+(LogSymbol a, const LogSymbol& b) { return a += b; }
  friend LogSymbol operator-(LogSymbol a, const LogSymbol& b) { return a -= b; }
  friend LogSymbol operator*(LogSymbol a, const GaussianRational& s) { return a *= s; }
  friend LogSymbol operator*(const GaussianRational& s, LogSymbol a) { return a *= s; }
  friend LogSymbol operator*(const LogSymbol& a, const LogSymbol& b);
  friend bool operator==(const LogSymbol&, const LogSymbol&) = default;

  /// Ring homomorphism theta_i -> logs[i], tau -> 2*pi*i.
  std::complex<double> evaluate(std::span<const std::complex<double>> logs) const;

  /// "2*log(l1) - 1/2*(2*pi*i)"; "0" when zero.
  std::string to_string() const;

 private:
  std::size_t nsymbols_ = 0;
  std::map<Monomial, GaussianRational> terms_;
};

/// Dense matrix of LogSymbol entries.
class LogSymbolMatrix {
 public:
  LogSymbolMatrix() = default;
  LogSymbolMatrix(std::size_t rows, std::size_t cols, std::size_t nsymbols)
      : rows_(rows), cols_(cols), data_(rows * cols, LogSymbol(nsymbols)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  LogSymbol& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const LogSymbol& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  ComplexMatrix evaluate(std::span<const std::complex<double>> logs) const;

  friend LogSymbolMatrix operator*(const LogSymbolMatrix& a, const Matrix& b);
  friend LogSymbolMatrix operator*(const Matrix& a, const LogSymbolMatrix& b);
  friend LogSymbolMatrix operator-(const LogSymbolMatrix& a, const LogSymbolMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<LogSymbol> data_;
};

struct EmbeddingResult {
  unsigned k = 1;
  /// lambda_i = L(i, i), the spectrum of the (lower-triangular) linear part.
  std::vector<GaussianRational> spectrum;
  IntLattice relations;
  /// Branch corrections delta in (1/k) Z^n.
  std::vector<GaussianRational> delta;
  /// w_i = k (theta_i + tau delta_i); V_s acts on the weight space of x^alpha
  /// by sum alpha_i w_i.
  std::vector<LogSymbol> weights;
  JetDiffeo semisimple_factor;
  JetDiffeo unipotent_factor;
  /// V_n = log of the k-th power of the unipotent factor, exact.
  JetVectorField nilpotent;
  /// Operator of V_s on C_p[[x]], symbolic.
  LogSymbolMatrix semisimple;
  /// Principal logarithms Log lambda_i used for numeric instantiation.
  std::vector<std::complex<double>> logs;
  /// Discrete family t -> F^{kt}, when power_operator applies.
  std::optional<ExpPolyMatrix> family;
  /// True when V_s = 0 and exp_vf(V_n) == F^k was checked exactly.
  bool exact = false;
  /// max |jet(e^{V_s + V_n}) - jet(F^k)| over operator entries.
  double residual = 0;

  std::size_t nvars() const { return nilpotent.nvars(); }
  unsigned order() const { return nilpotent.order(); }
  /// Numeric operator of V = V_s + V_n.
  ComplexMatrix field_operator() const;
  /// V_s components V_s(x_j) with symbolic coefficients.
  std::vector<std::string> semisimple_components(std::span<const std::string> vars) const;
  std::string report(std::span<const std::string> vars) const;
};

/// Order of the group of roots of unity in <lambda_1, ..., lambda_n>.
unsigned roots_of_unity_order(std::span<const GaussianRational> spectrum);

/// V = V_s + V_n with e^V = F^k at order p (p <= order of F). The linear part
/// must be lower-triangular with spectrum in Q(i).
EmbeddingResult embed_power_in_flow(const JetDiffeo& f, std::optional<unsigned> p = std::nullopt);

/// Exact V with exp_vf(V) == F, for F with unipotent linear part.
JetVectorField takens_embed(const JetDiffeo& f);

/// Numeric operator of the derivation acting on z^alpha by sum alpha_i w_i,
/// where z_1..z_n are eigen-coordinates of the semisimple factor of F
/// (z_i o F_ss = lambda_i z_i with lambda_i = L(i, i)). The weights need not
/// be compatible with resonances.
ComplexMatrix frame_derivation(const JetDiffeo& f, std::span<const std::complex<double>> weights);

ComplexMatrix complex_exp(const ComplexMatrix& a);
ComplexMatrix to_complex(const Matrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace jetflow
