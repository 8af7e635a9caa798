#include "jetflow/embed/embed.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jetflow/errors.hpp"
#include "jetflow/expoly/closed_form.hpp"
#include "jetflow/jets/decompose.hpp"
#include "jetflow/jets/operator.hpp"
#include "jetflow/series/multi_index.hpp"

namespace jetflow {

namespace {

constexpr double kConsistencyTol = 1e-9;
constexpr double kAcceptTol = 1e-9;

const std::complex<double> kTwoPiI{0.0, 2.0 * std::numbers::pi};

bool is_unipotent(const Matrix& m) { return (m - Matrix::identity(m.rows())).is_nilpotent(); }

std::string coefficient_prefix(const GaussianRational& c) {
  if (c.is_one()) return "";
  if (c == GaussianRational(-1)) return "-";
  const std::string s = c.to_string();
  return (c.is_real() ? s : "(" + s + ")") + "*";
}

// Lambda^alpha for a monomial rank.
GaussianRational weight_eigenvalue(std::span<const GaussianRational> lambdas, const MultiIndex& alpha) {
  GaussianRational v = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) v *= lambdas[i].pow(static_cast<long>(alpha[i]));
  return v;
}

// Lagrange spectral projector of a semisimple s onto its mu-eigenspace.
Matrix spectral_projector(const Matrix& s, std::span<const GaussianRational> eigenvalues, const GaussianRational& mu) {
  const std::size_t d = s.rows();
  Matrix p = Matrix::identity(d);
  for (const auto& nu : eigenvalues) {
    if (nu == mu) continue;
    p = p * ((s - Matrix::identity(d) * nu) * (mu - nu).inverse());
  }
  return p;
}

// Basis of {v : a v = 0} by Gauss-Jordan elimination.
std::vector<std::vector<GaussianRational>> nullspace(Matrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(piv, j));
    const GaussianRational inv = a(r, c).inverse();
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const GaussianRational f = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<GaussianRational>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<GaussianRational> v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<GaussianRational> diagonal_spectrum(const JetDiffeo& f) {
  const Matrix l = f.linear_part();
  if (!l.is_lower_triangular()) throw DomainError("embed: linear part is not lower-triangular");
  std::vector<GaussianRational> out;
  for (std::size_t i = 0; i < l.rows(); ++i) out.push_back(l(i, i));
  return out;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  }
  return out;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out{static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()), {}};
  out.data.resize(out.rows * out.cols);
  for (std::size_t r = 0; r < out.rows; ++r) {
    for (std::size_t c = 0; c < out.cols; ++c) out(r, c) = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
  return out;
}

std::string series_with_symbols(const LogSymbolMatrix& m, std::size_t col, std::size_t nvars,
                                std::span<const std::string> vars) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const LogSymbol& c = m(r, col);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (r > 0) out += "*" + monomial_label(deglex_unrank(nvars, r), vars);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

LogSymbol LogSymbol::constant(std::size_t nsymbols, const GaussianRational& c) {
  LogSymbol s(nsymbols);
  s.add_term(Monomial(nsymbols + 1, 0), c);
  return s;
}

LogSymbol LogSymbol::theta(std::size_t nsymbols, std::size_t i) {
  if (i >= nsymbols) throw DomainError("LogSymbol::theta: index out of range");
  Monomial m(nsymbols + 1, 0);
  m[i] = 1;
  LogSymbol s(nsymbols);
  s.add_term(m, 1);
  return s;
}

LogSymbol LogSymbol::tau(std::size_t nsymbols) {
  Monomial m(nsymbols + 1, 0);
  m[nsymbols] = 1;
  LogSymbol s(nsymbols);
  s.add_term(m, 1);
  return s;
}

void LogSymbol::add_term(const Monomial& m, const GaussianRational& c) {
  if (m.size() != nsymbols_ + 1) throw DomainError("LogSymbol: monomial has the wrong number of symbols");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LogSymbol& LogSymbol::operator+=(const LogSymbol& rhs) {
  if (rhs.nsymbols_ != nsymbols_) throw DomainError("LogSymbol: symbol count mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

LogSymbol& LogSymbol::operator-=(const LogSymbol& rhs) {
  if (rhs.nsymbols_ != nsymbols_) throw DomainError("LogSymbol: symbol count mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

LogSymbol& LogSymbol::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

LogSymbol operator*(const LogSymbol& a, const LogSymbol& b) {
  if (a.nsymbols_ != b.nsymbols_) throw DomainError("LogSymbol: symbol count mismatch");
  LogSymbol out(a.nsymbols_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      LogSymbol::Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::complex<double> LogSymbol::evaluate(std::span<const std::complex<double>> logs) const {
  if (logs.size() != nsymbols_) throw DomainError("LogSymbol::evaluate: wrong number of logarithms");
  std::complex<double> sum = 0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (std::size_t i = 0; i < nsymbols_; ++i) t *= std::pow(logs[i], static_cast<int>(m[i]));
    t *= std::pow(kTwoPiI, static_cast<int>(m[nsymbols_]));
    sum += t;
  }
  return sum;
}

std::string LogSymbol::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Reverse map order puts theta_1 first and the constant last.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string sym;
    for (std::size_t i = 0; i < nsymbols_; ++i) {
      for (unsigned e = 0; e < m[i]; ++e) sym += (sym.empty() ? "" : "*") + std::string("log(l") + std::to_string(i + 1) + ")";
    }
    for (unsigned e = 0; e < m[nsymbols_]; ++e) sym += (sym.empty() ? "" : "*") + std::string("(2*pi*i)");
    std::string term = sym.empty() ? c.to_string() : coefficient_prefix(c) + sym;
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

bool LogSymbolMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const LogSymbol& s) { return s.is_zero(); });
}

ComplexMatrix LogSymbolMatrix::evaluate(std::span<const std::complex<double>> logs) const {
  ComplexMatrix out{rows_, cols_, std::vector<std::complex<double>>(rows_ * cols_)};
  for (std::size_t i = 0; i < data_.size(); ++i) out.data[i] = data_[i].evaluate(logs);
  return out;
}

LogSymbolMatrix operator*(const LogSymbolMatrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: dimension mismatch");
  const std::size_t ns = a.data_.empty() ? 0 : a.data_.front().nsymbols();
  LogSymbolMatrix out(a.rows(), b.cols(), ns);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (!b(k, c).is_zero()) out(r, c) += a(r, k) * b(k, c);
      }
    }
  }
  return out;
}

LogSymbolMatrix operator*(const Matrix& a, const LogSymbolMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: dimension mismatch");
  const std::size_t ns = b.data_.empty() ? 0 : b.data_.front().nsymbols();
  LogSymbolMatrix out(a.rows(), b.cols(), ns);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (!b(k, c).is_zero()) out(r, c) += b(k, c) * a(r, k);
      }
    }
  }
  return out;
}

LogSymbolMatrix operator-(const LogSymbolMatrix& a, const LogSymbolMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix difference: dimension mismatch");
  LogSymbolMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

ComplexMatrix to_complex(const Matrix& m) {
  ComplexMatrix out{m.rows(), m.cols(), std::vector<std::complex<double>>(m.rows() * m.cols())};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_complex();
  }
  return out;
}

ComplexMatrix complex_exp(const ComplexMatrix& a) { return from_eigen(to_eigen(a).exp()); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw DomainError("max_abs_diff: dimension mismatch");
  double m = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

unsigned roots_of_unity_order(std::span<const GaussianRational> spectrum) { return torsion_order(spectrum); }

ComplexMatrix EmbeddingResult::field_operator() const {
  return add(semisimple.evaluate(logs), to_complex(vf_as_operator(nilpotent).matrix));
}

std::vector<std::string> EmbeddingResult::semisimple_components(std::span<const std::string> vars) const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < nvars(); ++j) out.push_back(series_with_symbols(semisimple, j + 1, nvars(), vars));
  return out;
}

std::string EmbeddingResult::report(std::span<const std::string> vars) const {
  std::ostringstream os;
  os << "k: " << k << "\n";
  os << "spectrum:";
  for (const auto& l : spectrum) os << " " << l.to_string();
  os << "\nrelations:";
  if (relations.basis.empty()) os << " none";
  for (const auto& e : relations.basis) {
    os << " (";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i].get_str();
    os << ")";
  }
  os << "\ndelta:";
  for (const auto& d : delta) os << " " << d.to_string();
  os << "\n";
  for (std::size_t i = 0; i < weights.size(); ++i) os << "w" << i + 1 << ": " << weights[i].to_string() << "\n";
  const auto vs = semisimple_components(vars);
  for (std::size_t j = 0; j < nvars(); ++j) os << "V_s[" << vars[j] << "]: " << vs[j] << "\n";
  for (std::size_t j = 0; j < nvars(); ++j) os << "V_n[" << vars[j] << "]: " << nilpotent.component(j).to_string(vars) << "\n";
  os << "verification: " << (exact ? "exact" : "numeric") << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", residual);
  os << "residual: " << buf << "\n";
  return os.str();
}

EmbeddingResult embed_power_in_flow(const JetDiffeo& f_in, std::optional<unsigned> p) {
  const unsigned order = p.value_or(f_in.order());
  if (order > f_in.order()) throw DomainError("embed_power_in_flow: requested order exceeds the jet order");
  if (order == 0) throw DomainError("embed_power_in_flow: order must be positive");
  const JetDiffeo f = f_in.truncated(order);
  const std::size_t n = f.nvars();

  EmbeddingResult res{.k = 1,
                      .spectrum = {},
                      .relations = {},
                      .delta = {},
                      .weights = {},
                      .semisimple_factor = f,
                      .unipotent_factor = f,
                      .nilpotent = JetVectorField::zero(n, order),
                      .semisimple = {},
                      .logs = {},
                      .family = std::nullopt,
                      .exact = false,
                      .residual = 0};
  res.spectrum = diagonal_spectrum(f);
  res.k = roots_of_unity_order(res.spectrum);
  res.relations = relation_lattice(res.spectrum);
  for (const auto& l : res.spectrum) res.logs.push_back(std::log(l.to_complex()));

  // Branch integers r(e) with sum e_i Log lambda_i = 2 pi i r(e).
  IntMatrix rows;
  IntVector rhs;
  bool homogeneous = true;
  for (const auto& e : res.relations.basis) {
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < n; ++i) s += e[i].get_d() * res.logs[i];
    s /= kTwoPiI;
    const double r = std::round(s.real());
    if (std::abs(s - std::complex<double>(r, 0)) > kConsistencyTol) {
      throw InternalError("embed_power_in_flow: relation does not give an integer branch");
    }
    rows.push_back(e);
    rhs.push_back(mpz_class(-static_cast<long>(res.k) * static_cast<long>(r)));
    homogeneous = homogeneous && r == 0;
  }
  IntVector y(n, 0);
  if (!homogeneous) {
    const auto sol = solve_integer_system(rows, n, rhs);
    if (!sol) throw InternalError("embed_power_in_flow: branch-correction system has no solution in (1/k)Z^n");
    y = *sol;
  }
  for (std::size_t i = 0; i < n; ++i) {
    res.delta.push_back(GaussianRational(y[i], 0, static_cast<long>(res.k)));
    LogSymbol w = LogSymbol::theta(n, i) + LogSymbol::tau(n) * res.delta.back();
    res.weights.push_back(w * GaussianRational(static_cast<long>(res.k)));
  }
  std::vector<std::complex<double>> wnum;
  for (const auto& w : res.weights) wnum.push_back(w.evaluate(res.logs));

  const MultiplicativeJordan mj = multiplicative_jordan(f);
  res.semisimple_factor = mj.semisimple;
  res.unipotent_factor = mj.unipotent;
  res.nilpotent = log_unipotent(diffeo_power(mj.unipotent, static_cast<long>(res.k)));

  // V_s = sum_mu W(mu) P_mu with W read off a representative monomial.
  const Matrix s = as_operator(mj.semisimple).matrix;
  const std::size_t d = s.rows();
  const auto eigenvalues = operator_eigenvalues(f);
  std::map<GaussianRational, MultiIndex> representative;
  for (std::size_t r = 0; r < d; ++r) {
    const MultiIndex alpha = deglex_unrank(n, r);
    const GaussianRational mu = weight_eigenvalue(res.spectrum, alpha);
    const auto [it, inserted] = representative.try_emplace(mu, alpha);
    std::complex<double> wa = 0;
    std::complex<double> wr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      wa += static_cast<double>(alpha[i]) * wnum[i];
      wr += static_cast<double>(it->second[i]) * wnum[i];
    }
    if (std::abs(wa - wr) > kConsistencyTol) {
      throw InternalError("embed_power_in_flow: weights are not constant on a resonance class");
    }
  }
  res.semisimple = LogSymbolMatrix(d, d, n);
  for (const auto& mu : eigenvalues) {
    const auto rep = representative.find(mu);
    if (rep == representative.end()) throw InternalError("embed_power_in_flow: eigenvalue without a monomial");
    LogSymbol w(n);
    for (std::size_t i = 0; i < n; ++i) w += res.weights[i] * GaussianRational(static_cast<long>(rep->second[i]));
    if (w.is_zero()) continue;
    const Matrix proj = spectral_projector(s, eigenvalues, mu);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        if (!proj(r, c).is_zero()) res.semisimple(r, c) += w * proj(r, c);
      }
    }
  }

  const Matrix an = vf_as_operator(res.nilpotent).matrix;
  if (!(res.semisimple * an - an * res.semisimple).is_zero()) {
    throw InternalError("embed_power_in_flow: V_s and V_n do not commute");
  }

  const JetDiffeo fk = diffeo_power(f, static_cast<long>(res.k));
  if (res.semisimple.is_zero()) {
    if (exp_vf(res.nilpotent) != fk) throw InternalError("embed_power_in_flow: exact round trip failed");
    res.exact = true;
  }
  res.residual = max_abs_diff(complex_exp(res.field_operator()), to_complex(as_operator(fk).matrix));
  if (n <= 2 && order <= 4 && res.residual > kAcceptTol) {
    throw InternalError("embed_power_in_flow: numeric verification failed");
  }
  try {
    res.family = power_operator(fk);
  } catch (const DomainError&) {
    res.family.reset();
  }
  return res;
}

JetVectorField takens_embed(const JetDiffeo& f) {
  if (!is_unipotent(f.linear_part())) throw DomainError("takens_embed: linear part is not unipotent");
  return log_unipotent(f);
}

ComplexMatrix frame_derivation(const JetDiffeo& f, std::span<const std::complex<double>> weights) {
  const std::size_t n = f.nvars();
  const unsigned p = f.order();
  if (weights.size() != n) throw DomainError("frame_derivation: one weight per coordinate expected");
  const auto lambdas = diagonal_spectrum(f);
  const MultiplicativeJordan mj = multiplicative_jordan(f);
  const Matrix s = as_operator(mj.semisimple).matrix;
  const std::size_t d = s.rows();
  const auto eigenvalues = operator_eigenvalues(f);

  // Linear eigen-forms, projected to exact eigenfunctions of S.
  std::vector<TruncatedSeries> z(n);
  std::map<GaussianRational, std::vector<std::vector<GaussianRational>>> kernels;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = kernels.try_emplace(lambdas[i]);
    if (inserted) {
      it->second = nullspace(s.block(1, 1, n, n) - Matrix::identity(n) * lambdas[i]);
      std::reverse(it->second.begin(), it->second.end());
    }
    if (it->second.empty()) throw InternalError("frame_derivation: eigenvalue multiplicity exceeds its eigenspace");
    std::vector<GaussianRational> ell(d);
    for (std::size_t j = 0; j < n; ++j) ell[j + 1] = it->second.back()[j];
    it->second.pop_back();
    const Matrix proj = spectral_projector(s, eigenvalues, lambdas[i]);
    const std::vector<GaussianRational> zi = proj * std::span<const GaussianRational>(ell);
    std::vector<GaussianRational> scaled = zi;
    for (auto& c : scaled) c *= lambdas[i];
    if (s * std::span<const GaussianRational>(zi) != scaled) {
      throw InternalError("frame_derivation: projected form is not an eigenfunction");
    }
    z[i] = TruncatedSeries(n, p);
    for (std::size_t r = 0; r < d; ++r) z[i].add_term_by_rank(r, zi[r]);
  }

  // Columns of b are the coefficient vectors of z^alpha.
  Matrix b(d, d);
  std::vector<TruncatedSeries> powers(d);
  std::vector<std::complex<double>> diag(d);
  for (std::size_t r = 0; r < d; ++r) {
    const MultiIndex alpha = deglex_unrank(n, r);
    if (r == 0) {
      powers[r] = TruncatedSeries::constant(n, p, 1);
    } else {
      std::size_t j = 0;
      while (alpha[j] == 0) ++j;
      MultiIndex lower = alpha;
      --lower[j];
      powers[r] = powers[deglex_rank(lower)] * z[j];
    }
    for (const auto& [rank, c] : powers[r].terms()) b(rank, r) = c;
    for (std::size_t i = 0; i < n; ++i) diag[r] += static_cast<double>(alpha[i]) * weights[i];
  }
  const ComplexMatrix bc = to_complex(b);
  const ComplexMatrix bi = to_complex(b.inverse());
  ComplexMatrix out{d, d, std::vector<std::complex<double>>(d * d)};
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      const std::complex<double> t = bc(r, k) * diag[k];
      if (t == 0.0) continue;
      for (std::size_t c = 0; c < d; ++c) out(r, c) += t * bi(k, c);
    }
  }
  return out;
}

}  // namespace jetflow
