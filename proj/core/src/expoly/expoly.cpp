#include "jetflow/expoly/expoly.hpp"

#include <algorithm>

#include "jetflow/errors.hpp"
#include "jetflow/series/multi_index.hpp"

namespace jetflow {

namespace {

bool is_positive_integer(const GaussianRational& z) {
  return z.is_real() && z.is_gaussian_integer() && sgn(z.num_re()) > 0;
}

[[noreturn]] void mixed_kinds() { throw DomainError("exponential polynomial: mixed character kinds"); }

}  // namespace

Character Character::mult(const GaussianRational& base) {
  if (base.is_zero()) throw DomainError("Character::mult: base must be nonzero");
  return {CharacterKind::Mult, base};
}

Character Character::operator*(const Character& rhs) const {
  if (kind != rhs.kind) mixed_kinds();
  return kind == CharacterKind::Mult ? Character{kind, value * rhs.value} : Character{kind, value + rhs.value};
}

std::strong_ordering operator<=>(const Character& a, const Character& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.value <=> b.value;
}

ExpPoly ExpPoly::constant(CharacterKind kind, const GaussianRational& c) {
  ExpPoly e(kind);
  e.add_term(Character::trivial(kind), 0, c);
  return e;
}

ExpPoly ExpPoly::term(const Character& ch, unsigned t_power, const GaussianRational& c) {
  ExpPoly e(ch.kind);
  e.add_term(ch, t_power, c);
  return e;
}

unsigned ExpPoly::max_t_power() const {
  unsigned k = 0;
  for (const auto& [key, c] : terms_) k = std::max(k, key.second);
  return k;
}

bool ExpPoly::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.first.is_trivial(); });
}

void ExpPoly::add_term(const Character& ch, unsigned t_power, const GaussianRational& c) {
  if (c.is_zero()) return;
  if (ch.kind != kind_) {
    if (!terms_.empty()) mixed_kinds();
    kind_ = ch.kind;
  }
  auto [it, inserted] = terms_.try_emplace(Key{ch, t_power}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly out = *this;
  for (auto& [key, c] : out.terms_) c = -c;
  return out;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& rhs) {
  for (const auto& [key, c] : rhs.terms_) add_term(key.first, key.second, c);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& rhs) {
  for (const auto& [key, c] : rhs.terms_) add_term(key.first, key.second, -c);
  return *this;
}

ExpPoly& ExpPoly::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  if (a.is_zero()) return ExpPoly(b.kind());
  if (b.is_zero()) return ExpPoly(a.kind());
  if (a.kind() != b.kind()) mixed_kinds();
  ExpPoly out(a.kind());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) out.add_term(ka.first * kb.first, ka.second + kb.second, ca * cb);
  }
  return out;
}

std::string ExpPoly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    const auto& [ch, k] = key;
    std::string body;
    if (!ch.is_trivial()) {
      if (ch.kind == CharacterKind::Mult) {
        const std::string b = ch.value.to_string();
        body = (is_positive_integer(ch.value) ? b : "(" + b + ")") + "^" + var;
      } else if (ch.value.is_one()) {
        body = "exp(" + var + ")";
      } else {
        const std::string f = ch.value.to_string();
        body = "exp(" + (is_positive_integer(ch.value) ? f : "(" + f + ")") + "*" + var + ")";
      }
    }
    if (k > 0) {
      if (!body.empty()) body += "*";
      body += k == 1 ? var : var + "^" + std::to_string(k);
    }
    if (!out.empty()) out += " + ";
    if (body.empty()) {
      out += c.to_string();
    } else if (c.is_one()) {
      out += body;
    } else {
      out += "(" + c.to_string() + ")*" + body;
    }
  }
  return out;
}

ExpPoly ep_add(const ExpPoly& a, const ExpPoly& b) { return a + b; }

ExpPoly ep_mul(const ExpPoly& a, const ExpPoly& b) { return a * b; }

ExpPoly ep_dt(const ExpPoly& e) {
  if (e.kind() != CharacterKind::Exp) throw DomainError("ep_dt: only defined for exponential characters");
  ExpPoly out(CharacterKind::Exp);
  for (const auto& [key, c] : e.terms()) {
    const auto& [ch, k] = key;
    out.add_term(ch, k, c * ch.value);
    if (k > 0) out.add_term(ch, k - 1, c * GaussianRational(static_cast<long>(k)));
  }
  return out;
}

GaussianRational ep_eval_int(const ExpPoly& e, long m) {
  if (e.kind() != CharacterKind::Mult && !e.is_zero()) {
    throw DomainError("ep_eval_int: exact integer evaluation needs multiplicative characters");
  }
  GaussianRational sum;
  const GaussianRational tm(m);
  for (const auto& [key, c] : e.terms()) {
    sum += c * key.first.value.pow(m) * tm.pow(static_cast<long>(key.second));
  }
  return sum;
}

GaussianRational ep_eval_polynomial(const ExpPoly& e, const GaussianRational& t) {
  if (!e.is_polynomial()) throw DomainError("ep_eval_polynomial: nontrivial characters present");
  GaussianRational sum;
  for (const auto& [key, c] : e.terms()) sum += c * t.pow(static_cast<long>(key.second));
  return sum;
}

std::complex<double> ep_eval_num(const ExpPoly& e, std::complex<double> t) {
  std::complex<double> sum = 0;
  for (const auto& [key, c] : e.terms()) {
    const auto& [ch, k] = key;
    const std::complex<double> v = ch.value.to_complex();
    std::complex<double> term = c.to_complex();
    if (!ch.is_trivial()) term *= ch.kind == CharacterKind::Mult ? std::exp(t * std::log(v)) : std::exp(v * t);
    for (unsigned j = 0; j < k; ++j) term *= t;
    sum += term;
  }
  return sum;
}

unsigned ExpPolyMatrix::max_t_power() const {
  unsigned k = 0;
  for (const auto& e : data_) k = std::max(k, e.max_t_power());
  return k;
}

Matrix eval_int(const ExpPolyMatrix& m, long t) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = ep_eval_int(m(r, c), t);
  }
  return out;
}

Matrix eval_polynomial(const ExpPolyMatrix& m, const GaussianRational& t) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = ep_eval_polynomial(m(r, c), t);
  }
  return out;
}

ComplexMatrix eval_num(const ExpPolyMatrix& m, std::complex<double> t) {
  ComplexMatrix out{m.rows(), m.cols(), std::vector<std::complex<double>>(m.rows() * m.cols())};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = ep_eval_num(m(r, c), t);
  }
  return out;
}

ExpPolyMatrix dt(const ExpPolyMatrix& m) {
  ExpPolyMatrix out(m.rows(), m.cols(), CharacterKind::Exp);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = ep_dt(m(r, c));
  }
  return out;
}

ExpPolyMatrix operator*(const Matrix& a, const ExpPolyMatrix& m) {
  if (a.cols() != m.rows()) throw DomainError("matrix product: dimension mismatch");
  const CharacterKind kind = m.rows() > 0 && m.cols() > 0 ? m(0, 0).kind() : CharacterKind::Exp;
  ExpPolyMatrix out(a.rows(), m.cols(), kind);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& s = a(r, k);
      if (s.is_zero()) continue;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!m(k, c).is_zero()) out(r, c) += m(k, c) * s;
      }
    }
  }
  return out;
}

ExpPolyMatrix operator*(const ExpPolyMatrix& a, const ExpPolyMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: dimension mismatch");
  const CharacterKind kind = a.rows() > 0 && a.cols() > 0 ? a(0, 0).kind() : CharacterKind::Exp;
  ExpPolyMatrix out(a.rows(), b.cols(), kind);
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

std::string to_csv(const ExpPolyMatrix& m, std::size_t nvars, std::span<const std::string> vars) {
  std::string out = "row,col,value,tag\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).is_zero()) continue;
      out += monomial_label(deglex_unrank(nvars, r), vars) + "," + monomial_label(deglex_unrank(nvars, c), vars) +
             "," + m(r, c).to_string() + ",exact\n";
    }
  }
  return out;
}

}  // namespace jetflow
