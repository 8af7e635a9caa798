#include "jetflow/series/series.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "jetflow/errors.hpp"

namespace jetflow {

namespace {

void require_same_nvars(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
  if (a.nvars() != b.nvars()) {
    throw DomainError(std::string(op) + ": variable count mismatch (" + std::to_string(a.nvars()) + " vs " +
                      std::to_string(b.nvars()) + ")");
  }
}

struct ExpandedTerm {
  MultiIndex alpha;
  unsigned deg;
  const GaussianRational* coeff;
};

std::vector<ExpandedTerm> expand(const TruncatedSeries& s) {
  std::vector<ExpandedTerm> out;
  out.reserve(s.term_count());
  for (const auto& [rank, c] : s.terms()) {
    MultiIndex a = deglex_unrank(s.nvars(), rank);
    const unsigned d = degree(a);
    out.push_back({std::move(a), d, &c});
  }
  return out;
}

// Coefficient of a term for printing; real or purely imaginary values carry
// their sign outside, mixed values are parenthesized.
struct TermText {
  bool negative = false;
  std::string magnitude;  // empty when the magnitude is 1
};

TermText coefficient_text(const GaussianRational& c) {
  TermText t;
  if (c.is_real()) {
    t.negative = sgn(c.num_re()) < 0;
    const GaussianRational a = t.negative ? -c : c;
    if (!a.is_one()) t.magnitude = a.to_string();
  } else if (sgn(c.num_re()) == 0) {
    t.negative = sgn(c.num_im()) < 0;
    t.magnitude = (t.negative ? -c : c).to_string();
  } else {
    t.magnitude = "(" + c.to_string() + ")";
  }
  return t;
}

}  // namespace

TruncatedSeries TruncatedSeries::constant(std::size_t nvars, unsigned order, const GaussianRational& c) {
  TruncatedSeries s(nvars, order);
  s.add_term_by_rank(0, c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(std::size_t nvars, unsigned order, std::size_t index) {
  if (index >= nvars) throw DomainError("TruncatedSeries::variable: index out of range");
  MultiIndex a(nvars, 0);
  a[index] = 1;
  return monomial(nvars, order, a);
}

TruncatedSeries TruncatedSeries::monomial(std::size_t nvars, unsigned order, const MultiIndex& alpha,
                                          const GaussianRational& c) {
  TruncatedSeries s(nvars, order);
  s.add_term(alpha, c);
  return s;
}

GaussianRational TruncatedSeries::coefficient(std::size_t rank) const {
  auto it = terms_.find(rank);
  return it == terms_.end() ? GaussianRational() : it->second;
}

GaussianRational TruncatedSeries::coefficient(const MultiIndex& alpha) const {
  if (alpha.size() != nvars_) throw DomainError("TruncatedSeries::coefficient: wrong multi-index length");
  return coefficient(deglex_rank(alpha));
}

void TruncatedSeries::add_term(const MultiIndex& alpha, const GaussianRational& c) {
  if (alpha.size() != nvars_) throw DomainError("TruncatedSeries::add_term: wrong multi-index length");
  if (degree(alpha) > order_) return;
  add_term_by_rank(deglex_rank(alpha), c);
}

void TruncatedSeries::add_term_by_rank(std::size_t rank, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(rank, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<unsigned> TruncatedSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  // Deglex ranks are degree-graded, so the smallest rank has minimal degree.
  return degree(deglex_unrank(nvars_, terms_.begin()->first));
}

TruncatedSeries TruncatedSeries::truncated(unsigned q) const {
  if (q > order_) throw DomainError("TruncatedSeries::truncated: cannot raise the order");
  TruncatedSeries s(nvars_, q);
  const std::size_t limit = monomial_count(nvars_, q);
  for (const auto& [rank, c] : terms_) {
    if (rank >= limit) break;
    s.terms_.emplace_hint(s.terms_.end(), rank, c);
  }
  return s;
}

TruncatedSeries TruncatedSeries::homogeneous_part(unsigned d) const {
  TruncatedSeries s(nvars_, order_);
  if (d > order_) return s;
  const std::size_t lo = d == 0 ? 0 : monomial_count(nvars_, d - 1);
  const std::size_t hi = monomial_count(nvars_, d);
  for (auto it = terms_.lower_bound(lo); it != terms_.end() && it->first < hi; ++it) {
    s.terms_.emplace_hint(s.terms_.end(), it->first, it->second);
  }
  return s;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s = *this;
  for (auto& [rank, c] : s.terms_) c = -c;
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  require_same_nvars(*this, rhs, "ts_add");
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  const std::size_t limit = monomial_count(nvars_, order_);
  for (const auto& [rank, c] : rhs.terms_) {
    if (rank >= limit) break;
    add_term_by_rank(rank, c);
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) { return *this += -rhs; }

TruncatedSeries& TruncatedSeries::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [rank, c] : terms_) c *= s;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_nvars(a, b, "ts_mul");
  const unsigned q = std::min(a.order_, b.order_);
  TruncatedSeries out(a.nvars_, q);
  if (a.is_zero() || b.is_zero()) return out;
  const auto ea = expand(a);
  const auto eb = expand(b);
  MultiIndex sum(a.nvars_);
  for (const auto& ta : ea) {
    if (ta.deg > q) break;
    for (const auto& tb : eb) {
      if (ta.deg + tb.deg > q) break;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ta.alpha[i] + tb.alpha[i];
      out.add_term_by_rank(deglex_rank(sum), (*ta.coeff) * (*tb.coeff));
    }
  }
  return out;
}

std::string TruncatedSeries::to_string(std::span<const std::string> vars) const {
  if (vars.size() != nvars_) throw DomainError("TruncatedSeries::to_string: wrong number of variable names");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [rank, c] : terms_) {
    const MultiIndex alpha = deglex_unrank(nvars_, rank);
    const TermText t = coefficient_text(c);
    std::string body;
    const bool constant = degree(alpha) == 0;
    if (constant) {
      body = t.magnitude.empty() ? "1" : t.magnitude;
    } else {
      body = monomial_label(alpha, vars);
      if (!t.magnitude.empty()) body = t.magnitude + "*" + body;
    }
    if (first) {
      out = (t.negative ? "-" : "") + body;
      first = false;
    } else {
      out += (t.negative ? " - " : " + ") + body;
    }
  }
  return out;
}

std::string TruncatedSeries::to_string() const { return to_string(default_variable_names(nvars_)); }

TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b) { return a + b; }

TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

TruncatedSeries ts_compose(const TruncatedSeries& f, std::span<const TruncatedSeries> g) {
  if (g.size() != f.nvars()) {
    throw DomainError("ts_compose: expected " + std::to_string(f.nvars()) + " substitutions, got " +
                      std::to_string(g.size()));
  }
  if (g.empty()) return f;
  const std::size_t n = g.front().nvars();
  unsigned q = f.order();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].nvars() != n) throw DomainError("ts_compose: substitutions have different variable counts");
    if (!g[i].constant_term().is_zero()) {
      throw DomainError("ts_compose: substitution " + std::to_string(i + 1) + " has a nonzero constant term");
    }
    q = std::min(q, g[i].order());
  }
  const auto terms = expand(f);
  // powers[i][k] = g_i^k truncated at q.
  std::vector<std::vector<TruncatedSeries>> powers(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    unsigned max_exp = 0;
    for (const auto& t : terms) max_exp = std::max(max_exp, t.alpha[i]);
    powers[i].push_back(TruncatedSeries::constant(n, q, 1));
    const TruncatedSeries gi = g[i].truncated(q);
    for (unsigned k = 1; k <= max_exp; ++k) {
      if (powers[i].back().is_zero()) {
        powers[i].push_back(powers[i].back());
      } else {
        powers[i].push_back(powers[i].back() * gi);
      }
    }
  }
  TruncatedSeries out(n, q);
  for (const auto& t : terms) {
    if (t.deg > q) break;
    TruncatedSeries term = TruncatedSeries::constant(n, q, *t.coeff);
    for (std::size_t i = 0; i < g.size() && !term.is_zero(); ++i) {
      if (t.alpha[i] != 0) term = term * powers[i][t.alpha[i]];
    }
    out += term;
  }
  return out;
}

TruncatedSeries ts_invert_unit(const TruncatedSeries& f) {
  const GaussianRational c0 = f.constant_term();
  if (c0.is_zero()) throw DomainError("ts_invert_unit: series has zero constant term");
  // 1/f = (1/c0) * sum_k (-h)^k with h = f/c0 - 1 in the maximal ideal.
  const GaussianRational inv = c0.inverse();
  TruncatedSeries h = f * inv;
  h.add_term_by_rank(0, -1);
  const TruncatedSeries minus_h = -h;
  TruncatedSeries acc = TruncatedSeries::constant(f.nvars(), f.order(), 1);
  // Horner: 1 + (-h)(1 + (-h)(1 + ...)).
  for (unsigned k = 0; k < f.order(); ++k) {
    acc = minus_h * acc;
    acc.add_term_by_rank(0, 1);
  }
  return acc * inv;
}

TruncatedSeries partial_derivative(const TruncatedSeries& f, std::size_t i) {
  if (i >= f.nvars()) throw DomainError("partial_derivative: variable index out of range");
  const unsigned q = f.order() == 0 ? 0 : f.order() - 1;
  TruncatedSeries out(f.nvars(), q);
  for (const auto& [rank, c] : f.terms()) {
    MultiIndex a = deglex_unrank(f.nvars(), rank);
    if (a[i] == 0) continue;
    const GaussianRational k(static_cast<long>(a[i]));
    a[i] -= 1;
    out.add_term(a, c * k);
  }
  return out;
}

TruncatedSeries at_order(const TruncatedSeries& f, unsigned q) {
  if (q > f.order()) {
    throw DomainError("series known only to order " + std::to_string(f.order()) + ", order " + std::to_string(q) +
                      " requested");
  }
  return f.truncated(q);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class SeriesParser {
 public:
  SeriesParser(std::string_view text, std::span<const std::string> vars, unsigned order)
      : text_(text), vars_(vars), order_(order) {
    for (const auto& v : vars_) {
      if (v == "i") throw DomainError("'i' is reserved for the imaginary unit and cannot name a variable");
    }
  }

  TruncatedSeries parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    TruncatedSeries s = expr();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return s;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  TruncatedSeries constant(const GaussianRational& c) const {
    return TruncatedSeries::constant(vars_.size(), order_, c);
  }

  TruncatedSeries expr() {
    TruncatedSeries acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  TruncatedSeries term() {
    TruncatedSeries acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        TruncatedSeries d = unary();
        if (d.constant_term().is_zero()) throw ParseError("division by a non-unit series", at);
        acc = acc * ts_invert_unit(d);
      } else {
        return acc;
      }
    }
  }

  TruncatedSeries unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  TruncatedSeries power() {
    TruncatedSeries base = atom();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (pos_ == start) throw ParseError("expected a nonnegative integer exponent", start);
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    const unsigned long e = std::stoul(digits);
    TruncatedSeries result = constant(1);
    for (unsigned long k = 0; k < e && !result.is_zero(); ++k) result = result * base;
    return result;
  }

  TruncatedSeries atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    if (accept('(')) {
      TruncatedSeries inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    GaussianRational number;
    if (detail::read_number_literal(text_, pos_, number)) return constant(number);
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "i") return constant(GaussianRational::imaginary_unit());
      for (std::size_t k = 0; k < vars_.size(); ++k) {
        if (vars_[k] == name) return TruncatedSeries::variable(vars_.size(), order_, k);
      }
      throw ParseError("unknown variable '" + std::string(name) + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  unsigned order_;
  std::size_t pos_ = 0;
};

}  // namespace

TruncatedSeries parse_series(std::string_view text, std::span<const std::string> vars, unsigned order) {
  return SeriesParser(text, vars, order).parse();
}

}  // namespace jetflow
