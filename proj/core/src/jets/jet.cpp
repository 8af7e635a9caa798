#include "jetflow/jets/jet.hpp"

#include <algorithm>
#include <utility>

#include "jetflow/errors.hpp"

namespace jetflow {

namespace {

void validate_components(const std::vector<TruncatedSeries>& c, const char* what) {
  if (c.empty()) throw DomainError(std::string(what) + ": needs at least one component");
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].nvars() != n) {
      throw DomainError(std::string(what) + ": component " + std::to_string(i + 1) + " has " +
                        std::to_string(c[i].nvars()) + " variables, expected " + std::to_string(n));
    }
    if (c[i].order() != c[0].order()) throw DomainError(std::string(what) + ": components have different orders");
    if (!c[i].constant_term().is_zero()) {
      throw DomainError(std::string(what) + ": component " + std::to_string(i + 1) +
                        " does not vanish at the origin");
    }
  }
}

Matrix linear_part_of(const std::vector<TruncatedSeries>& c) {
  const std::size_t n = c.size();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) l(i, j) = c[j].coefficient(i + 1);
  }
  return l;
}

std::string join_components(const std::vector<TruncatedSeries>& c, std::span<const std::string> vars) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i != 0) out += "; ";
    out += c[i].to_string(vars);
  }
  return out;
}

// d f / d x_i with the degree-p part of the derivative treated as unknown
// zero; valid whenever the result is multiplied by an element of m.
TruncatedSeries derivative_keep_order(const TruncatedSeries& f, std::size_t i) {
  TruncatedSeries out(f.nvars(), f.order());
  for (const auto& [rank, c] : f.terms()) {
    MultiIndex a = deglex_unrank(f.nvars(), rank);
    if (a[i] == 0) continue;
    const GaussianRational k(static_cast<long>(a[i]));
    a[i] -= 1;
    out.add_term(a, c * k);
  }
  return out;
}

}  // namespace

JetDiffeo::JetDiffeo(std::vector<TruncatedSeries> components) : components_(std::move(components)) {
  validate_components(components_, "JetDiffeo");
  if (order() == 0) return;
  const Matrix l = linear_part_of(components_);
  if (l.rank() != l.rows()) throw DomainError("JetDiffeo: linear part is not invertible");
}

JetDiffeo JetDiffeo::identity(std::size_t nvars, unsigned order) {
  std::vector<TruncatedSeries> c;
  for (std::size_t i = 0; i < nvars; ++i) c.push_back(TruncatedSeries::variable(nvars, order, i));
  return JetDiffeo(std::move(c));
}

JetDiffeo JetDiffeo::linear(const Matrix& l, unsigned order) {
  if (!l.is_square()) throw DomainError("JetDiffeo::linear: matrix not square");
  const std::size_t n = l.rows();
  std::vector<TruncatedSeries> c(n, TruncatedSeries(n, order));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      c[j].add_term_by_rank(i + 1, l(i, j));
    }
  }
  return JetDiffeo(std::move(c));
}

Matrix JetDiffeo::linear_part() const { return linear_part_of(components_); }

bool JetDiffeo::is_identity() const { return *this == identity(nvars(), order()); }

JetDiffeo JetDiffeo::truncated(unsigned q) const {
  std::vector<TruncatedSeries> c;
  for (const auto& s : components_) c.push_back(at_order(s, q));
  return JetDiffeo(std::move(c));
}

std::string JetDiffeo::to_string(std::span<const std::string> vars) const { return join_components(components_, vars); }

std::string JetDiffeo::to_string() const { return to_string(default_variable_names(nvars())); }

JetVectorField::JetVectorField(std::vector<TruncatedSeries> components) : components_(std::move(components)) {
  validate_components(components_, "JetVectorField");
}

JetVectorField JetVectorField::zero(std::size_t nvars, unsigned order) {
  return JetVectorField(std::vector<TruncatedSeries>(nvars, TruncatedSeries(nvars, order)));
}

Matrix JetVectorField::linear_part() const { return linear_part_of(components_); }

bool JetVectorField::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

TruncatedSeries JetVectorField::apply(const TruncatedSeries& f) const {
  if (f.nvars() != nvars()) throw DomainError("JetVectorField::apply: variable count mismatch");
  TruncatedSeries out(nvars(), std::min(order(), f.order()));
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (components_[i].is_zero()) continue;
    out += components_[i] * derivative_keep_order(f, i);
  }
  return out;
}

std::string JetVectorField::to_string(std::span<const std::string> vars) const {
  return join_components(components_, vars);
}

std::string JetVectorField::to_string() const { return to_string(default_variable_names(nvars())); }

JetDiffeo diffeo_compose(const JetDiffeo& f, const JetDiffeo& g) {
  if (f.nvars() != g.nvars()) throw DomainError("diffeo_compose: dimension mismatch");
  if (f.order() != g.order()) throw DomainError("diffeo_compose: order mismatch");
  std::vector<TruncatedSeries> c;
  c.reserve(f.nvars());
  for (const auto& fi : f.components()) c.push_back(ts_compose(fi, g.components()));
  return JetDiffeo(std::move(c));
}

JetDiffeo diffeo_inverse(const JetDiffeo& f) {
  // Solve F(G) = x as G = L^-1 (x - H(G)) with H = F - linear part; each
  // sweep fixes one more degree.
  const std::size_t n = f.nvars();
  const unsigned p = f.order();
  if (p == 0) return f;
  const Matrix l_inv = f.linear_part().inverse();
  std::vector<TruncatedSeries> h;
  for (const auto& fi : f.components()) {
    TruncatedSeries hi = fi;
    for (std::size_t i = 0; i < n; ++i) hi.add_term_by_rank(i + 1, -fi.coefficient(i + 1));
    h.push_back(std::move(hi));
  }
  auto apply_linear = [&](const std::vector<TruncatedSeries>& v) {
    std::vector<TruncatedSeries> out(n, TruncatedSeries(n, p));
    // sum_i L(i, j) G_i = r_j, so G_j = sum_i Linv(i, j) r_i.
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!l_inv(i, j).is_zero()) out[j] += v[i] * l_inv(i, j);
      }
    }
    return out;
  };
  std::vector<TruncatedSeries> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(TruncatedSeries::variable(n, p, i));
  std::vector<TruncatedSeries> g = apply_linear(x);
  for (unsigned sweep = 1; sweep < p; ++sweep) {
    std::vector<TruncatedSeries> rhs;
    for (std::size_t i = 0; i < n; ++i) rhs.push_back(x[i] - ts_compose(h[i], g));
    g = apply_linear(rhs);
  }
  return JetDiffeo(std::move(g));
}

JetDiffeo diffeo_power(const JetDiffeo& f, long k) {
  if (k < 0) return diffeo_power(diffeo_inverse(f), -k);
  JetDiffeo result = JetDiffeo::identity(f.nvars(), f.order());
  JetDiffeo base = f;
  auto e = static_cast<unsigned long>(k);
  while (e != 0) {
    if ((e & 1UL) != 0) result = diffeo_compose(result, base);
    e >>= 1U;
    if (e != 0) base = diffeo_compose(base, base);
  }
  return result;
}

JetDiffeo group_commutator(const JetDiffeo& f, const JetDiffeo& g) {
  return diffeo_compose(diffeo_compose(f, g), diffeo_compose(diffeo_inverse(f), diffeo_inverse(g)));
}

std::vector<std::string> split_components(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    const auto first = current.find_first_not_of(" \t\r");
    if (first != std::string::npos) {
      const auto last = current.find_last_not_of(" \t\r");
      out.push_back(current.substr(first, last - first + 1));
    }
    current.clear();
  };
  for (char c : text) {
    if (c == ';' || c == '\n') {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return out;
}

namespace {

std::vector<TruncatedSeries> parse_components(std::string_view text, std::span<const std::string> vars,
                                              unsigned order) {
  std::vector<TruncatedSeries> c;
  for (const auto& part : split_components(text)) c.push_back(parse_series(part, vars, order));
  if (c.size() != vars.size()) {
    throw DomainError("expected " + std::to_string(vars.size()) + " components, got " + std::to_string(c.size()));
  }
  return c;
}

}  // namespace

JetDiffeo parse_diffeo(std::string_view text, std::span<const std::string> vars, unsigned order) {
  return JetDiffeo(parse_components(text, vars, order));
}

JetVectorField parse_vector_field(std::string_view text, std::span<const std::string> vars, unsigned order) {
  return JetVectorField(parse_components(text, vars, order));
}

}  // namespace jetflow
