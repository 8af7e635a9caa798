// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "jetflow/cli/ptx.hpp"
#include "jetflow/embed/embed.hpp"
#include "jetflow/errors.hpp"
#include "jetflow/expoly/closed_form.hpp"
#include "jetflow/intersect/intersect.hpp"
#include "jetflow/jets/decompose.hpp"
#include "jetflow/jets/finite_group.hpp"
#include "jetflow/jets/operator.hpp"
#include "jetflow/numeric/lattice.hpp"
#include "support/colength_oracle.hpp"
#include "support/random.hpp"

using namespace jetflow;
using jetflow::testing::D;
using jetflow::testing::Q;
using jetflow::testing::Random;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failed_ == 0) return {true, summary + ", " + std::to_string(total_) + " checks"};
    return {false, std::to_string(failed_) + "/" + std::to_string(total_) + " checks failed: " + notes_};
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::string notes_;
};

std::vector<std::string> vars(std::size_t n) { return jetflow::testing::vars(n); }

IdealGens ideal(const char* text, std::size_t n, unsigned p) {
  const auto v = vars(n);
  return parse_ideal(text, v, p);
}

// First m <= cap with oracle colength <= m, or nullopt.
std::optional<std::pair<unsigned, unsigned>> oracle_scan(const IdealGens& ideal, unsigned cap) {
  if (jetflow::testing::oracle_colength(ideal, cap) > cap) return std::nullopt;
  for (unsigned m = 0; m <= cap; ++m) {
    const unsigned c = jetflow::testing::oracle_colength(ideal, m);
    if (c <= m) return std::pair{c, m};
  }
  return std::nullopt;
}

bool agrees(const MultResult& got, const std::optional<std::pair<unsigned, unsigned>>& oracle) {
  if (!oracle) return !got.is_finite();
  return got.is_finite() && got.value == oracle->first && got.stabilized_at == oracle->second;
}

// Value of an exponential polynomial at t = 0: the sum of its t^0 coefficients.
GaussianRational at_zero(const ExpPoly& e) {
  GaussianRational s;
  for (const auto& [key, c] : e.terms()) {
    if (key.second == 0) s += c;
  }
  return s;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c{a.rows, b.cols, std::vector<std::complex<double>>(a.rows * b.cols)};
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

// max |(a b)_ij - c_ij| / max(1, sum_k |a_ik| |b_kj|): the error of c as the
// product a b, measured against the floating point scale of that product.
double product_error(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
  const ComplexMatrix ab = multiply(a, b);
  double worst = 0;
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double scale = 0;
      for (std::size_t k = 0; k < a.cols; ++k) scale += std::abs(a(i, k)) * std::abs(b(k, j));
      worst = std::max(worst, std::abs(ab(i, j) - c(i, j)) / std::max(1.0, scale));
    }
  }
  return worst;
}

// Matrix exponential by scaling and squaring of a Taylor polynomial.
ComplexMatrix taylor_exp(ComplexMatrix a) {
  double norm = 0;
  for (const auto& z : a.data) norm = std::max(norm, std::abs(z));
  int squarings = 0;
  while (norm * static_cast<double>(a.rows) > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& z : a.data) z *= scale;
  ComplexMatrix result{a.rows, a.cols, std::vector<std::complex<double>>(a.rows * a.cols)};
  ComplexMatrix term = result;
  for (std::size_t i = 0; i < a.rows; ++i) result(i, i) = term(i, i) = 1;
  for (int k = 1; k <= 30; ++k) {
    term = multiply(term, a);
    for (auto& z : term.data) z /= static_cast<double>(k);
    for (std::size_t i = 0; i < result.data.size(); ++i) result.data[i] += term.data[i];
  }
  for (int s = 0; s < squarings; ++s) result = multiply(result, result);
  return result;
}

// Exhaustive: smallest q with pairwise distinct q-jets.
unsigned separating_order(const std::vector<JetDiffeo>& maps) {
  const unsigned top = maps.front().order();
  for (unsigned q = 0; q <= top; ++q) {
    bool distinct = true;
    for (std::size_t a = 0; a < maps.size() && distinct; ++a) {
      for (std::size_t b = a + 1; b < maps.size() && distinct; ++b) {
        distinct = maps[a].truncated(q) != maps[b].truncated(q);
      }
    }
    if (distinct) return q;
  }
  throw DomainError("maps coincide at the stored order");
}

Outcome c1_oracle_equivalence() {
  Check c;
  Random rng(2024);
  int finite = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const IdealGens a = jetflow::testing::random_ideal(rng, n, 8);
    const IdealGens b = jetflow::testing::random_ideal(rng, n, 8);
    const MultResult got = multiplicity(a, b, 8);
    const auto oracle = oracle_scan(a + b, 8);
    if (oracle) ++finite;
    c.expect(agrees(got, oracle), "pair " + std::to_string(t) + ": " + got.to_string());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 60, "runtime over 60 s");
  return c.outcome("100 pairs, " + std::to_string(finite) + " finite, " + std::to_string(100 - finite) + " exceeded");
}

Outcome c2_worked_multiplicities() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  c.expect(multiplicity(ideal("y - x^2", 2, 8), ideal("y", 2, 8), 8).value == 2, "(y - x^2, y)");
  c.expect(multiplicity(ideal("x", 2, 8), ideal("y", 2, 8), 8).value == 1, "(x, y)");
  c.expect(jet_colength(ideal("x^2; x*y; y^2", 2, 3), 3) == 3, "(x^2, xy, y^2) at m = 3");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 1, "runtime over 1 s");
  return c.outcome("2, 1, 3");
}

Outcome c3_bounded_sequence() {
  Check c;
  const unsigned p = 12;
  const JetDiffeo f = D("2*x + 2*x*y; 4*y - 4/3*x^2 + 4*x^3", 2, p);
  const IdealGens v = ideal("y - x^2", 2, p);
  const IdealGens w = ideal("y", 2, p);
  const auto start = std::chrono::steady_clock::now();
  const auto seq = mu_sequence(f, v, w, 50, p);

  // (F^k)^* V + W has the colength of V + (F^k)^{-*} W = (y - x^2, (F^k)_y),
  // with F^k built by repeated composition.
  JetDiffeo iterate = JetDiffeo::identity(2, p);
  unsigned largest = 0;
  for (unsigned k = 0; k <= 50; ++k) {
    const IdealGens pushed(2, p, {v.gens()[0], iterate.component(1)});
    const auto oracle = oracle_scan(pushed, p);
    const MultResult& got = seq[k].second;
    c.expect(seq[k].first == k && agrees(got, oracle), "k = " + std::to_string(k) + ": " + got.to_string());
    // Precomputed values: 3 at k = 3, 2 otherwise.
    c.expect(got.is_finite() && got.value == (k == 3 ? 3u : 2u), "precomputed value at k = " + std::to_string(k));
    if (got.is_finite()) largest = std::max(largest, got.value);
    iterate = diffeo_compose(iterate, f);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 30, "runtime over 30 s");
  return c.outcome("k = 0..50 finite, max " + std::to_string(largest));
}

Outcome c4_commutator_indices() {
  Check c;
  const unsigned p = 8;
  const JetDiffeo g1 = D("x + x^2", 1, p);
  JetDiffeo g = D("x + x^3", 1, p);
  std::string got;
  for (unsigned expected : {4u, 5u, 6u}) {
    g = group_commutator(g1, g);
    const MultResult idx = fixed_point_index(g, 1, p);
    // In one variable the index is the order of vanishing of g(x) - x.
    const auto nu = (g.component(0) - TruncatedSeries::variable(1, p, 0)).valuation();
    c.expect(idx.is_finite() && idx.value == expected && nu == expected, "expected " + std::to_string(expected));
    got += (got.empty() ? "" : ", ") + std::to_string(idx.value);
  }
  return c.outcome("indices " + got);
}

Outcome c5_ptx() {
  Check c;
  for (unsigned prime : {2u, 3u, 5u, 7u}) {
    const cli::PtxResult r = cli::ptx_demo(prime, 12);
    c.expect(r.vanishing_order == prime, "p = " + std::to_string(prime));
    const unsigned long t = std::stoul(r.t);
    for (const auto& coef : r.coefficients) {
      const double modulus = std::abs(2 * std::sin(std::numbers::pi * static_cast<double>(t % (2 * coef.j)) / coef.j));
      c.expect((t % coef.j == 0) == coef.vanishes && (modulus < 1e-12) == coef.vanishes,
               "p = " + std::to_string(prime) + ", j = " + std::to_string(coef.j));
    }
  }
  return c.outcome("orders 2, 3, 5, 7");
}

Outcome c6_exp_log() {
  Check c;
  Random rng(606);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 6));
    const JetDiffeo f = rng.unipotent_diffeo(n, p, 0.3);
    c.expect(exp_vf(log_unipotent(f)) == f, "diffeo " + f.to_string());
    const JetVectorField v = rng.nilpotent_field(n, p, 0.3);
    c.expect(log_unipotent(exp_vf(v)) == v, "field " + v.to_string());
  }
  return c.outcome("200 diffeos, 200 fields");
}

Outcome c7_flow() {
  Check c;
  Random rng(707);
  const std::vector<GaussianRational> pool{0, 1, -1, 2, Q("1/2"), Q("i"), Q("1-i")};
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 4));
    std::vector<GaussianRational> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(pool[static_cast<std::size_t>(rng.integer(0, 6))]);
    const JetVectorField v = rng.triangular_field(diag, p, 0.4);
    const ExpPolyMatrix m = flow_operator(v);
    const Matrix a = vf_as_operator(v).matrix;

    bool identity = true;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t col = 0; col < m.cols(); ++col) identity = identity && at_zero(m(r, col)) == GaussianRational(r == col ? 1 : 0);
    }
    c.expect(identity, "M(0) != I for " + v.to_string());
    c.expect(dt(m) == a * m, "dM/dt != AM for " + v.to_string());

    for (int k = 0; k < 20; ++k) {
      const long q1 = rng.integer(1, 7);
      const long q2 = rng.integer(1, 7);
      const double s1 = static_cast<double>(rng.integer(-2 * q1, 2 * q1)) / static_cast<double>(q1);
      const double s2 = static_cast<double>(rng.integer(-2 * q2, 2 * q2)) / static_cast<double>(q2);
      const double d = product_error(eval_num(m, s1), eval_num(m, s2), eval_num(m, s1 + s2));
      worst = std::max(worst, d);
      c.expect(d <= 1e-10, "group law for " + v.to_string());
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "50 fields, group law max err %.1e", worst);
  return c.outcome(buf);
}

Outcome c8_power() {
  Check c;
  const JetDiffeo a = D("3*x + y; 3*y; 1/2*z", 3, 1);
  const ExpPolyMatrix ma = power_operator(a);
  const GaussianRational l1 = 3;
  const GaussianRational l2 = Q("1/2");
  for (long t = 0; t <= 10; ++t) {
    // Operator rows/cols 1..3 are x, y, z; entry (y, x) is the coefficient of y in x o A^t.
    c.expect(ep_eval_int(ma(1, 1), t) == l1.pow(t), "lambda1^t");
    c.expect(ep_eval_int(ma(2, 1), t) == GaussianRational(t) * l1.pow(t - 1), "t lambda1^(t-1)");
    c.expect(ep_eval_int(ma(3, 3), t) == l2.pow(t), "lambda2^t");
  }

  Random rng(808);
  const std::vector<GaussianRational> pool{1, -1, 2, Q("i"), Q("1/2"), Q("-2+i")};
  std::vector<JetDiffeo> cases{a, D("x + x^2", 1, 4), D("2*x; -y + x^2", 2, 4)};
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    std::vector<GaussianRational> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(pool[static_cast<std::size_t>(rng.integer(0, 5))]);
    cases.push_back(rng.triangular_diffeo(diag, static_cast<unsigned>(rng.integer(1, 4)), 0.4));
  }
  for (const auto& f : cases) {
    const ExpPolyMatrix m = power_operator(f);
    JetDiffeo iterate = JetDiffeo::identity(f.nvars(), f.order());
    for (long t = 0; t <= 10; ++t) {
      c.expect(eval_int(m, t) == as_operator(iterate).matrix, "t = " + std::to_string(t) + " for " + f.to_string());
      iterate = diffeo_compose(iterate, f);
    }
  }
  return c.outcome(std::to_string(cases.size()) + " maps, t = 0..10");
}

Outcome c9_bochner() {
  Check c;
  const unsigned p = 6;
  const JetDiffeo phi = D("x + y^2; y + x^2 - x*y", 2, p);
  const JetDiffeo rotation = diffeo_compose(diffeo_compose(phi, D("-y; x", 2, p)), diffeo_inverse(phi));
  std::string sizes;
  for (const JetDiffeo& gen : {D("-x/(1 + x)", 1, p), rotation}) {
    const FiniteGroupAction k = FiniteGroupAction::generated_by(std::vector<JetDiffeo>{gen});
    const JetDiffeo u = bochner_average(k);
    const JetDiffeo u_inv = diffeo_inverse(u);
    for (const auto& h : k.elements()) {
      c.expect(diffeo_compose(diffeo_compose(u, h), u_inv) == h.linear_diffeo(), "element " + h.to_string());
    }
    sizes += (sizes.empty() ? "" : " and ") + std::to_string(k.size());
  }
  return c.outcome("groups of order " + sizes);
}

Outcome c10_torsion() {
  Check c;
  const std::vector<std::pair<std::vector<const char*>, unsigned>> cases{
      {{"2"}, 1}, {{"-1"}, 2}, {{"i"}, 4}, {{"2i", "2"}, 4}, {{"3/5+4/5i"}, 1}};
  for (const auto& [values, expected] : cases) {
    std::vector<GaussianRational> l;
    for (const char* s : values) l.push_back(Q(s));
    c.expect(roots_of_unity_order(l) == expected, std::string(values.front()));
  }
  return c.outcome("1, 2, 4, 4, 1");
}

Outcome c11_embedding() {
  Check c;
  std::vector<JetDiffeo> unipotent{D("x/(1 - x)", 1, 5), D("x + x^2", 1, 6), D("x + y; y + x^2", 2, 4),
                                   D("x + x*y; y - x^2 + y^3", 2, 5)};
  Random rng(1111);
  for (int t = 0; t < 20; ++t) {
    unipotent.push_back(rng.unipotent_diffeo(static_cast<std::size_t>(rng.integer(1, 2)),
                                             static_cast<unsigned>(rng.integer(1, 6)), 0.3));
  }
  for (const auto& g : unipotent) c.expect(exp_vf(takens_embed(g)) == g, "takens " + g.to_string());

  const JetDiffeo f = D("-x - x^2", 1, 4);
  const EmbeddingResult r = embed_power_in_flow(f);
  c.expect(r.k == 2, "k = " + std::to_string(r.k));
  const double residual = max_abs_diff(taylor_exp(r.field_operator()), to_complex(as_operator(diffeo_compose(f, f)).matrix));
  c.expect(residual <= 1e-9 && r.residual <= 1e-9, "residual");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu round trips, -x - x^2: k = %u, residual %.1e", unipotent.size(), r.k, residual);
  return c.outcome(buf);
}

Outcome c12_jet_determination() {
  Check c;
  const unsigned p = 4;
  const JetDiffeo phi2 = D("x + y^2; y + x^2", 2, p);
  const JetDiffeo phi3 = D("x + y*z; y + x^2; z - x*y", 3, p);
  // Documented minimal orders of the bundled actions.
  const std::vector<std::pair<std::vector<JetDiffeo>, unsigned>> actions{
      {{JetDiffeo::identity(1, p)}, 0},
      {{D("-x/(1 + x)", 1, p)}, 1},
      {{diffeo_compose(diffeo_compose(phi2, D("-y; x", 2, p)), diffeo_inverse(phi2))}, 1},
      {{diffeo_compose(diffeo_compose(phi3, D("y; z; x", 3, p)), diffeo_inverse(phi3)),
        diffeo_compose(diffeo_compose(phi3, D("y; x; z", 3, p)), diffeo_inverse(phi3))},
       1},
  };
  std::string got;
  for (const auto& [gens, documented] : actions) {
    const FiniteGroupAction k = FiniteGroupAction::generated_by(gens);
    const unsigned q = jet_determination(k);
    c.expect(q == documented && q == separating_order(k.elements()), "documented " + std::to_string(documented));
    got += (got.empty() ? "" : ", ") + std::to_string(q);
  }
  return c.outcome("p = " + got);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"multiplicity matches brute-force colength on random pairs", c1_oracle_equivalence},
      {"worked multiplicities", c2_worked_multiplicities},
      {"mu_k bounded for k = 0..50 and matches oracle", c3_bounded_sequence},
      {"commutator fixed point indices 4, 5, 6", c4_commutator_indices},
      {"P_t vanishes to order p at t = (p-1)!", c5_ptx},
      {"exp/log round trips", c6_exp_log},
      {"flow closed form", c7_flow},
      {"power closed form", c8_power},
      {"Bochner linearization", c9_bochner},
      {"torsion orders", c10_torsion},
      {"embedding of powers in flows", c11_embedding},
      {"jet determination of finite actions", c12_jet_determination},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2zu: %s  %s (%s) [%.2f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
  }
  std::fflush(stdout);
  return failures;
}
