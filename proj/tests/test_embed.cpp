#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jetflow/embed/embed.hpp"
#include "jetflow/errors.hpp"
#include "jetflow/jets/decompose.hpp"
#include "jetflow/jets/operator.hpp"
#include "support/random.hpp"

using namespace jetflow;
using jetflow::testing::D;
using jetflow::testing::Q;
using jetflow::testing::Random;
using jetflow::testing::VF;

namespace {

unsigned order_of(std::initializer_list<const char*> values) {
  std::vector<GaussianRational> v;
  for (const char* s : values) v.push_back(Q(s));
  return roots_of_unity_order(v);
}

ComplexMatrix plus(ComplexMatrix a, const ComplexMatrix& b) {
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
  return a;
}

}  // namespace

TEST_CASE("roots of unity order") {
  CHECK(order_of({"2"}) == 1);
  CHECK(order_of({"-1"}) == 2);
  CHECK(order_of({"i"}) == 4);
  CHECK(order_of({"2i", "2"}) == 4);
  CHECK(order_of({"3/5+4/5i"}) == 1);
  CHECK_THROWS_AS(order_of({"0"}), DomainError);
}

TEST_CASE("log symbols") {
  const LogSymbol t1 = LogSymbol::theta(2, 0);
  const LogSymbol tau = LogSymbol::tau(2);
  const LogSymbol w = t1 * GaussianRational(2) - tau * Q("1/2");
  CHECK(w.to_string() == "2*log(l1) - 1/2*(2*pi*i)");
  CHECK(LogSymbol(2).to_string() == "0");
  CHECK((w - w).is_zero());
  const std::vector<std::complex<double>> logs{std::log(std::complex<double>(-1, 0)), 0.0};
  CHECK(std::abs(w.evaluate(logs) - std::complex<double>(0, std::numbers::pi)) < 1e-12);
  CHECK(std::abs((t1 * t1).evaluate(logs) + std::numbers::pi * std::numbers::pi) < 1e-12);
  CHECK_THROWS_AS(LogSymbol::theta(1, 1), DomainError);
}

TEST_CASE("unipotent embedding is exact") {
  const JetDiffeo f = D("x + x^2", 1, 6);
  const EmbeddingResult r = embed_power_in_flow(f);
  CHECK(r.k == 1);
  CHECK(r.exact);
  CHECK(r.semisimple.is_zero());
  CHECK(exp_vf(r.nilpotent) == f);
  CHECK(r.residual < 1e-9);
}

TEST_CASE("embedding of -x - x^2 needs the square") {
  const JetDiffeo f = D("-x - x^2", 1, 4);
  const EmbeddingResult r = embed_power_in_flow(f);
  CHECK(r.k == 2);
  CHECK(r.delta == std::vector<GaussianRational>{Q("-1/2")});
  CHECK_FALSE(r.nilpotent.is_zero());
  CHECK(r.residual <= 1e-9);
  const ComplexMatrix target = to_complex(as_operator(diffeo_compose(f, f)).matrix);
  CHECK(max_abs_diff(complex_exp(r.field_operator()), target) <= 1e-9);
  const auto vars = jetflow::testing::vars(1);
  CHECK(r.report(vars).rfind("k: 2\n", 0) == 0);
}

TEST_CASE("diagonal linear embedding has symbolic logarithms") {
  const JetDiffeo f = D("2*x; 3*y", 2, 3);
  const EmbeddingResult r = embed_power_in_flow(f);
  CHECK(r.k == 1);
  CHECK(r.relations.basis.empty());
  CHECK(r.semisimple(1, 1) == LogSymbol::theta(2, 0));
  CHECK(r.semisimple(2, 2) == LogSymbol::theta(2, 1));
  CHECK(r.semisimple(2, 1).is_zero());
  CHECK(r.nilpotent.is_zero());
  const ComplexMatrix e = complex_exp(r.field_operator());
  CHECK(std::abs(e(1, 1) - 2.0) < 1e-12);
  CHECK(std::abs(e(2, 2) - 3.0) < 1e-12);
  CHECK(r.semisimple_components(jetflow::testing::vars(2))[0] == "(log(l1))*x");
}

TEST_CASE("torsion embeddings reproduce F^k but not F") {
  for (const char* text : {"-x - x^2", "i*x + x^2"}) {
    CAPTURE(text);
    const unsigned p = 5;
    const JetDiffeo f = D(text, 1, p);
    const EmbeddingResult r = embed_power_in_flow(f);
    CHECK(r.residual <= 1e-9);

    // The projector and frame constructions of V_s agree.
    std::vector<std::complex<double>> w;
    for (const auto& s : r.weights) w.push_back(s.evaluate(r.logs));
    CHECK(max_abs_diff(frame_derivation(f, w), r.semisimple.evaluate(r.logs)) < 1e-9);

    // With k' = 1 no branch of the logarithm gives F.
    const ComplexMatrix an = to_complex(vf_as_operator(log_unipotent(r.unipotent_factor)).matrix);
    const ComplexMatrix target = to_complex(as_operator(f).matrix);
    for (int m = -3; m <= 3; ++m) {
      const std::complex<double> w1 = r.logs[0] + std::complex<double>(0, 2 * std::numbers::pi * m);
      const ComplexMatrix v = plus(frame_derivation(f, std::vector<std::complex<double>>{w1}), an);
      CHECK(max_abs_diff(complex_exp(v), target) > 1e-3);
    }
  }
}

TEST_CASE("two-dimensional torsion embeddings") {
  for (const char* text : {"2i*x; 2*y + x^2", "-x + y^2; 1/2*y", "-x; -y + x^2", "i*x + x^3; -i*y + x*y"}) {
    CAPTURE(text);
    const JetDiffeo f = D(text, 2, 4);
    const EmbeddingResult r = embed_power_in_flow(f);
    CHECK(r.k == roots_of_unity_order(r.spectrum));
    CHECK(r.residual <= 1e-9);
    const Matrix an = vf_as_operator(r.nilpotent).matrix;
    CHECK((r.semisimple * an - an * r.semisimple).is_zero());
  }
  CHECK(embed_power_in_flow(D("-x; -y + x^2", 2, 4)).delta == std::vector<GaussianRational>{Q("-1/2"), Q("-1/2")});
  CHECK_THROWS_AS(embed_power_in_flow(D("y; x", 2, 3)), DomainError);
  CHECK_THROWS_AS(embed_power_in_flow(D("x + x^2", 1, 3), 4), DomainError);
}

TEST_CASE("random triangular embeddings verify numerically") {
  Random rng(131);
  const std::vector<GaussianRational> pool{1, -1, Q("i"), Q("-i"), 2, Q("1/2"), Q("2i"), -2};
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 4));
    std::vector<GaussianRational> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(pool[static_cast<std::size_t>(rng.integer(0, 7))]);
    const JetDiffeo f = rng.triangular_diffeo(diag, p, 0.4);
    const EmbeddingResult r = embed_power_in_flow(f);
    CHECK(4 % r.k == 0);
    CHECK(r.residual <= 1e-9);
    if (r.family) CHECK(eval_int(*r.family, 2) == as_operator(diffeo_power(f, 2 * static_cast<long>(r.k))).matrix);
  }
}

TEST_CASE("torsion order depends only on the spectrum") {
  Random rng(137);
  const std::vector<GaussianRational> pool{1, -1, Q("i"), 2, Q("1/2"), Q("2i"), Q("3/5+4/5i")};
  for (int t = 0; t < 20; ++t) {
    const std::vector<GaussianRational> diag{pool[static_cast<std::size_t>(rng.integer(0, 6))],
                                             pool[static_cast<std::size_t>(rng.integer(0, 6))]};
    const JetDiffeo f = rng.triangular_diffeo(diag, 3, 0.3);
    const JetDiffeo g = rng.generic_diffeo(2, 3, 0.3);
    const JetDiffeo conj = diffeo_compose(diffeo_compose(g, f), diffeo_inverse(g));
    const unsigned k = roots_of_unity_order(diag);
    CHECK(roots_of_unity_order(linear_spectrum(conj.linear_part())) == k);
    CHECK(4 % k == 0);
  }
}

TEST_CASE("takens embedding") {
  CHECK(takens_embed(JetDiffeo::identity(2, 4)).is_zero());
  CHECK(takens_embed(D("x/(1 - x)", 1, 5)) == VF("x^2", 1, 5));
  const JetDiffeo f = D("x + y; y + x^2", 2, 4);
  CHECK(exp_vf(takens_embed(f)) == f);
  CHECK_THROWS_AS(takens_embed(D("2*x", 1, 3)), DomainError);

  Random rng(139);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 6));
    const JetDiffeo g = rng.unipotent_diffeo(n, p, 0.3);
    const JetVectorField v = takens_embed(g);
    CHECK(exp_vf(v) == g);
    CHECK(is_derivation(vf_as_operator(v)));
  }
}
