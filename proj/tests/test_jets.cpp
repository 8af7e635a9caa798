#include <doctest.h>

#include <vector>

#include "jetflow/errors.hpp"
#include "jetflow/jets/decompose.hpp"
#include "jetflow/jets/finite_group.hpp"
#include "jetflow/jets/jet.hpp"
#include "jetflow/jets/operator.hpp"
#include "jetflow/numeric/polynomial.hpp"
#include "support/random.hpp"

using namespace jetflow;
using jetflow::testing::D;
using jetflow::testing::Q;
using jetflow::testing::Random;
using jetflow::testing::S;
using jetflow::testing::VF;

namespace {

TruncatedSeries monomial(std::size_t n, unsigned p, const MultiIndex& a) { return TruncatedSeries::monomial(n, p, a); }

// exp of the full operator matrix, summed directly.
Matrix matrix_exp_nilpotent(const Matrix& a) {
  const std::size_t d = a.rows();
  Matrix sum = Matrix::identity(d);
  Matrix term = Matrix::identity(d);
  for (std::size_t k = 1; k <= d; ++k) {
    term = term * a * GaussianRational(1, 0, static_cast<long>(k));
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

Matrix random_invertible(Random& rng, std::size_t n) {
  for (;;) {
    Matrix t(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) t(r, c) = GaussianRational(rng.integer(-2, 2));
    }
    if (t.rank() == n) return t;
  }
}

}  // namespace

TEST_CASE("group operations on jets") {
  CHECK(diffeo_compose(D("x+x^2", 1, 4), D("x+x^2", 1, 4)) == D("x + 2*x^2 + 2*x^3 + x^4", 1, 4));
  CHECK(diffeo_inverse(D("2*x", 1, 4)) == D("1/2*x", 1, 4));
  const JetDiffeo f = D("x+x^2", 1, 4);
  const JetDiffeo g = diffeo_inverse(f);
  CHECK(g == D("x - x^2 + 2*x^3 - 5*x^4", 1, 4));
  CHECK(diffeo_compose(f, g).is_identity());
  CHECK(diffeo_compose(g, f).is_identity());
  CHECK(diffeo_power(f, 0).is_identity());
  CHECK(diffeo_power(f, -1) == g);
  CHECK_THROWS_AS(D("x^2", 1, 3), DomainError);
  CHECK_THROWS_AS(D("x+y; 2*x+2*y", 2, 3), DomainError);
  CHECK_THROWS_AS(D("1+x", 1, 3), DomainError);
  CHECK_THROWS_AS(diffeo_compose(D("x", 1, 3), D("x", 1, 4)), DomainError);
}

TEST_CASE("inverse and powers on random jets") {
  Random rng(31);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 5));
    const JetDiffeo f = rng.generic_diffeo(n, p, 0.3);
    const JetDiffeo fi = diffeo_inverse(f);
    CHECK(diffeo_compose(f, fi).is_identity());
    CHECK(diffeo_compose(fi, f).is_identity());
    const long k = rng.integer(2, 5);
    JetDiffeo repeated = JetDiffeo::identity(n, p);
    for (long j = 0; j < k; ++j) repeated = diffeo_compose(repeated, f);
    CHECK(diffeo_power(f, k) == repeated);
    CHECK(diffeo_compose(diffeo_power(f, k), diffeo_power(f, -k)).is_identity());
  }
}

TEST_CASE("induced operator examples") {
  CHECK(as_operator(JetDiffeo::identity(2, 3)).matrix.is_identity());
  const auto two = as_operator(D("2*x", 1, 2));
  CHECK(two.matrix == Matrix::diagonal(std::vector<GaussianRational>{1, 2, 4}));
  const auto op = as_operator(D("x+x^2", 1, 2));
  CHECK(op.image(1) == S("x+x^2", 1, 2));
  CHECK(op.image(2) == S("x^2", 1, 2));
  CHECK(op.rho({1}, {2}) == GaussianRational(1));
  CHECK(op.matrix.is_lower_triangular());
  // Lower-triangular linear part gives a lower-triangular operator.
  CHECK(as_operator(D("x+y; y+x^2", 2, 3)).matrix.is_lower_triangular());
}

TEST_CASE("operator of a composition is the reversed product") {
  Random rng(37);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 4));
    const JetDiffeo f = rng.generic_diffeo(n, p, 0.3);
    const JetDiffeo g = rng.generic_diffeo(n, p, 0.3);
    CHECK(as_operator(diffeo_compose(f, g)).matrix == as_operator(g).matrix * as_operator(f).matrix);
  }
}

TEST_CASE("operators are multiplicative and vector field operators satisfy Leibniz") {
  Random rng(41);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 4));
    const JetDiffeo f = rng.generic_diffeo(n, p, 0.3);
    const JetVectorField v = rng.triangular_field(std::vector<GaussianRational>(n, rng.small_rational()), p, 0.3);
    const JetOperator op = as_operator(f);
    const JetOperator a = vf_as_operator(v);
    CHECK(is_algebra_automorphism(op));
    CHECK(is_derivation(a));
    const auto basis = monomial_basis(n, p);
    for (const auto& al : basis) {
      for (const auto& be : basis) {
        if (degree(al) + degree(be) > p) continue;
        MultiIndex sum(n);
        for (std::size_t i = 0; i < n; ++i) sum[i] = al[i] + be[i];
        const auto xa = monomial(n, p, al);
        const auto xb = monomial(n, p, be);
        CHECK(op.apply(monomial(n, p, sum)) == op.apply(xa) * op.apply(xb));
        CHECK(a.apply(monomial(n, p, sum)) == a.apply(xa) * xb + xa * a.apply(xb));
      }
    }
    CHECK(a.apply(S("1", n, p)).is_zero());
  }
  // A non-multiplicative matrix is rejected.
  JetOperator bad = as_operator(D("x", 1, 2));
  bad.matrix(2, 2) = 3;
  CHECK_FALSE(is_algebra_automorphism(bad));
  CHECK_FALSE(is_derivation(bad));
}

TEST_CASE("vector field operator examples") {
  CHECK(vf_as_operator(VF("x", 1, 2)).matrix == Matrix::diagonal(std::vector<GaussianRational>{0, 1, 2}));
  const auto a = vf_as_operator(VF("x^2", 1, 3));
  CHECK(a.image(1) == S("x^2", 1, 3));
  CHECK(a.image(2) == S("2*x^3", 1, 3));
  CHECK(a.image(3).is_zero());
  CHECK(jet_spectrum(VF("2*x; 3*y", 2, 2)) == std::vector<GaussianRational>{2, 3, 4, 5, 6});
  for (const auto& s : jet_spectrum(VF("x^2 + y^3; x*y", 2, 3))) CHECK(s.is_zero());
  CHECK_THROWS_AS(jet_spectrum(VF("y; x", 2, 2)), DomainError);
}

TEST_CASE("jet spectrum is the operator diagonal") {
  Random rng(43);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 4));
    std::vector<GaussianRational> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(rng.small_gaussian());
    const JetVectorField v = rng.triangular_field(diag, p, 0.3);
    const auto spec = jet_spectrum(v);
    const Matrix a = vf_as_operator(v).matrix;
    CHECK(a.is_lower_triangular());
    REQUIRE(spec.size() + 1 == a.rows());
    for (std::size_t r = 1; r < a.rows(); ++r) CHECK(a(r, r) == spec[r - 1]);
  }
}

TEST_CASE("exponential of nilpotent fields") {
  CHECK(exp_vf(JetVectorField::zero(2, 3)).is_identity());
  CHECK(exp_vf(VF("y; 0", 2, 3)) == D("x+y; y", 2, 3));
  // Time-one map of dx/dt = x^2 is x/(1-x).
  CHECK(exp_vf(VF("x^2", 1, 4)) == D("x + x^2 + x^3 + x^4", 1, 4));
  CHECK_THROWS_AS(exp_vf(VF("x", 1, 3)), DomainError);

  Random rng(47);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const unsigned p = static_cast<unsigned>(rng.integer(1, 4));
    const JetVectorField v = rng.nilpotent_field(n, p, 0.3);
    CHECK(as_operator(exp_vf(v)).matrix == matrix_exp_nilpotent(vf_as_operator(v).matrix));
  }
}

TEST_CASE("logarithm of unipotent jets") {
  CHECK(log_unipotent(JetDiffeo::identity(2, 4)).is_zero());
  CHECK(log_unipotent(D("x + x^2 + x^3 + x^4", 1, 4)) == VF("x^2", 1, 4));
  const auto v = log_unipotent(D("x+x^2", 1, 4));
  CHECK(v == VF("x^2 - x^3 + 3/2*x^4", 1, 4));
  CHECK(exp_vf(v) == D("x+x^2", 1, 4));
  CHECK_THROWS_AS(log_unipotent(D("2*x", 1, 3)), DomainError);
}

TEST_CASE("exp and log are inverse") {
  Random rng(53);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const unsigned p = static_cast<unsigned>(rng.integer(1, n == 3 ? 4 : 6));
    const JetDiffeo f = rng.unipotent_diffeo(n, p, 0.3);
    CHECK(exp_vf(log_unipotent(f)) == f);
    const JetVectorField v = rng.nilpotent_field(n, p, 0.3);
    CHECK(log_unipotent(exp_vf(v)) == v);
  }
}

TEST_CASE("additive Jordan decomposition examples") {
  const auto jc = jordan_chevalley(Matrix::from_rows({{1, 1}, {0, 1}}));
  CHECK(jc.semisimple == Matrix::identity(2));
  CHECK(jc.nilpotent == Matrix::from_rows({{0, 1}, {0, 0}}));
  const Matrix d = Matrix::diagonal(std::vector<GaussianRational>{2, Q("i"), 2});
  CHECK(jordan_chevalley(d).semisimple == d);
  CHECK(jordan_chevalley(d).nilpotent.is_zero());
  const Matrix m = Matrix::from_rows({{2, 1}, {0, 3}});
  const auto jm = jordan_chevalley(m);
  CHECK(jm.semisimple == m);
  CHECK(jm.nilpotent.is_zero());
  CHECK_THROWS_AS(jordan_chevalley(Matrix::from_rows({{0, 2}, {1, 0}})), SpectrumError);
}

TEST_CASE("additive Jordan decomposition against conjugated Jordan forms") {
  Random rng(59);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    const std::vector<GaussianRational> pool{1, -1, 2, Q("i"), Q("1/2+i")};
    Matrix diag(n, n);
    Matrix nil(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      diag(i, i) = pool[static_cast<std::size_t>(rng.integer(0, 4))];
      // Jordan chain links only between equal eigenvalues.
      if (i > 0 && rng.chance(0.5)) {
        diag(i, i) = diag(i - 1, i - 1);
        nil(i - 1, i) = 1;
      }
    }
    const Matrix tm = random_invertible(rng, n);
    const Matrix ti = tm.inverse();
    const Matrix m = tm * (diag + nil) * ti;
    const auto jc = jordan_chevalley(m);
    CHECK(jc.semisimple == tm * diag * ti);
    CHECK(jc.nilpotent == tm * nil * ti);
    CHECK(jc.semisimple + jc.nilpotent == m);
    CHECK(commutator(jc.semisimple, jc.nilpotent).is_zero());
    CHECK(jc.nilpotent.pow(n).is_zero());
    // Anything commuting with M commutes with both parts.
    const Polynomial q({rng.small_rational(), rng.small_rational(), rng.small_rational()});
    const Matrix c = q(m);
    CHECK(commutator(c, jc.semisimple).is_zero());
    CHECK(commutator(c, jc.nilpotent).is_zero());
  }
}

TEST_CASE("multiplicative Jordan decomposition") {
  const JetDiffeo u = D("x+y+x^2; y+x*y", 2, 3);
  const auto mu = multiplicative_jordan(u);
  CHECK(mu.semisimple.is_identity());
  CHECK(mu.unipotent == u);

  const JetDiffeo lin = D("2*x; 3*y", 2, 3);
  const auto ml = multiplicative_jordan(lin);
  CHECK(ml.semisimple == lin);
  CHECK(ml.unipotent.is_identity());

  const JetDiffeo f = D("2*x + x^2", 1, 5);
  const auto mf = multiplicative_jordan(f);
  CHECK(diffeo_compose(mf.semisimple, mf.unipotent) == f);
  CHECK(diffeo_compose(mf.unipotent, mf.semisimple) == f);
  CHECK(mf.unipotent.linear_part() == Matrix::identity(1));
  // 2 has no resonances among 2^k, so the semisimple part is linearizable
  // and the unipotent part is the identity.
  CHECK(mf.unipotent.is_identity());

  // Resonant case: lambda = (2, 4) with x^2 -> y resonant.
  const JetDiffeo r = D("2*x; 4*y + x^2", 2, 4);
  const auto mr = multiplicative_jordan(r);
  CHECK(mr.semisimple == D("2*x; 4*y", 2, 4));
  CHECK(mr.unipotent == D("x; y + 1/4*x^2", 2, 4));

  Random rng(61);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    std::vector<GaussianRational> diag;
    const std::vector<GaussianRational> pool{1, -1, 2, Q("i"), Q("1/2")};
    for (std::size_t i = 0; i < n; ++i) diag.push_back(pool[static_cast<std::size_t>(rng.integer(0, 4))]);
    const JetDiffeo g = rng.triangular_diffeo(diag, 3, 0.3);
    const auto mg = multiplicative_jordan(g);
    CHECK(diffeo_compose(mg.semisimple, mg.unipotent) == g);
    CHECK(diffeo_compose(mg.unipotent, mg.semisimple) == g);
    CHECK((mg.unipotent.linear_part() - Matrix::identity(n)).is_nilpotent());
  }
}

TEST_CASE("commutators") {
  CHECK(group_commutator(D("2*x; 3*y", 2, 4), D("5*x; 1/2*y", 2, 4)).is_identity());
  const JetDiffeo g1 = D("x+x^2", 1, 6);
  const JetDiffeo g2 = D("x+x^3", 1, 6);
  const JetDiffeo g3 = group_commutator(g1, g2);
  CHECK(g3.component(0).coefficient(std::size_t{1}) == GaussianRational(1));
  CHECK(g3.component(0).coefficient(std::size_t{2}).is_zero());
  CHECK(g3.component(0).coefficient(std::size_t{3}).is_zero());
  CHECK_FALSE(g3.component(0).coefficient(std::size_t{4}).is_zero());
  const JetDiffeo g4 = group_commutator(g1, g3);
  for (std::size_t k = 2; k <= 4; ++k) CHECK(g4.component(0).coefficient(k).is_zero());
  CHECK_FALSE(g4.component(0).coefficient(std::size_t{5}).is_zero());
}

TEST_CASE("finite groups and averaging") {
  const FiniteGroupAction trivial({JetDiffeo::identity(2, 4)});
  CHECK(bochner_average(trivial).is_identity());
  CHECK(jet_determination(trivial) == 0);

  const unsigned p = 6;
  const JetDiffeo inv = D("-x/(1+x)", 1, p);
  CHECK(diffeo_compose(inv, inv).is_identity());
  const FiniteGroupAction k2({JetDiffeo::identity(1, p), inv});
  const JetDiffeo u = bochner_average(k2);
  CHECK(u.component(0).coefficient(std::size_t{2}) == Q("-1/2"));
  CHECK(diffeo_compose(diffeo_compose(u, inv), diffeo_inverse(u)) == D("-x", 1, p));
  CHECK(jet_determination(k2) == 1);

  const FiniteGroupAction lin = FiniteGroupAction::generated_by(std::vector<JetDiffeo>{D("-y; x", 2, 4)});
  CHECK(lin.size() == 4);
  CHECK(bochner_average(lin).is_identity());

  // Z/4 rotation conjugated by a nonlinear change of coordinates.
  const JetDiffeo phi = D("x + y^2; y + x^2", 2, p);
  const JetDiffeo g = diffeo_compose(diffeo_inverse(phi), diffeo_compose(D("-y; x", 2, p), phi));
  const FiniteGroupAction k4 = FiniteGroupAction::generated_by(std::vector<JetDiffeo>{g});
  CHECK(k4.size() == 4);
  const JetDiffeo uk = bochner_average(k4);
  const JetDiffeo uk_inv = diffeo_inverse(uk);
  for (const auto& h : k4.elements()) {
    CHECK(diffeo_compose(diffeo_compose(uk, h), uk_inv) == h.linear_diffeo());
  }
  CHECK(jet_determination(k4) == 1);

  CHECK_THROWS_AS(FiniteGroupAction({JetDiffeo::identity(1, 3), D("2*x", 1, 3)}), DomainError);
  CHECK_THROWS_AS(FiniteGroupAction({D("-x", 1, 3)}), DomainError);
}

TEST_CASE("jet determination of arbitrary families") {
  const unsigned p = 5;
  const std::vector<JetDiffeo> maps{JetDiffeo::identity(1, p), D("x + x^3", 1, p), D("x + x^3 + x^4", 1, p)};
  CHECK(jet_determination(maps) == 4);
  const std::vector<JetDiffeo> dup{D("x + x^2", 1, p), D("x + x^2", 1, p)};
  CHECK_THROWS_AS(jet_determination(dup), DomainError);
}
