#pragma once

#include <cstddef>
#include <vector>

#include "jetflow/jets/jet.hpp"
#include "jetflow/numeric/matrix.hpp"
#include "jetflow/series/multi_index.hpp"

namespace jetflow {

/// Induced linear operator on C_p[[x]] in the deglex monomial basis.
///
/// A function f = sum c_b x^b is the coordinate column c; the operator of a
/// diffeomorphism F maps it to the column of f o F. Column a of the matrix
/// therefore holds the coefficients of x^a o F, and
///   as_operator(F o G) == as_operator(G) * as_operator(F).
struct JetOperator {
  std::size_t nvars = 0;
  unsigned order = 0;
  Matrix matrix;

  std::size_t dimension() const noexcept { return matrix.rows(); }
  /// rho_{alpha,beta}: coefficient of x^beta in the image of x^alpha.
  const GaussianRational& rho(const MultiIndex& alpha, const MultiIndex& beta) const {
    return matrix(deglex_rank(beta), deglex_rank(alpha));
  }
  /// Image of the basis monomial with the given rank, as a series.
  TruncatedSeries image(std::size_t rank) const;
  /// Apply to a function.
  TruncatedSeries apply(const TruncatedSeries& f) const;

  friend bool operator==(const JetOperator&, const JetOperator&) = default;
};

JetOperator as_operator(const JetDiffeo& f);
JetOperator vf_as_operator(const JetVectorField& v);

/// Matrix in the same basis, wrapped; dimension must be C(n+p, n).
JetOperator make_operator(std::size_t nvars, unsigned order, Matrix m);

/// Components read off as the images of the coordinate functions.
JetDiffeo diffeo_from_operator(const JetOperator& op);
JetVectorField field_from_operator(const JetOperator& op);

/// True iff op is the operator of an algebra automorphism of C_p[[x]]:
/// op(1) = 1 and op(x^a x^b) = op(x^a) op(x^b) truncated, for all a, b. Since
/// monomials are products of coordinates this is decided by comparing with
/// the automorphism determined by the coordinate images.
bool is_algebra_automorphism(const JetOperator& op);
/// Same for derivations (Leibniz rule, op(1) = 0).
bool is_derivation(const JetOperator& op);

/// Eigenvalues of the linear part with algebraic multiplicity, in the
/// diagonal order when the linear part is lower-triangular. Throws
/// SpectrumError when the spectrum is not contained in Q(i).
std::vector<GaussianRational> linear_spectrum(const Matrix& linear_part);

/// Distinct eigenvalues of as_operator(F): the products lambda^alpha over
/// |alpha| <= p.
std::vector<GaussianRational> operator_eigenvalues(const JetDiffeo& f);
/// Distinct eigenvalues of vf_as_operator(V): the sums alpha . lambda.
std::vector<GaussianRational> operator_eigenvalues(const JetVectorField& v);

/// alpha . lambda for every alpha != 0 with |alpha| <= p in deglex order;
/// requires a lower-triangular linear part (DomainError otherwise).
std::vector<GaussianRational> jet_spectrum(const JetVectorField& v);

}  // namespace jetflow
