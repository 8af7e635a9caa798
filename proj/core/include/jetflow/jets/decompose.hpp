#pragma once

#include <span>

#include "jetflow/jets/jet.hpp"
#include "jetflow/jets/operator.hpp"
#include "jetflow/numeric/matrix.hpp"

namespace jetflow {

struct JordanChevalley {
  Matrix semisimple;
  Matrix nilpotent;
};

/// Additive Jordan-Chevalley decomposition M = S + N by Newton iteration on
/// the squarefree part of the characteristic polynomial. Throws
/// SpectrumError when the spectrum is not contained in Q(i).
JordanChevalley jordan_chevalley(const Matrix& m);
/// Same, with the distinct eigenvalues of m supplied by the caller.
JordanChevalley jordan_chevalley(const Matrix& m, std::span<const GaussianRational> eigenvalues);

struct MultiplicativeJordan {
  JetDiffeo semisimple;
  JetDiffeo unipotent;
};

/// F = F_ss o F_u with commuting factors, F_u unipotent.
MultiplicativeJordan multiplicative_jordan(const JetDiffeo& f);

/// Time-one map of V; the linear part of V must be nilpotent.
JetDiffeo exp_vf(const JetVectorField& v);
/// Inverse of exp_vf on diffeomorphisms with unipotent linear part.
JetVectorField log_unipotent(const JetDiffeo& f);

}  // namespace jetflow
