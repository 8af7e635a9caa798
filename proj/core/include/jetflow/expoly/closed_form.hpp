#pragma once

#include "jetflow/expoly/expoly.hpp"
#include "jetflow/jets/jet.hpp"

namespace jetflow {

/// e^{tA} for A = vf_as_operator(V), entries in C[e^{lambda t}, t]. V must
/// have a lower-triangular linear part (DomainError otherwise); the operator
/// is then lower-triangular and the flow is solved column by column.
ExpPolyMatrix flow_operator(const JetVectorField& v);

/// M(0) = I and dM/dt = A M, both checked exactly.
bool satisfies_flow_equation(const JetVectorField& v, const ExpPolyMatrix& m);

/// M(t) with M(m) = as_operator(F^m) for every integer m >= 0, entries in
/// C[lambda^t, t]. Requires the spectrum of the linear part in Q(i).
ExpPolyMatrix power_operator(const JetDiffeo& f);

/// True iff power_operator(F) has no positive t-powers, i.e. the jet is
/// semisimple.
bool semisimple_coefficient_check(const JetDiffeo& f);

}  // namespace jetflow
