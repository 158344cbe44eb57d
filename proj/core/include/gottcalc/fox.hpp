#pragma once

#include "gottcalc/formal_sum.hpp"
#include "gottcalc/space_expr.hpp"

namespace gottcalc {

/// pi_i of the N-fold iterated free loop space: sum_r C(N, r) pi_{i+r}(y).
/// Only i >= 2; pi_1 is a semidirect product and is not represented.
FormalSum iterated_loop_homotopy(Degree i, int iterations, const SpaceExpr& y);

/// Fox-Gottlieb group G tau_n(y) = G_1(Lambda^{n-1} y), expanded over the
/// Gottlieb groups of y: sum_j C(n-1, j) G_{1+j}(y). For n = 1 this is G_1(y).
FormalSum fox_gottlieb(int n, const SpaceExpr& y);

}  // namespace gottcalc
