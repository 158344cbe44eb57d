#pragma once

#include "gottcalc/formal_sum.hpp"
#include "gottcalc/suspension.hpp"

namespace gottcalc {

/// Expresses G_n(e) as a formal sum of Gottlieb groups of the spaces at the
/// leaves of `e`, plus residual generalized Gottlieb groups for sources that do
/// not split after one suspension.
///
/// Rules, applied syntax-directed until no Map node remains:
///   - a non-map space Y contributes G_n(Y) (nothing for pt);
///   - map(prod(X1, ..., Xk), Y) is curried to map(X1, map(prod(X2, ..., Xk), Y));
///   - map(pt, Y) is Y;
///   - map(X, Y) with sigma X ~ v S^{i_r + 1} gives G_n(Y) + sum_r G_{n+i_r}(Y);
///   - otherwise G_n(Y) + Gen[sigma^n X -> Y] (sigma^{n+k} B when X = susp(B, k)).
///
/// Sugar is expanded first. Throws DomainError when n < 1.
FormalSum decompose(const SpaceExpr& e, Degree n, const DeclaredShifts& declared = {});

/// G_n of the N-fold iterated free m-bouquet space of `target`:
/// sum_{j=0..N} m^j C(N, j) G_{n+j}(target), straight from the closed form.
FormalSum closed_form_bouquet(int m, int iterations, Degree n, const SpaceExpr& target);

/// C(n, k), zero outside 0 <= k <= n.
BigInt binomial(std::int64_t n, std::int64_t k);

}  // namespace gottcalc
