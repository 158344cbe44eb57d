#include "gottcalc/fox.hpp"

#include "gottcalc/decompose.hpp"
#include "gottcalc/error.hpp"

namespace gottcalc {

FormalSum iterated_loop_homotopy(Degree i, int iterations, const SpaceExpr& y) {
  if (i < 2) throw DomainError("iterated loop homotopy needs degree i >= 2 (pi_1 is a semidirect product)");
  if (iterations < 1) throw DomainError("iteration count must be at least 1");
  const std::string name = to_string(y);
  FormalSum s;
  for (int r = 0; r <= iterations; ++r) s.add(Term::homotopy(name, i + r), binomial(iterations, r));
  return s;
}

FormalSum fox_gottlieb(int n, const SpaceExpr& y) {
  if (n < 1) throw DomainError("Fox-Gottlieb index must be at least 1");
  if (n == 1) return decompose(y, 1);
  return decompose(SpaceExpr::loop(y, n - 1), 1);
}

}  // namespace gottcalc
