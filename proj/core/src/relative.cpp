#include "gottcalc/relative.hpp"

#include "gottcalc/error.hpp"

namespace gottcalc {

RelativeResult relative_decompose(const MapProfile& f, Degree n, int m, int iterations) {
  if (n < 1) throw DomainError("degree must be at least 1, got " + std::to_string(n));
  if (m < 1) throw DomainError("bouquet width must be at least 1");
  if (iterations != 1 && iterations != 2) {
    throw DomainError("relative decomposition is only available for 1 or 2 iterations");
  }
  if (iterations == 2 && m != 1) {
    throw DomainError("the twice-iterated relative decomposition is only known for m = 1");
  }

  auto rel = [&](Degree d) {
    return f.is_identity ? Term::gottlieb(f.source, d) : Term::relative(f.name, d, f.target, f.source);
  };

  RelativeResult out;
  out.degree = n;
  out.structure = n >= 2 ? RelativeStructure::DirectSum : RelativeStructure::SplitExtension;
  out.summands.add(Term::gottlieb(f.source, n));
  if (iterations == 1) {
    out.summands.add(rel(n + 1), m);
  } else {
    out.summands.add(Term::gottlieb(f.source, n + 1), 2);
    out.summands.add(rel(n + 2));
  }
  return out;
}

}  // namespace gottcalc
