#pragma once

#include "gottcalc/formal_sum.hpp"
#include "gottcalc/profiles.hpp"

namespace gottcalc {

enum class RelativeStructure {
  DirectSum,       // n >= 2: split short exact sequence of abelian groups
  SplitExtension,  // n = 1: factors only, the extension is not determined
};

struct RelativeResult {
  Degree degree = 1;
  FormalSum summands;
  RelativeStructure structure = RelativeStructure::SplitExtension;

  friend bool operator==(const RelativeResult&, const RelativeResult&) = default;
};

/// Evaluation subgroups of the whisker map into the relative free (m-bouquet)
/// loop space of f: X -> Y.
///   N = 1: G_n(X) + m G_{n+1}(Y, X; f)
///   N = 2, m = 1: G_n(X) + 2 G_{n+1}(X) + G_{n+2}(Y, X; f)
/// Other (m, N) combinations are rejected. Relative terms of an identity map
/// are reported as Gottlieb groups of X.
RelativeResult relative_decompose(const MapProfile& f, Degree n, int m = 1, int iterations = 1);

}  // namespace gottcalc
