#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gottcalc/profiles.hpp"

namespace gottcalc {

enum class TriState { False, True, Unknown };

std::string to_string(TriState t);

/// Gottlieb numbers gamma_d = rank G_d, with the same known/unknown semantics as the table.
struct RankProfile {
  std::map<Degree, BigInt> gamma;
  std::optional<Degree> zero_above;

  std::optional<BigInt> at(Degree d) const;
};

RankProfile rank_profile(const GradedGroup& g);

struct RankResult {
  /// Set when every needed gamma was known.
  std::optional<BigInt> value;
  /// Degrees of Y whose Gottlieb number is unknown.
  std::vector<Degree> missing_degrees;
  /// Sum of the contributions that were known.
  BigInt partial = 0;
  /// False when computed with the hypothesis check bypassed.
  bool hypotheses_verified = true;
};

/// gamma_n(map(X, Y; 0)) = sum_{i=0..dim X} b_i(X) gamma_{n+i}(Y) for finite X, Y
/// with Y simply connected. Throws HypothesisError unless the flags assert the
/// hypotheses or `unchecked` is set.
RankResult gamma_of_map_space(const SpaceProfile& x, const SpaceProfile& y, Degree n, bool unchecked = false);

struct TopDegreeReport {
  /// Highest degree N with gamma_N(Y) > 0; empty when every rank is zero.
  std::optional<Degree> top_degree;
  BigInt gamma_top = 0;
  /// gamma_N(map(X, Y; 0)) from the rank formula; equals gamma_top.
  BigInt gamma_of_map_at_top = 0;
  /// Degrees at or below the bound whose Gottlieb number is unknown; the report
  /// is only meaningful when this is empty.
  std::vector<Degree> missing_degrees;
  bool hypotheses_verified = true;
};

/// Requires Y's Gottlieb table to carry a zero_above bound.
TopDegreeReport top_degree_report(const SpaceProfile& x, const SpaceProfile& y, bool unchecked = false);

struct FlagReport {
  TriState g_space = TriState::Unknown;
  TriState t_space = TriState::Unknown;
  bool source_splits = false;
};

/// G-space / T-space status of map(x, Y; 0) from Y's flags. T-spaces pass to
/// (and back from) function spaces; G-spaces do when sigma x splits as a wedge
/// of spheres. map(x, Y; 0) retracts onto Y, so negative answers always pass.
FlagReport propagate_flags(const SpaceExpr& x, const SpaceProfile& y, const DeclaredShifts& declared = {});

enum class VerdictKind { Pass, Fail, Incomplete };

struct Verdict {
  VerdictKind kind = VerdictKind::Pass;
  std::optional<Degree> failing_degree;
  std::vector<Degree> unknown_degrees;
};

/// Checks G_d(E) = G_d(Y) + G_{d+1}(Y) for d in [lo, hi], a necessary condition
/// for E to be the free loop space of Y.
Verdict free_loop_necessary_condition(const GradedGroup& candidate, const GradedGroup& y, Degree lo, Degree hi);

}  // namespace gottcalc
