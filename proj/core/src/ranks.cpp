#include "gottcalc/ranks.hpp"

#include "gottcalc/error.hpp"

namespace gottcalc {
namespace {

void check_hypotheses(const SpaceProfile& x, const SpaceProfile& y, bool unchecked, bool& verified) {
  std::vector<std::string> problems;
  if (x.flags.finite != true) problems.push_back(x.name + " is not asserted finite");
  if (y.flags.finite != true) problems.push_back(y.name + " is not asserted finite");
  if (y.flags.simply_connected != true) problems.push_back(y.name + " is not asserted simply connected");
  verified = problems.empty();
  if (verified || unchecked) return;
  std::string msg = "rank formula hypotheses not met:";
  for (const auto& p : problems) msg += " " + p + ";";
  msg += " pass --unchecked-hypotheses to override";
  throw HypothesisError(msg);
}

const std::vector<BigInt>& betti_of(const SpaceProfile& x) {
  if (!x.betti) throw ProfileError("spaces." + x.name + ".betti", "Betti numbers are required for the rank formula");
  return *x.betti;
}

}  // namespace

std::string to_string(TriState t) {
  switch (t) {
    case TriState::True:
      return "true";
    case TriState::False:
      return "false";
    case TriState::Unknown:
      break;
  }
  return "unknown";
}

std::optional<BigInt> RankProfile::at(Degree d) const {
  if (auto it = gamma.find(d); it != gamma.end()) return it->second;
  if (zero_above && d > *zero_above) return BigInt(0);
  return std::nullopt;
}

RankProfile rank_profile(const GradedGroup& g) {
  RankProfile r;
  r.zero_above = g.zero_above();
  for (const auto& [d, grp] : g.entries()) r.gamma.emplace(d, grp.rank());
  return r;
}

RankResult gamma_of_map_space(const SpaceProfile& x, const SpaceProfile& y, Degree n, bool unchecked) {
  if (n < 1) throw DomainError("degree must be at least 1, got " + std::to_string(n));
  RankResult out;
  check_hypotheses(x, y, unchecked, out.hypotheses_verified);
  const auto& betti = betti_of(x);
  const RankProfile gamma = rank_profile(y.gottlieb);
  for (std::size_t i = 0; i < betti.size(); ++i) {
    const Degree d = n + static_cast<Degree>(i);
    auto g = gamma.at(d);
    if (!g) {
      // A zero Betti number makes the unknown harmless.
      if (betti[i] != 0) out.missing_degrees.push_back(d);
      continue;
    }
    out.partial += betti[i] * *g;
  }
  if (out.missing_degrees.empty()) out.value = out.partial;
  return out;
}

TopDegreeReport top_degree_report(const SpaceProfile& x, const SpaceProfile& y, bool unchecked) {
  TopDegreeReport out;
  check_hypotheses(x, y, unchecked, out.hypotheses_verified);
  const auto& bound = y.gottlieb.zero_above();
  if (!bound) {
    throw ProfileError("spaces." + y.name + ".gottlieb.zero_above", "top-degree report needs a vanishing bound");
  }
  const RankProfile gamma = rank_profile(y.gottlieb);
  for (Degree d = 1; d <= *bound; ++d) {
    if (!gamma.at(d)) out.missing_degrees.push_back(d);
  }
  if (!out.missing_degrees.empty()) return out;
  for (Degree d = *bound; d >= 1; --d) {
    if (*gamma.at(d) > 0) {
      out.top_degree = d;
      out.gamma_top = *gamma.at(d);
      break;
    }
  }
  if (out.top_degree) {
    auto at_top = gamma_of_map_space(x, y, *out.top_degree, true);
    out.gamma_of_map_at_top = at_top.value.value_or(0);
  }
  return out;
}

FlagReport propagate_flags(const SpaceExpr& x, const SpaceProfile& y, const DeclaredShifts& declared) {
  auto tri = [](const std::optional<bool>& b) {
    if (!b) return TriState::Unknown;
    return *b ? TriState::True : TriState::False;
  };
  TriState t = tri(y.flags.t_space);
  TriState g = tri(y.flags.g_space);
  // T-space implies G-space.
  if (t == TriState::True) g = TriState::True;
  if (g == TriState::False) t = TriState::False;

  FlagReport out;
  out.source_splits = sphere_splitting(x, declared).splittable();
  out.t_space = t;
  if (g == TriState::False) {
    out.g_space = TriState::False;
  } else if (t == TriState::True || (g == TriState::True && out.source_splits)) {
    out.g_space = TriState::True;
  } else {
    out.g_space = TriState::Unknown;
  }
  return out;
}

Verdict free_loop_necessary_condition(const GradedGroup& candidate, const GradedGroup& y, Degree lo, Degree hi) {
  if (lo < 1 || hi < lo) throw DomainError("degree range must satisfy 1 <= lo <= hi");
  Verdict v;
  for (Degree d = lo; d <= hi; ++d) {
    auto e = candidate.lookup(d);
    auto a = y.lookup(d);
    auto b = y.lookup(d + 1);
    if (!e || !a || !b) {
      v.unknown_degrees.push_back(d);
      continue;
    }
    if (*e != direct_sum(*a, *b)) {
      v.kind = VerdictKind::Fail;
      v.failing_degree = d;
      return v;
    }
  }
  if (!v.unknown_degrees.empty()) v.kind = VerdictKind::Incomplete;
  return v;
}

}  // namespace gottcalc
