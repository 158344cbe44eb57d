#include <doctest.h>

#include <random>

#include "gottcalc/decompose.hpp"
#include "gottcalc/error.hpp"
#include "gottcalc/oracle.hpp"
#include "gottcalc/ranks.hpp"
#include "support.hpp"

using namespace gottcalc;
using gottcalc::testing::synthetic_space;

namespace {

SpaceProfile finite_space(std::string name, std::vector<BigInt> betti) {
  SpaceProfile p = synthetic_space(std::move(name), GradedGroup{});
  p.betti = std::move(betti);
  p.flags.finite = true;
  p.flags.simply_connected = true;
  return p;
}

SpaceProfile gamma_space(std::map<Degree, int> gamma, std::optional<Degree> bound) {
  SpaceProfile y = finite_space("Y", {1});
  GradedGroup g({}, bound);
  for (auto [d, r] : gamma) g.set(d, direct_sum(AbelianGroup::free(r), AbelianGroup::cyclic(2)));
  y.gottlieb = g;
  return y;
}

}  // namespace

TEST_CASE("gamma of map spaces") {
  auto y = gamma_space({{1, 0}, {2, 1}, {3, 1}}, 3);
  CHECK(gamma_of_map_space(finite_space("X", {1}), y, 2).value == 1);
  CHECK(gamma_of_map_space(finite_space("X", {1, 1}), y, 2).value == 2);

  auto y2 = gamma_space({{3, 2}, {4, 0}, {5, 1}}, std::nullopt);
  auto r = gamma_of_map_space(finite_space("X", {1, 0, 3}), y2, 3);
  CHECK(r.value == 5);
  CHECK(r.hypotheses_verified);
}

TEST_CASE("missing degrees make a partial answer") {
  auto y = gamma_space({{3, 1}, {4, 0}, {6, 1}}, std::nullopt);
  auto r = gamma_of_map_space(finite_space("X", {1, 0, 1, 0, 1}), y, 3);
  CHECK_FALSE(r.value.has_value());
  CHECK(r.missing_degrees == std::vector<Degree>{5, 7});
  CHECK(r.partial == 1);
  // gamma_5 is irrelevant when b_2 = 0
  CHECK(gamma_of_map_space(finite_space("X", {1, 1}), y, 3).value == 1);
}

TEST_CASE("hypotheses are enforced") {
  auto y = gamma_space({{2, 1}}, 2);
  auto x = finite_space("X", {1, 1});
  x.flags.finite.reset();
  CHECK_THROWS_AS(gamma_of_map_space(x, y, 2), HypothesisError);
  auto r = gamma_of_map_space(x, y, 2, true);
  CHECK(r.value == 1);
  CHECK_FALSE(r.hypotheses_verified);
  auto y_bad = y;
  y_bad.flags.simply_connected = false;
  CHECK_THROWS_AS(gamma_of_map_space(finite_space("X", {1}), y_bad, 2), HypothesisError);
  auto x_no_betti = finite_space("X", {});
  x_no_betti.betti.reset();
  CHECK_THROWS_AS(gamma_of_map_space(x_no_betti, y, 2), ProfileError);
}

TEST_CASE("top degree") {
  auto r = top_degree_report(finite_space("X", {1, 0, 0, 1}), gamma_space({{1, 0}, {2, 0}, {3, 1}}, 3));
  CHECK(r.top_degree == 3);
  CHECK(r.gamma_top == 1);
  CHECK(r.gamma_of_map_at_top == 1);

  auto zero = top_degree_report(finite_space("X", {1}), gamma_space({{1, 0}, {2, 0}}, 2));
  CHECK_FALSE(zero.top_degree.has_value());

  std::map<Degree, int> gamma;
  for (Degree d = 1; d <= 7; ++d) gamma[d] = 0;
  gamma[3] = 1;
  gamma[7] = 2;
  auto x = finite_space("X", {1, 1});
  auto y = gamma_space(gamma, 7);
  auto seven = top_degree_report(x, y);
  CHECK(seven.top_degree == 7);
  CHECK(seven.gamma_top == 2);
  CHECK(seven.gamma_of_map_at_top == 2);
  CHECK(gamma_of_map_space(x, y, 6).value == 2);

  CHECK_THROWS_AS(top_degree_report(x, gamma_space({{3, 1}}, std::nullopt)), ProfileError);
  auto gap = top_degree_report(x, gamma_space({{3, 1}}, 4));
  CHECK_FALSE(gap.missing_degrees.empty());
}

TEST_CASE("property: rank formula agrees with evaluated decompositions of sphere wedges") {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> dim(2, 6), count(1, 4), rank(0, 3);
  for (int i = 0; i < 100; ++i) {
    std::vector<SpaceExpr> spheres;
    std::vector<BigInt> betti(1, 1);
    for (int k = count(rng); k > 0; --k) {
      int p = dim(rng);
      spheres.push_back(SpaceExpr::sphere(p));
      if (betti.size() <= static_cast<std::size_t>(p)) betti.resize(p + 1, 0);
      betti[p] += 1;
    }
    auto x = SpaceExpr::wedge(spheres);
    std::map<Degree, int> gamma;
    for (Degree d = 1; d <= 12; ++d) gamma[d] = rank(rng);
    auto y = gamma_space(gamma, 12);
    ProfileDatabase db;
    db.add_space(y);
    for (Degree n = 1; n <= 5; ++n) {
      auto eval = evaluate(decompose(SpaceExpr::map(x, SpaceExpr::atom("Y")), n), db);
      REQUIRE(is_complete(eval));
      CHECK(gamma_of_map_space(finite_space("X", betti), y, n).value == std::get<AbelianGroup>(eval).rank());
    }
    auto top = top_degree_report(finite_space("X", betti), y);
    if (top.top_degree) CHECK(top.gamma_of_map_at_top == top.gamma_top);
  }
}

TEST_CASE("flag propagation") {
  auto y = finite_space("Y", {1});
  DeclaredShifts none;
  auto with = [&](std::optional<bool> g, std::optional<bool> t) {
    auto p = y;
    p.flags.g_space = g;
    p.flags.t_space = t;
    return p;
  };
  CHECK(propagate_flags(SpaceExpr::atom("B"), with(std::nullopt, true)).t_space == TriState::True);
  CHECK(propagate_flags(SpaceExpr::atom("B"), with(std::nullopt, true)).g_space == TriState::True);
  CHECK(propagate_flags(SpaceExpr::torus(2), with(true, std::nullopt)).g_space == TriState::True);
  CHECK(propagate_flags(SpaceExpr::atom("B"), with(true, std::nullopt)).g_space == TriState::Unknown);
  CHECK(propagate_flags(SpaceExpr::atom("B"), with(false, std::nullopt)).g_space == TriState::False);
  CHECK(propagate_flags(SpaceExpr::atom("B"), with(false, std::nullopt)).t_space == TriState::False);
  CHECK(propagate_flags(SpaceExpr::atom("B"), with(true, false)).t_space == TriState::False);
  CHECK(propagate_flags(SpaceExpr::atom("B"), with(std::nullopt, std::nullopt)).g_space == TriState::Unknown);
  CHECK(propagate_flags(SpaceExpr::atom("B"), with(true, true), {{"B", {3}}}).source_splits);
  CHECK(to_string(TriState::Unknown) == "unknown");
}

TEST_CASE("property: flag propagation is monotone") {
  const std::optional<bool> values[] = {std::nullopt, false, true};
  for (const auto& x : {SpaceExpr::torus(2), SpaceExpr::atom("B")}) {
    for (auto g : values)
      for (auto t : values) {
        if (g == false && t == true) continue;
        auto y = finite_space("Y", {1});
        y.flags.g_space = g;
        y.flags.t_space = t;
        auto base = propagate_flags(x, y);
        for (auto g2 : values)
          for (auto t2 : values) {
            if ((g && g2 != g) || (t && t2 != t)) continue;  // only refinements
            if (g2 == false && t2 == true) continue;
            auto refined = y;
            refined.flags.g_space = g2;
            refined.flags.t_space = t2;
            auto r = propagate_flags(x, refined);
            if (base.g_space != TriState::Unknown) CHECK(r.g_space == base.g_space);
            if (base.t_space != TriState::Unknown) CHECK(r.t_space == base.t_space);
          }
      }
  }
}

TEST_CASE("free loop necessary condition") {
  std::mt19937_64 rng(3);
  ProfileDatabase db;
  db.add_space(synthetic_space("Y", gottcalc::testing::random_table(rng, 8)));
  const auto& y = db.space("Y").gottlieb;
  auto e = gottlieb_table_of_map_space(SpaceExpr::sphere(1), "Y", 1, 8, db).table;
  CHECK(free_loop_necessary_condition(e, y, 1, 8).kind == VerdictKind::Pass);

  auto perturbed = e;
  perturbed.set(5, direct_sum(*e.lookup(5), AbelianGroup::cyclic(3)));
  auto fail = free_loop_necessary_condition(perturbed, y, 1, 8);
  CHECK(fail.kind == VerdictKind::Fail);
  CHECK(fail.failing_degree == 5);

  GradedGroup nontrivial({{1, AbelianGroup{}}, {2, AbelianGroup::free(1)}, {3, AbelianGroup{}}}, std::nullopt);
  auto own = free_loop_necessary_condition(nontrivial, nontrivial, 1, 2);
  CHECK(own.kind == VerdictKind::Fail);
  CHECK(own.failing_degree == 1);

  GradedGroup sparse({{1, AbelianGroup{}}}, std::nullopt);
  auto inc = free_loop_necessary_condition(sparse, sparse, 1, 2);
  CHECK(inc.kind == VerdictKind::Incomplete);
  CHECK_FALSE(inc.unknown_degrees.empty());
}
