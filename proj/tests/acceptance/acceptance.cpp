// Acceptance suite: one PASS/FAIL line per criterion; exit status is the number of failures.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "gottcalc/decompose.hpp"
#include "gottcalc/error.hpp"
#include "gottcalc/fox.hpp"
#include "gottcalc/oracle.hpp"
#include "gottcalc/profiles.hpp"
#include "gottcalc/ranks.hpp"
#include "gottcalc/relative.hpp"
#include "../support.hpp"

using namespace gottcalc;
using gottcalc::testing::random_group;
using gottcalc::testing::random_table;
using gottcalc::testing::synthetic_space;

namespace {

// Every comparison below is exact (integers and canonical groups): the tolerance is zero.
constexpr int kTolerance = 0;

// Corpus sizes and parameter grids.
constexpr int kRandomProducts = 200;
constexpr int kMaxFactors = 3;
constexpr int kMaxShift = 6;
constexpr int kRankPairs = 100;
constexpr int kAbelianTriples = 10000;
constexpr int kCrtPairs = 1000;
constexpr int kFuzzedExpressions = 1000;
constexpr int kFoxTables = 12;
constexpr std::uint64_t kSeed = 20240601;

const SpaceExpr Y = SpaceExpr::atom("Y");

/// Collects the first few mismatches of one criterion.
class Check {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 3) detail_ << (failures_ > 1 ? "; " : "") << what();
  }
  bool passed() const { return failures_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failures_ > 0) s << ", " << failures_ << " failed: " << detail_.str();
    return s.str();
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::ostringstream detail_;
};

FormalSum gottlieb_sum(const std::string& y, const std::map<Degree, BigInt>& coefficients, Degree n) {
  FormalSum s;
  for (const auto& [i, c] : coefficients)
    if (c != 0) s.add(Term::gottlieb(y, n + i), c);
  return s;
}

/// Row N of Pascal's triangle by repeated addition.
std::vector<BigInt> pascal_row(int N) {
  std::vector<BigInt> row{1};
  for (int k = 0; k < N; ++k) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row;
}

std::string text(const FormalSum& s) { return to_string(s); }

// ---------------------------------------------------------------------------

Check free_loop_prototype() {
  Check c;
  for (Degree n = 1; n <= 10; ++n) {
    FormalSum expected;
    expected.add(Term::gottlieb("Y", n));
    expected.add(Term::gottlieb("Y", n + 1));
    auto got = decompose(parse("map(S1, Y)"), n);
    c.expect(got == expected, [&] { return "n=" + std::to_string(n) + ": " + text(got); });
  }
  return c;
}

Check binomial_closed_form() {
  Check c;
  for (int m = 1; m <= 4; ++m)
    for (int N = 1; N <= 10; ++N) {
      auto row = pascal_row(N);
      auto recursion = recursive_bouquet_coefficients(m, N);
      for (Degree n = 1; n <= 5; ++n) {
        auto closed = closed_form_bouquet(m, N, n, Y);
        auto desugared = decompose(desugar(SpaceExpr::bouquet_space(Y, m, N)), n);
        auto tag = [&] { return "m=" + std::to_string(m) + " N=" + std::to_string(N) + " n=" + std::to_string(n); };
        c.expect(closed == desugared, tag);
        c.expect(closed == gottlieb_sum("Y", recursion.coefficients(), n), tag);
        BigInt mj = 1;
        for (int j = 0; j <= N; ++j, mj *= m)
          c.expect(closed.multiplicity(Term::gottlieb("Y", n + j)) - mj * row[j] == kTolerance, tag);
        c.expect(closed.terms().size() == static_cast<std::size_t>(N + 1), tag);
      }
    }
  return c;
}

struct ProductCase {
  std::vector<SpaceExpr> factors;
  std::vector<std::vector<Degree>> shifts;
};

std::vector<ProductCase> product_corpus() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> factors(1, kMaxFactors), spheres(1, 3), dim(1, kMaxShift);
  std::vector<ProductCase> corpus;
  for (int i = 0; i < kRandomProducts; ++i) {
    ProductCase pc;
    for (int f = factors(rng); f > 0; --f) {
      std::vector<SpaceExpr> wedge;
      std::vector<Degree> shifts;
      for (int s = spheres(rng); s > 0; --s) {
        int p = dim(rng);
        wedge.push_back(SpaceExpr::sphere(p));
        shifts.push_back(p);
      }
      pc.factors.push_back(wedge.size() == 1 ? wedge.front() : SpaceExpr::wedge(wedge));
      pc.shifts.push_back(shifts);
    }
    corpus.push_back(std::move(pc));
  }
  return corpus;
}

Check multi_index_products(const std::vector<ProductCase>& corpus) {
  Check c;
  for (const auto& pc : corpus) {
    auto x = SpaceExpr::product(pc.factors);
    auto poly = shift_polynomial(x);
    auto tuples = enumerate_tuple_shifts(pc.shifts);
    c.expect(poly == tuples, [&] { return to_string(x) + ": " + to_string(poly) + " vs " + to_string(tuples); });
    for (Degree n = 1; n <= 3; ++n) {
      auto got = decompose(SpaceExpr::map(x, Y), n);
      c.expect(got == gottlieb_sum("Y", tuples.coefficients(), n), [&] { return to_string(x) + ": " + text(got); });
    }
  }
  return c;
}

Check currying_invariance(const std::vector<ProductCase>& corpus) {
  Check c;
  for (const auto& pc : corpus) {
    // every split point: prod(A, B) with A the first k factors
    for (std::size_t k = 1; k <= pc.factors.size(); ++k) {
      std::vector<SpaceExpr> a(pc.factors.begin(), pc.factors.begin() + k);
      std::vector<SpaceExpr> b(pc.factors.begin() + k, pc.factors.end());
      auto A = a.size() == 1 ? a.front() : SpaceExpr::product(a);
      auto B = b.empty() ? SpaceExpr::point() : b.size() == 1 ? b.front() : SpaceExpr::product(b);
      for (Degree n = 1; n <= 5; ++n) {
        auto lhs = decompose(SpaceExpr::map(SpaceExpr::product({A, B}), Y), n);
        auto rhs = decompose(SpaceExpr::map(A, SpaceExpr::map(B, Y)), n);
        c.expect(lhs == rhs, [&] { return to_string(A) + " | " + to_string(B) + ": " + text(lhs) + " vs " + text(rhs); });
      }
    }
  }
  return c;
}

Check three_sphere_wedge_example() {
  Check c;
  auto w = parse("wedge(S2, S2, S2)");
  for (int N = 1; N <= 8; ++N) {
    auto row = pascal_row(N);
    auto x = SpaceExpr::product(std::vector<SpaceExpr>(N, w));
    for (Degree n = 1; n <= 3; ++n) {
      auto got = decompose(SpaceExpr::map(x, Y), n);
      BigInt three_j = 1;
      FormalSum expected;
      for (int j = 0; j <= N; ++j, three_j *= 3) expected.add(Term::gottlieb("Y", n + 2 * j), three_j * row[j]);
      c.expect(got == expected, [&] { return "N=" + std::to_string(N) + ": " + text(got); });
    }
  }
  return c;
}

Check two_cell_example() {
  Check c;
  auto db = load_profiles(R"({"spaces": {"X": {"suspension_shifts": [5, 10]}, "Y": {}}})");
  for (Degree n = 1; n <= 5; ++n) {
    FormalSum expected;
    for (Degree s : {0, 5, 10}) expected.add(Term::gottlieb("Y", n + s));
    auto got = decompose(parse("map(X, Y)"), n, db.declared_shifts());
    c.expect(got == expected, [&] { return "n=" + std::to_string(n) + ": " + text(got); });
  }
  return c;
}

Check fox_consistency() {
  Check c;
  std::mt19937_64 rng(kSeed + 7);
  for (int t = 0; t < kFoxTables; ++t) {
    ProfileDatabase db;
    db.add_space(synthetic_space("Y", random_table(rng, 12)));
    auto derived = gottlieb_table_of_map_space(SpaceExpr::sphere(1), "Y", 1, 12, db);
    c.expect(derived.unresolved.empty(), [] { return std::string("derived loop table incomplete"); });
    auto with_loop = db.with_space(synthetic_space("LY", derived.table));
    for (int n = 2; n <= 8; ++n) {
      auto direct = evaluate(fox_gottlieb(n, Y), db);
      auto shifted = evaluate(fox_gottlieb(n - 1, SpaceExpr::atom("LY")), with_loop);
      c.expect(is_complete(direct) && direct == shifted,
               [&] { return "table " + std::to_string(t) + " n=" + std::to_string(n); });
    }
  }
  for (int N = 1; N <= 10; ++N) {
    auto row = pascal_row(N);
    for (Degree i = 2; i <= 4; ++i) {
      auto s = iterated_loop_homotopy(i, N, Y);
      FormalSum expected;
      for (int r = 0; r <= N; ++r) expected.add(Term::homotopy("Y", i + r), row[r]);
      c.expect(s == expected, [&] { return "N=" + std::to_string(N) + ": " + text(s); });
    }
  }
  return c;
}

Check relative_identities() {
  Check c;
  MapProfile f;
  f.name = "f";
  f.source = "X";
  f.target = "Y";
  for (Degree n = 1; n <= 6; ++n) {
    for (int m = 1; m <= 4; ++m) {
      FormalSum expected;
      expected.add(Term::gottlieb("X", n));
      expected.add(Term::relative("f", n + 1, "Y", "X"), m);
      auto r = relative_decompose(f, n, m, 1);
      c.expect(r.summands == expected, [&] { return text(r.summands); });
      c.expect(r.structure == (n == 1 ? RelativeStructure::SplitExtension : RelativeStructure::DirectSum),
               [&] { return "structure at n=" + std::to_string(n); });
    }
    FormalSum expected2;
    expected2.add(Term::gottlieb("X", n));
    expected2.add(Term::gottlieb("X", n + 1), 2);
    expected2.add(Term::relative("f", n + 2, "Y", "X"));
    auto r2 = relative_decompose(f, n, 1, 2);
    c.expect(r2.summands == expected2, [&] { return text(r2.summands); });
  }
  MapProfile id;
  id.name = "id";
  id.source = "Y";
  id.target = "Y";
  id.is_identity = true;
  for (Degree n = 2; n <= 8; ++n) {
    for (int m = 1; m <= 4; ++m) {
      auto got = relative_decompose(id, n, m, 1).summands;
      auto expected = decompose(SpaceExpr::bouquet_space(Y, m, 1), n);
      c.expect(got == expected, [&] { return text(got) + " vs " + text(expected); });
    }
    auto got2 = relative_decompose(id, n, 1, 2).summands;
    c.expect(got2 == decompose(SpaceExpr::loop(Y, 2), n), [&] { return text(got2); });
  }
  return c;
}

SpaceProfile finite(std::string name, std::vector<BigInt> betti, GradedGroup gottlieb = {}) {
  auto p = synthetic_space(std::move(name), std::move(gottlieb));
  p.betti = std::move(betti);
  p.flags.finite = true;
  p.flags.simply_connected = true;
  return p;
}

void check_top_degree(Check& c, const SpaceProfile& x, const SpaceProfile& y) {
  auto r = top_degree_report(x, y);
  if (!r.missing_degrees.empty()) return;  // not fully known: nothing is asserted
  if (!r.top_degree) return;
  auto direct = gamma_of_map_space(x, y, *r.top_degree);
  c.expect(direct.value == r.gamma_top && r.gamma_of_map_at_top == r.gamma_top,
           [&] { return y.name + " top degree " + std::to_string(*r.top_degree); });
  // nothing of positive rank above the top degree
  for (Degree d = *r.top_degree + 1; d <= *r.top_degree + 3; ++d)
    c.expect(gamma_of_map_space(x, y, d).value == 0, [&] { return y.name + " above top"; });
}

Check rank_formula() {
  Check c;
  std::mt19937_64 rng(kSeed + 9);
  std::uniform_int_distribution<int> dim(2, 7), count(1, 4), rank(0, 2), top(3, 12);
  for (int i = 0; i < kRankPairs; ++i) {
    std::vector<SpaceExpr> spheres;
    std::vector<BigInt> betti{1};
    for (int k = count(rng); k > 0; --k) {
      int p = dim(rng);
      spheres.push_back(SpaceExpr::sphere(p));
      if (betti.size() <= static_cast<std::size_t>(p)) betti.resize(p + 1, 0);
      betti[p] += 1;
    }
    Degree bound = top(rng);
    GradedGroup g({}, bound);
    for (Degree d = 1; d <= bound; ++d) g.set(d, direct_sum(AbelianGroup::free(rank(rng)), random_group(rng, 1)));
    auto y = finite("Y", {1}, g);
    auto x = finite("X", betti);
    ProfileDatabase db;
    db.add_space(y);
    for (Degree n = 1; n <= 6; ++n) {
      auto eval = evaluate(decompose(SpaceExpr::map(SpaceExpr::wedge(spheres), Y), n), db);
      auto formula = gamma_of_map_space(x, y, n);
      c.expect(is_complete(eval) && formula.value == std::get<AbelianGroup>(eval).rank(),
               [&] { return "pair " + std::to_string(i) + " n=" + std::to_string(n); });
    }
    check_top_degree(c, x, y);
  }
  // shipped fixtures with a declared bound
  for (const auto& entry : std::filesystem::directory_iterator(GOTTCALC_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ProfileDatabase db;
    try {
      db = load_profiles_file(entry.path());
    } catch (const ProfileError&) {
      continue;  // deliberately malformed fixtures
    }
    for (const auto& [name, y] : db.spaces()) {
      if (!y.gottlieb.zero_above()) continue;
      auto yy = y;
      yy.flags.finite = true;
      yy.flags.simply_connected = true;
      for (const auto& x : {finite("pt", {1}), finite("X", {1, 1}), finite("X", {1, 0, 2, 1})}) check_top_degree(c, x, yy);
    }
  }
  return c;
}

Check algebra_kernel() {
  Check c;
  std::mt19937_64 rng(kSeed + 11);
  std::uniform_int_distribution<std::uint64_t> order(2, 360);
  for (int i = 0; i < kAbelianTriples; ++i) {
    auto a = random_group(rng, 3, 360), b = random_group(rng, 3, 360), d = random_group(rng, 3, 360);
    c.expect(direct_sum(a, b) == direct_sum(b, a), [&] { return to_string(a) + " , " + to_string(b); });
    c.expect(direct_sum(direct_sum(a, b), d) == direct_sum(a, direct_sum(b, d)), [&] { return to_string(a); });
    // canonical uniqueness: presentations of the same group agree, including printed form
    auto f = invariant_factors(a);
    std::vector<BigInt> shuffled(f.rbegin(), f.rend());
    auto again = canonicalize(a.rank(), shuffled);
    c.expect(again == a && to_string(again) == to_string(a), [&] { return to_string(a); });
    c.expect(parse_group(to_string(a)) == a, [&] { return to_string(a); });
    c.expect(canonicalize(0, f).torsion() == a.torsion(), [&] { return "round-trip " + to_string(a); });
    c.expect(rank(direct_sum(a, b)) == rank(a) + rank(b), [&] { return to_string(a); });
  }
  int pairs = 0;
  while (pairs < kCrtPairs) {
    auto m = order(rng) * order(rng), n = order(rng);
    if (std::gcd(m, n) != 1) continue;
    ++pairs;
    c.expect(AbelianGroup::cyclic(BigInt(m) * n) == canonicalize(0, std::vector<BigInt>{m, n}),
             [&] { return std::to_string(m) + "," + std::to_string(n); });
  }
  return c;
}

Check round_trips() {
  Check c;
  std::mt19937_64 rng(kSeed + 13);
  for (int i = 0; i < kFuzzedExpressions; ++i) {
    auto e = random_expression(rng, 4);
    auto printed = to_string(e);
    auto back = parse(printed);
    c.expect(back == e && to_string(back) == printed, [&] { return printed; });
  }
  std::vector<ProfileDatabase> dbs;
  for (const auto& entry : std::filesystem::directory_iterator(GOTTCALC_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    try {
      dbs.push_back(load_profiles_file(entry.path()));
    } catch (const ProfileError&) {
    }
  }
  for (int i = 0; i < 50; ++i) {
    ProfileDatabase db;
    auto y = synthetic_space("Y", random_table(rng, 6));
    y.betti = std::vector<BigInt>{1, 0, BigInt(i)};
    y.suspension_shifts = std::vector<Degree>{1, 3};
    y.flags.finite = i % 2 == 0;
    db.add_space(y);
    MapProfile f;
    f.name = "f";
    f.source = "Y";
    f.target = "Y";
    f.relative_gottlieb = random_table(rng, 3);
    db.add_map(f);
    dbs.push_back(db);
  }
  for (const auto& db : dbs) {
    auto saved = save_profiles(db);
    auto back = load_profiles(saved);
    c.expect(back == db && save_profiles(back) == saved, [&] { return saved.substr(0, 80); });
  }
  return c;
}

Check flag_propagation() {
  Check c;
  using T = TriState;
  struct Row {
    std::optional<bool> g, t;
    bool splits;
    T g_map, t_map;
  };
  const std::optional<bool> U;
  // T-spaces pass both ways; G-spaces pass forward only when the source splits,
  // backward always (Y is a retract of the function space).
  const Row table[] = {
      {U, U, true, T::Unknown, T::Unknown},     {U, U, false, T::Unknown, T::Unknown},
      {U, false, true, T::Unknown, T::False},   {U, false, false, T::Unknown, T::False},
      {U, true, true, T::True, T::True},        {U, true, false, T::True, T::True},
      {false, U, true, T::False, T::False},     {false, U, false, T::False, T::False},
      {false, false, true, T::False, T::False}, {false, false, false, T::False, T::False},
      {true, U, true, T::True, T::Unknown},     {true, U, false, T::Unknown, T::Unknown},
      {true, false, true, T::True, T::False},   {true, false, false, T::Unknown, T::False},
      {true, true, true, T::True, T::True},     {true, true, false, T::True, T::True},
  };
  const auto splittable = SpaceExpr::torus(2);
  const auto opaque = SpaceExpr::atom("B");
  for (const auto& row : table) {
    auto y = finite("Y", {1});
    y.flags.g_space = row.g;
    y.flags.t_space = row.t;
    auto r = propagate_flags(row.splits ? splittable : opaque, y);
    c.expect(r.g_space == row.g_map && r.t_space == row.t_map && r.source_splits == row.splits, [&] {
      return "g=" + (row.g ? std::to_string(*row.g) : std::string("?")) +
             " t=" + (row.t ? std::to_string(*row.t) : std::string("?")) + " split=" + std::to_string(row.splits) +
             " -> " + to_string(r.g_space) + "/" + to_string(r.t_space);
    });
  }
  // a declared atom counts as splittable
  auto y = finite("Y", {1});
  y.flags.g_space = true;
  c.expect(propagate_flags(opaque, y, {{"B", {2, 4}}}).g_space == T::True, [] { return std::string("declared atom"); });
  return c;
}

}  // namespace

int main() {
  const auto corpus = product_corpus();
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"free-loop prototype G_n(map(S1,Y)) = G_n + G_{n+1}, n = 1..10", free_loop_prototype},
      {"bouquet closed form m^j C(N,j) vs desugared recursion and oracle", binomial_closed_form},
      {"multi-index product formula on 200 random sphere-wedge products", [&] { return multi_index_products(corpus); }},
      {"currying invariance on the same corpus", [&] { return currying_invariance(corpus); }},
      {"three-sphere wedge product coefficients 3^j C(N,j) at shift 2j", three_sphere_wedge_example},
      {"two-cell complex with shifts {5, 10}", two_cell_example},
      {"Fox stability and iterated loop homotopy coefficients", fox_consistency},
      {"relative identities and identity-map reduction", relative_identities},
      {"rank formula and top-degree reports", rank_formula},
      {"abelian group kernel laws, round-trips and CRT", algebra_kernel},
      {"parse/print and profile save/load round-trips", round_trips},
      {"flag propagation truth table", flag_propagation},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [title, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Check result;
    std::string error;
    try {
      result = run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && result.passed();
    if (!ok) ++failures;
    std::cout << "criterion " << index << ": " << (ok ? "PASS" : "FAIL") << "  " << title << " ("
              << (error.empty() ? result.summary() : "exception: " + error) << ", " << ms << " ms)\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures;
}
