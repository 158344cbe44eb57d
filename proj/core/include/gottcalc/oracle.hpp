#pragma once

#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gottcalc/formal_sum.hpp"
#include "gottcalc/suspension.hpp"

namespace gottcalc {

/// (1 + m t)^N built by N explicit multiplications of the coefficient vector.
ShiftPolynomial recursive_bouquet_coefficients(int m, int iterations);

/// Shift polynomial of a product X_1 x ... x X_N where sigma X_i splits with
/// shifts factor_shifts[i], by listing every r-tuple of factors i_1 < ... < i_r
/// with one shift chosen from each.
ShiftPolynomial enumerate_tuple_shifts(const std::vector<std::vector<Degree>>& factor_shifts);

/// Evaluates G_n(e) choosing uniformly among the admissible rewrites at every
/// mapping space: curry out any product factor, or split the whole source at once.
FormalSum randomized_decompose(const SpaceExpr& e, Degree n, std::mt19937_64& rng,
                               const DeclaredShifts& declared = {});

enum class Strategy {
  Deterministic,
  RandomizedOrder,
  ClosedForm,
  Polynomial,
  Recursion,
  DerivedProfile,
};

std::string to_string(Strategy s);
std::vector<Strategy> all_strategies();

using DecomposeEngine = std::function<FormalSum(const SpaceExpr&, Degree, const DeclaredShifts&)>;

struct CrosscheckOptions {
  DeclaredShifts declared;
  /// Engine under test; defaults to decompose().
  DecomposeEngine engine;
  std::uint64_t seed = 0x5eed;
};

struct CheckEntry {
  Strategy candidate = Strategy::Deterministic;
  Degree lo = 1;
  Degree hi = 1;
  bool applicable = true;
  bool passed = true;
  std::string counterexample;
};

struct CheckReport {
  std::string expression;
  std::vector<CheckEntry> entries;

  bool passed() const;
  std::string to_text() const;
};

/// Compares the deterministic engine against each requested strategy on every
/// degree in [lo, hi]. Strategies that do not apply to `expr` are reported as such.
CheckReport crosscheck(const SpaceExpr& expr, Degree lo, Degree hi, std::span<const Strategy> strategies,
                       const CrosscheckOptions& options = {});

/// Random source whose suspension splits: spheres, wedges, products, suspensions,
/// tori and bouquets. Depth counts nested constructors.
SpaceExpr random_splittable_source(std::mt19937_64& rng, int depth, int max_shift = 6);

/// Random query expression map(...)/loop/bloop over atom "Y" with splittable sources.
SpaceExpr random_query(std::mt19937_64& rng, int depth, int max_shift = 4);

/// Random well-formed tree of any node kind (parser fuzzing).
SpaceExpr random_expression(std::mt19937_64& rng, int depth);

}  // namespace gottcalc
