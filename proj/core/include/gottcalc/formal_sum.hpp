#pragma once

#include <compare>
#include <map>
#include <string>

#include "gottcalc/abelian.hpp"
#include "gottcalc/space_expr.hpp"

namespace gottcalc {

enum class TermKind {
  Gottlieb,     // G_d(Y)
  Homotopy,     // pi_d(Y)
  Relative,     // G_d(Y, X; f)
  GenGottlieb,  // generalized Gottlieb group of sigma^k B in Y, left unexpanded
};

/// One summand of a FormalSum. Spaces are held by canonical text so that terms
/// order and compare deterministically.
struct Term {
  TermKind kind = TermKind::Gottlieb;
  /// Space for Gottlieb/Homotopy, map name for Relative, suspended source for GenGottlieb.
  std::string space;
  /// Degree, or the suspension count k for GenGottlieb.
  Degree degree = 1;
  /// Relative: target space Y. GenGottlieb: target space.
  std::string target;
  /// Relative: source space X.
  std::string source;

  static Term gottlieb(std::string space, Degree d);
  static Term homotopy(std::string space, Degree d);
  static Term relative(std::string map_name, Degree d, std::string target, std::string source);
  static Term generalized(const SpaceExpr& source, Degree suspensions, const SpaceExpr& target);

  auto operator<=>(const Term&) const = default;
};

/// "G[3](Y)", "pi[3](Y)", "G[4](Y,X;f)", "Gen[Σ^2 B -> Y]".
std::string to_string(const Term& t);

/// Multiset of terms with positive multiplicities; a symbolic direct sum.
class FormalSum {
 public:
  FormalSum() = default;

  void add(const Term& t, const BigInt& multiplicity = 1);
  FormalSum& operator+=(const FormalSum& other);
  /// Every multiplicity multiplied by `factor` (0 clears the sum).
  FormalSum scaled(const BigInt& factor) const;

  const std::map<Term, BigInt>& terms() const noexcept { return terms_; }
  BigInt multiplicity(const Term& t) const;
  bool empty() const noexcept { return terms_.empty(); }
  bool has_residuals() const;

  friend bool operator==(const FormalSum&, const FormalSum&) = default;

 private:
  std::map<Term, BigInt> terms_;
};

FormalSum operator+(FormalSum a, const FormalSum& b);

/// Terms in canonical order joined by " + ", multiplicity prefix "k*" when k > 1; "0" if empty.
std::string to_string(const FormalSum& s);

}  // namespace gottcalc
