#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gottcalc/abelian.hpp"
#include "gottcalc/error.hpp"
#include "gottcalc/space_expr.hpp"

namespace gottcalc {

/// Shift i -> multiplicity: the suspension splits as a wedge of spheres S^{i+1}.
using ShiftMultiset = std::map<Degree, BigInt>;

/// Atom name -> declared shifts (sigma X ~ wedge of S^{i+1}).
using DeclaredShifts = std::map<std::string, std::vector<Degree>, std::less<>>;

/// 1 + sum c_i t^i with c_i >= 0; c_i counts the summands G_{n+i}(Y).
class ShiftPolynomial {
 public:
  ShiftPolynomial() { coeffs_.emplace(0, 1); }

  static ShiftPolynomial from_shifts(const ShiftMultiset& shifts);
  /// Rejects c_0 != 1, negative coefficients and negative degrees.
  static ShiftPolynomial from_coefficients(std::map<Degree, BigInt> coeffs);

  /// Nonzero coefficients, including c_0 = 1.
  const std::map<Degree, BigInt>& coefficients() const noexcept { return coeffs_; }
  BigInt coefficient(Degree i) const;
  Degree degree() const noexcept { return coeffs_.rbegin()->first; }
  BigInt value_at_one() const;
  /// The shift multiset the polynomial encodes (drops the constant term).
  ShiftMultiset shifts() const;

  friend ShiftPolynomial operator*(const ShiftPolynomial& a, const ShiftPolynomial& b);
  friend bool operator==(const ShiftPolynomial&, const ShiftPolynomial&) = default;

 private:
  std::map<Degree, BigInt> coeffs_;
};

std::string to_string(const ShiftPolynomial& p);

struct NotSplittable {
  SpaceExpr blocker;
  std::string reason;
};

class NotSplittableError : public DomainError {
 public:
  explicit NotSplittableError(NotSplittable why);
  const NotSplittable& why() const noexcept { return why_; }

 private:
  NotSplittable why_;
};

/// Either the shift multiset {i_r} with sigma X ~ S^{i_1+1} v ... v S^{i_k+1},
/// or the subterm that blocks the splitting.
class SphereSplitting {
 public:
  SphereSplitting(ShiftMultiset shifts) : value_(std::move(shifts)) {}
  SphereSplitting(NotSplittable failure) : value_(std::move(failure)) {}

  bool splittable() const noexcept { return value_.index() == 0; }
  const ShiftMultiset& shifts() const { return std::get<ShiftMultiset>(value_); }
  const NotSplittable& failure() const { return std::get<NotSplittable>(value_); }

 private:
  std::variant<ShiftMultiset, NotSplittable> value_;
};

/// Multiset rules: sphere, point, wedge union, suspension shift, product
/// A u B u {a + b}, atoms from `declared`; maps never split. Sugar is expanded first.
SphereSplitting sphere_splitting(const SpaceExpr& x, const DeclaredShifts& declared = {});

/// Polynomial rules (multiplicative over products). Throws NotSplittableError.
ShiftPolynomial shift_polynomial(const SpaceExpr& x, const DeclaredShifts& declared = {});

}  // namespace gottcalc
