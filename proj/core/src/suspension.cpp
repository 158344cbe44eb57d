#include "gottcalc/suspension.hpp"

#include <sstream>

namespace gottcalc {
namespace {

void add_into(ShiftMultiset& acc, const ShiftMultiset& more) {
  for (const auto& [i, c] : more) acc[i] += c;
}

const std::vector<Degree>* lookup_declared(const DeclaredShifts& declared, const std::string& name) {
  auto it = declared.find(name);
  if (it == declared.end()) return nullptr;
  for (Degree i : it->second) {
    if (i < 1) throw DomainError("declared suspension shift for '" + name + "' must be at least 1");
  }
  return &it->second;
}

SphereSplitting split(const SpaceExpr& x, const DeclaredShifts& declared) {
  switch (x.kind()) {
    case SpaceKind::Sphere:
      return ShiftMultiset{{x.count(), 1}};
    case SpaceKind::Point:
      return ShiftMultiset{};
    case SpaceKind::Atom: {
      const auto* shifts = lookup_declared(declared, x.name());
      if (shifts == nullptr) return NotSplittable{x, "atom '" + x.name() + "' has no declared suspension splitting"};
      ShiftMultiset out;
      for (Degree i : *shifts) out[i] += 1;
      return out;
    }
    case SpaceKind::Wedge: {
      ShiftMultiset out;
      for (const auto& c : x.children()) {
        auto part = split(c, declared);
        if (!part.splittable()) return part;
        add_into(out, part.shifts());
      }
      return out;
    }
    case SpaceKind::Susp: {
      auto part = split(x.inner(), declared);
      if (!part.splittable()) return part;
      ShiftMultiset out;
      for (const auto& [i, c] : part.shifts()) out[i + x.count()] += c;
      return out;
    }
    case SpaceKind::Product: {
      ShiftMultiset acc;
      bool first = true;
      for (const auto& c : x.children()) {
        auto part = split(c, declared);
        if (!part.splittable()) return part;
        if (first) {
          acc = part.shifts();
          first = false;
          continue;
        }
        // sigma(A x B) ~ sigma A v sigma B v sigma(A ^ B)
        ShiftMultiset next = acc;
        add_into(next, part.shifts());
        for (const auto& [a, ca] : acc) {
          for (const auto& [b, cb] : part.shifts()) next[a + b] += ca * cb;
        }
        acc = std::move(next);
      }
      return acc;
    }
    case SpaceKind::Map:
      return NotSplittable{x, "mapping spaces are not known to split after suspension"};
    default:
      break;
  }
  throw std::logic_error("sphere_splitting on sugar node");
}

ShiftPolynomial poly(const SpaceExpr& x, const DeclaredShifts& declared) {
  auto minus_one = [](const ShiftPolynomial& p) {
    auto c = p.coefficients();
    c.erase(0);
    return c;
  };
  switch (x.kind()) {
    case SpaceKind::Sphere:
      return ShiftPolynomial::from_coefficients({{0, 1}, {x.count(), 1}});
    case SpaceKind::Point:
      return {};
    case SpaceKind::Atom: {
      const auto* shifts = lookup_declared(declared, x.name());
      if (shifts == nullptr) {
        throw NotSplittableError({x, "atom '" + x.name() + "' has no declared suspension splitting"});
      }
      std::map<Degree, BigInt> c{{0, 1}};
      for (Degree i : *shifts) c[i] += 1;
      return ShiftPolynomial::from_coefficients(std::move(c));
    }
    case SpaceKind::Wedge: {
      std::map<Degree, BigInt> c{{0, 1}};
      for (const auto& child : x.children()) {
        for (const auto& [i, v] : minus_one(poly(child, declared))) c[i] += v;
      }
      return ShiftPolynomial::from_coefficients(std::move(c));
    }
    case SpaceKind::Susp: {
      std::map<Degree, BigInt> c{{0, 1}};
      for (const auto& [i, v] : minus_one(poly(x.inner(), declared))) c[i + x.count()] += v;
      return ShiftPolynomial::from_coefficients(std::move(c));
    }
    case SpaceKind::Product: {
      ShiftPolynomial acc;
      for (const auto& child : x.children()) acc = acc * poly(child, declared);
      return acc;
    }
    case SpaceKind::Map:
      throw NotSplittableError({x, "mapping spaces are not known to split after suspension"});
    default:
      break;
  }
  throw std::logic_error("shift_polynomial on sugar node");
}

}  // namespace

ShiftPolynomial ShiftPolynomial::from_shifts(const ShiftMultiset& shifts) {
  std::map<Degree, BigInt> c{{0, 1}};
  for (const auto& [i, m] : shifts) {
    if (i < 1) throw DomainError("shifts must be at least 1");
    c[i] += m;
  }
  return from_coefficients(std::move(c));
}

ShiftPolynomial ShiftPolynomial::from_coefficients(std::map<Degree, BigInt> coeffs) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (it->first < 0) throw DomainError("shift polynomial degree must be non-negative");
    if (it->second < 0) throw DomainError("shift polynomial coefficients must be non-negative");
    it = it->second == 0 ? coeffs.erase(it) : std::next(it);
  }
  auto c0 = coeffs.find(0);
  if (c0 == coeffs.end() || c0->second != 1) throw DomainError("shift polynomial must have constant term 1");
  ShiftPolynomial p;
  p.coeffs_ = std::move(coeffs);
  return p;
}

BigInt ShiftPolynomial::coefficient(Degree i) const {
  auto it = coeffs_.find(i);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

BigInt ShiftPolynomial::value_at_one() const {
  BigInt sum = 0;
  for (const auto& [i, c] : coeffs_) sum += c;
  return sum;
}

ShiftMultiset ShiftPolynomial::shifts() const {
  ShiftMultiset out(std::next(coeffs_.begin()), coeffs_.end());
  return out;
}

ShiftPolynomial operator*(const ShiftPolynomial& a, const ShiftPolynomial& b) {
  std::map<Degree, BigInt> c;
  for (const auto& [i, x] : a.coeffs_) {
    for (const auto& [j, y] : b.coeffs_) c[i + j] += x * y;
  }
  ShiftPolynomial p;
  p.coeffs_ = std::move(c);
  return p;
}

std::string to_string(const ShiftPolynomial& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : p.coefficients()) {
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << 't';
    if (i != 1) os << '^' << i;
  }
  return os.str();
}

NotSplittableError::NotSplittableError(NotSplittable why)
    : DomainError("not splittable: " + why.reason + " (at " + to_string(why.blocker) + ")"), why_(std::move(why)) {}

SphereSplitting sphere_splitting(const SpaceExpr& x, const DeclaredShifts& declared) {
  return split(desugar(x), declared);
}

ShiftPolynomial shift_polynomial(const SpaceExpr& x, const DeclaredShifts& declared) {
  return poly(desugar(x), declared);
}

}  // namespace gottcalc
