#include "gottcalc/formal_sum.hpp"

#include "gottcalc/error.hpp"

namespace gottcalc {

Term Term::gottlieb(std::string space, Degree d) { return {TermKind::Gottlieb, std::move(space), d, {}, {}}; }

Term Term::homotopy(std::string space, Degree d) { return {TermKind::Homotopy, std::move(space), d, {}, {}}; }

Term Term::relative(std::string map_name, Degree d, std::string target, std::string source) {
  return {TermKind::Relative, std::move(map_name), d, std::move(target), std::move(source)};
}

Term Term::generalized(const SpaceExpr& source, Degree suspensions, const SpaceExpr& target) {
  return {TermKind::GenGottlieb, to_string(source), suspensions, to_string(target), {}};
}

std::string to_string(const Term& t) {
  const std::string d = std::to_string(t.degree);
  switch (t.kind) {
    case TermKind::Gottlieb:
      return "G[" + d + "](" + t.space + ")";
    case TermKind::Homotopy:
      return "pi[" + d + "](" + t.space + ")";
    case TermKind::Relative:
      return "G[" + d + "](" + t.target + "," + t.source + ";" + t.space + ")";
    case TermKind::GenGottlieb:
      return "Gen[Σ^" + d + " " + t.space + " -> " + t.target + "]";
  }
  return {};
}

void FormalSum::add(const Term& t, const BigInt& multiplicity) {
  if (multiplicity < 0) throw DomainError("multiplicities must be non-negative");
  if (multiplicity == 0) return;
  terms_[t] += multiplicity;
}

FormalSum& FormalSum::operator+=(const FormalSum& other) {
  for (const auto& [t, m] : other.terms_) terms_[t] += m;
  return *this;
}

FormalSum FormalSum::scaled(const BigInt& factor) const {
  if (factor < 0) throw DomainError("multiplicities must be non-negative");
  if (factor == 0) return {};
  FormalSum out = *this;
  for (auto& [t, m] : out.terms_) m *= factor;
  return out;
}

BigInt FormalSum::multiplicity(const Term& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? BigInt(0) : it->second;
}

bool FormalSum::has_residuals() const {
  for (const auto& [t, m] : terms_) {
    if (t.kind == TermKind::GenGottlieb) return true;
  }
  return false;
}

FormalSum operator+(FormalSum a, const FormalSum& b) {
  a += b;
  return a;
}

std::string to_string(const FormalSum& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [t, m] : s.terms()) {
    if (!out.empty()) out += " + ";
    if (m != 1) out += m.str() + "*";
    out += to_string(t);
  }
  return out;
}

}  // namespace gottcalc
