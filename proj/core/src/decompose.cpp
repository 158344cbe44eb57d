#include "gottcalc/decompose.hpp"

#include <tuple>
#include <vector>

namespace gottcalc {
namespace {

class Decomposer {
 public:
  explicit Decomposer(const DeclaredShifts& declared) : declared_(declared) {}

  FormalSum space(const SpaceExpr& e, Degree n) {
    switch (e.kind()) {
      case SpaceKind::Map: {
        std::vector<SpaceExpr> factors;
        flatten(e.source(), factors);
        return curried(factors, 0, e.target(), n);
      }
      case SpaceKind::Point:
        return {};
      default: {
        FormalSum s;
        s.add(Term::gottlieb(to_string(e), n));
        return s;
      }
    }
  }

 private:
  using Key = std::tuple<std::vector<const void*>, const void*, Degree>;

  // Repeated currying of a product source yields its factors left to right.
  static void flatten(const SpaceExpr& source, std::vector<SpaceExpr>& out) {
    if (source.is(SpaceKind::Product)) {
      for (const auto& f : source.children()) flatten(f, out);
    } else {
      out.push_back(source);
    }
  }

  static SpaceExpr rebuild(const std::vector<SpaceExpr>& factors, std::size_t from, const SpaceExpr& target) {
    if (from == factors.size()) return target;
    if (from + 1 == factors.size()) return SpaceExpr::map(factors[from], target);
    return SpaceExpr::map(SpaceExpr::product({factors.begin() + static_cast<std::ptrdiff_t>(from), factors.end()}),
                          target);
  }

  const SphereSplitting& splitting_of(const SpaceExpr& x) {
    auto it = splits_.find(x.node_id());
    if (it == splits_.end()) it = splits_.emplace(x.node_id(), sphere_splitting(x, declared_)).first;
    return it->second;
  }

  // G_n(map(factors[from] x ... , target))
  FormalSum curried(const std::vector<SpaceExpr>& factors, std::size_t from, const SpaceExpr& target, Degree n) {
    if (from == factors.size()) return space(target, n);

    Key key;
    for (std::size_t i = from; i < factors.size(); ++i) std::get<0>(key).push_back(factors[i].node_id());
    std::get<1>(key) = target.node_id();
    std::get<2>(key) = n;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const SpaceExpr& head = factors[from];
    FormalSum result;
    if (head.is(SpaceKind::Point)) {
      result = curried(factors, from + 1, target, n);
    } else {
      result = curried(factors, from + 1, target, n);
      const auto& split = splitting_of(head);
      if (split.splittable()) {
        for (const auto& [shift, count] : split.shifts()) {
          result += curried(factors, from + 1, target, n + shift).scaled(count);
        }
      } else {
        const bool suspended = head.is(SpaceKind::Susp);
        const SpaceExpr& base = suspended ? head.inner() : head;
        Degree k = suspended ? n + head.count() : n;
        result.add(Term::generalized(base, k, rebuild(factors, from + 1, target)));
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  const DeclaredShifts& declared_;
  std::map<const void*, SphereSplitting> splits_;
  std::map<Key, FormalSum> memo_;
};

}  // namespace

FormalSum decompose(const SpaceExpr& e, Degree n, const DeclaredShifts& declared) {
  if (n < 1) throw DomainError("degree must be at least 1, got " + std::to_string(n));
  SpaceExpr plain = desugar(e);
  Decomposer d(declared);
  return d.space(plain, n);
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

FormalSum closed_form_bouquet(int m, int iterations, Degree n, const SpaceExpr& target) {
  if (m < 1) throw DomainError("bouquet width must be at least 1");
  if (iterations < 1) throw DomainError("iteration count must be at least 1");
  if (n < 1) throw DomainError("degree must be at least 1, got " + std::to_string(n));
  FormalSum s;
  if (target.is(SpaceKind::Point)) return s;
  const std::string name = to_string(target);
  BigInt m_pow = 1;
  for (int j = 0; j <= iterations; ++j) {
    s.add(Term::gottlieb(name, n + j), m_pow * binomial(iterations, j));
    m_pow *= m;
  }
  return s;
}

}  // namespace gottcalc
