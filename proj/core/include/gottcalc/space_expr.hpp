#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gottcalc {

/// Degrees of homotopy and Gottlieb groups.
using Degree = std::int64_t;

enum class SpaceKind {
  Atom,
  Sphere,
  Point,
  Wedge,
  Product,
  Susp,
  Map,
  // Sugar, removed by desugar():
  Torus,
  Bouquet,
  Loop,
  BouquetSpace,
};

/// Immutable space-expression tree. Copies share structure.
///
/// `Map(source, target)` always denotes the null component map(source, target; 0).
class SpaceExpr {
 public:
  static SpaceExpr atom(std::string name);
  static SpaceExpr sphere(int dim);
  static SpaceExpr point();
  static SpaceExpr wedge(std::vector<SpaceExpr> parts);
  static SpaceExpr product(std::vector<SpaceExpr> factors);
  static SpaceExpr susp(SpaceExpr inner, int count = 1);
  static SpaceExpr map(SpaceExpr source, SpaceExpr target);
  static SpaceExpr torus(int n);
  static SpaceExpr bouquet(int circles);
  static SpaceExpr loop(SpaceExpr target, int iterations = 1);
  static SpaceExpr bouquet_space(SpaceExpr target, int circles, int iterations = 1);

  SpaceKind kind() const noexcept;
  bool is(SpaceKind k) const noexcept { return kind() == k; }
  bool is_sugar() const noexcept;

  /// Atom name.
  const std::string& name() const;
  /// Sphere dimension, torus rank, bouquet circle count, suspension count, or
  /// loop / bouquet-space iteration count.
  int count() const;
  /// Circle count m of a BouquetSpace.
  int circles() const;
  /// Wedge summands or product factors.
  std::span<const SpaceExpr> children() const;
  /// Suspended space.
  const SpaceExpr& inner() const;
  /// Map source.
  const SpaceExpr& source() const;
  /// Map, Loop or BouquetSpace target.
  const SpaceExpr& target() const;

  /// Address of the shared node; stable for the lifetime of any copy.
  const void* node_id() const noexcept { return node_.get(); }

  friend bool operator==(const SpaceExpr& a, const SpaceExpr& b);

 private:
  struct Node;
  explicit SpaceExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the functional ASCII grammar (whitespace-insensitive):
///   S<n> | pt | T<n> | B<n> | <identifier>
///   wedge(X, ...) | prod(X, ...) | susp(X[, k]) | map(X, Y) | loop(Y[, N]) | bloop(Y, m[, N])
SpaceExpr parse(std::string_view text);

/// Canonical text; parse(to_string(e)) == e.
std::string to_string(const SpaceExpr& e);
std::ostream& operator<<(std::ostream& os, const SpaceExpr& e);

/// Expands Torus, Bouquet, Loop and BouquetSpace and merges nested suspensions.
SpaceExpr desugar(const SpaceExpr& e);

bool is_identifier(std::string_view s) noexcept;
/// S<digits>, T<digits>, B<digits>, pt, and the constructor keywords.
bool is_reserved_name(std::string_view s) noexcept;

}  // namespace gottcalc
