#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gottcalc/abelian.hpp"
#include "gottcalc/formal_sum.hpp"
#include "gottcalc/suspension.hpp"

namespace gottcalc {

/// Graded abelian group with partial knowledge. A degree is known if it has an
/// entry or lies above `zero_above` (then the group is trivial); otherwise it is
/// unknown.
class GradedGroup {
 public:
  GradedGroup() = default;
  GradedGroup(std::map<Degree, AbelianGroup> entries, std::optional<Degree> zero_above);

  /// nullopt means unknown.
  std::optional<AbelianGroup> lookup(Degree d) const;
  bool known(Degree d) const { return lookup(d).has_value(); }

  void set(Degree d, AbelianGroup g);
  void set_zero_above(std::optional<Degree> bound);

  const std::map<Degree, AbelianGroup>& entries() const noexcept { return entries_; }
  const std::optional<Degree>& zero_above() const noexcept { return zero_above_; }

  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

 private:
  std::map<Degree, AbelianGroup> entries_;
  std::optional<Degree> zero_above_;
};

/// Tri-state flags: nullopt is unknown.
struct SpaceFlags {
  std::optional<bool> simply_connected;
  std::optional<bool> finite;
  std::optional<bool> g_space;
  std::optional<bool> t_space;

  friend bool operator==(const SpaceFlags&, const SpaceFlags&) = default;
};

struct SpaceProfile {
  std::string name;
  GradedGroup gottlieb;
  std::optional<GradedGroup> homotopy;
  /// Rational Betti numbers b_0 .. b_dim; b_0 = 1.
  std::optional<std::vector<BigInt>> betti;
  std::optional<std::vector<Degree>> suspension_shifts;
  SpaceFlags flags;

  std::optional<std::size_t> dimension() const {
    if (!betti || betti->empty()) return std::nullopt;
    return betti->size() - 1;
  }

  friend bool operator==(const SpaceProfile&, const SpaceProfile&) = default;
};

/// A based map f: source -> target together with its evaluation subgroups G_n(target, source; f).
struct MapProfile {
  std::string name;
  std::string source;
  std::string target;
  GradedGroup relative_gottlieb;
  bool is_identity = false;

  friend bool operator==(const MapProfile&, const MapProfile&) = default;
};

class ProfileDatabase {
 public:
  /// Validates the profile's own invariants.
  void add_space(SpaceProfile profile);
  /// Validates the map and that its source and target are already present.
  void add_map(MapProfile profile);

  /// Copy with `profile` added or replaced (used for derived spaces).
  ProfileDatabase with_space(SpaceProfile profile) const;

  const SpaceProfile& space(std::string_view name) const;
  const MapProfile& map(std::string_view name) const;
  const SpaceProfile* find_space(std::string_view name) const;

  const std::map<std::string, SpaceProfile, std::less<>>& spaces() const noexcept { return spaces_; }
  const std::map<std::string, MapProfile, std::less<>>& maps() const noexcept { return maps_; }

  DeclaredShifts declared_shifts() const;

  friend bool operator==(const ProfileDatabase&, const ProfileDatabase&) = default;

 private:
  std::map<std::string, SpaceProfile, std::less<>> spaces_;
  std::map<std::string, MapProfile, std::less<>> maps_;
};

/// Parses and validates a profile document. Throws ProfileError with the
/// offending path.
ProfileDatabase load_profiles(std::string_view document);
ProfileDatabase load_profiles_file(const std::filesystem::path& path);

/// Canonical document: groups in structured form, keys sorted.
std::string save_profiles(const ProfileDatabase& db);

/// Evaluation that could not be completed. `partial` sums everything that did resolve.
struct Incomplete {
  std::vector<std::string> unresolved;
  AbelianGroup partial;

  friend bool operator==(const Incomplete&, const Incomplete&) = default;
};

using Evaluation = std::variant<AbelianGroup, Incomplete>;

inline bool is_complete(const Evaluation& e) { return e.index() == 0; }

/// Looks every term up and direct-sums multiplicity-many copies. Residual terms
/// and unknown degrees make the result Incomplete; a term naming a space or map
/// missing from `db` throws ProfileError.
Evaluation evaluate(const FormalSum& sum, const ProfileDatabase& db);

struct DerivedTable {
  GradedGroup table;
  /// Degrees (with reasons) left unknown because evaluation was incomplete.
  std::vector<std::string> unresolved;
};

/// Gottlieb table of map(x, y; 0) on degrees [lo, hi]. The vanishing bound of y
/// carries over unchanged. Throws NotSplittableError if x does not split.
DerivedTable gottlieb_table_of_map_space(const SpaceExpr& x, const std::string& y, Degree lo, Degree hi,
                                         const ProfileDatabase& db);

/// Table of the `by`-fold loop space: degree d holds the input's degree d + by.
GradedGroup shifted_down(const GradedGroup& g, Degree by);

}  // namespace gottcalc
