#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gottcalc {

using BigInt = boost::multiprecision::cpp_int;

struct PrimePower {
  std::uint64_t prime = 2;
  std::uint32_t exponent = 1;

  auto operator<=>(const PrimePower&) const = default;
};

/// Finitely generated abelian group Z^r + (+) Z/p^k, stored in primary
/// decomposition. The torsion multiset is kept as prime power -> multiplicity,
/// so equality of values is isomorphism of groups.
class AbelianGroup {
 public:
  using TorsionMap = std::map<PrimePower, BigInt>;

  AbelianGroup() = default;

  static AbelianGroup free(const BigInt& rank);
  static AbelianGroup cyclic(const BigInt& order);

  const BigInt& rank() const noexcept { return rank_; }
  const TorsionMap& torsion() const noexcept { return torsion_; }

  bool is_trivial() const noexcept { return rank_ == 0 && torsion_.empty(); }
  bool is_finite() const noexcept { return rank_ == 0; }

  /// Sorted (p, k) list with each prime power repeated by its multiplicity.
  std::vector<PrimePower> torsion_list() const;

  /// k-fold direct sum kG; k = 0 gives the trivial group.
  AbelianGroup multiple(const BigInt& copies) const;

  AbelianGroup& operator+=(const AbelianGroup& other);

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  AbelianGroup(BigInt rank, TorsionMap torsion) : rank_(std::move(rank)), torsion_(std::move(torsion)) {}

  friend AbelianGroup canonicalize(const BigInt& rank, std::span<const BigInt> cyclic_orders);
  friend AbelianGroup from_primary(const BigInt& rank, std::span<const PrimePower> torsion);

  BigInt rank_ = 0;
  TorsionMap torsion_;
};

/// Z^rank (+) Z/n_1 (+) ... in canonical form. Every order must be >= 2 and fit
/// in 64 bits (it is factored).
AbelianGroup canonicalize(const BigInt& rank, std::span<const BigInt> cyclic_orders);

/// Builds a group directly from primary data; rejects non-prime p or k = 0.
AbelianGroup from_primary(const BigInt& rank, std::span<const PrimePower> torsion);

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

/// d_1 | d_2 | ... | d_s with Z/d_1 (+) ... (+) Z/d_s isomorphic to the torsion part.
std::vector<BigInt> invariant_factors(const AbelianGroup& a);

inline const BigInt& rank(const AbelianGroup& a) noexcept { return a.rank(); }

/// Text codec: "0", "Z", "Z^r", "Z/d" joined with " + "; torsion printed in
/// invariant-factor form.
std::string to_string(const AbelianGroup& a);

/// Accepts any sum of "0", "Z", "Z^r", "Z/d" terms (whitespace-insensitive).
AbelianGroup parse_group(std::string_view text);

// Number theory helpers backing canonicalize.
bool is_prime(std::uint64_t n);
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

}  // namespace gottcalc
