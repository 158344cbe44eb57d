#include "gottcalc/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "gottcalc/error.hpp"

namespace gottcalc {
namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Pollard-Brent; n must be odd composite.
u64 find_factor(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 kBatch = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::map<u64, std::uint32_t>& out) {
  if (n == 1) return;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = find_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::uint64_t to_u64_order(const BigInt& order) {
  if (order < 2) throw DomainError("cyclic order must be at least 2, got " + order.str());
  if (order > std::numeric_limits<u64>::max()) {
    throw DomainError("cyclic order " + order.str() + " exceeds the 64-bit factoring range");
  }
  return order.convert_to<u64>();
}

BigInt big_pow(std::uint64_t base, std::uint32_t exp) {
  BigInt r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  return r;
}

constexpr std::size_t kMaxMaterialized = 1'000'000;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factor 0");
  std::map<u64, std::uint32_t> acc;
  factor_into(n, acc);
  return {acc.begin(), acc.end()};
}

AbelianGroup AbelianGroup::free(const BigInt& rank) {
  if (rank < 0) throw DomainError("rank must be non-negative");
  return AbelianGroup(rank, {});
}

AbelianGroup AbelianGroup::cyclic(const BigInt& order) {
  const BigInt orders[] = {order};
  return canonicalize(0, orders);
}

std::vector<PrimePower> AbelianGroup::torsion_list() const {
  std::vector<PrimePower> out;
  for (const auto& [pp, count] : torsion_) {
    if (count > kMaxMaterialized) throw DomainError("torsion multiplicity too large to list");
    for (auto i = count.convert_to<std::size_t>(); i > 0; --i) out.push_back(pp);
  }
  return out;
}

AbelianGroup AbelianGroup::multiple(const BigInt& copies) const {
  if (copies < 0) throw DomainError("multiplicity must be non-negative");
  if (copies == 0) return {};
  AbelianGroup out(rank_ * copies, torsion_);
  for (auto& [pp, count] : out.torsion_) count *= copies;
  return out;
}

AbelianGroup& AbelianGroup::operator+=(const AbelianGroup& other) {
  rank_ += other.rank_;
  for (const auto& [pp, count] : other.torsion_) torsion_[pp] += count;
  return *this;
}

AbelianGroup canonicalize(const BigInt& rank, std::span<const BigInt> cyclic_orders) {
  if (rank < 0) throw DomainError("rank must be non-negative");
  AbelianGroup::TorsionMap torsion;
  for (const auto& order : cyclic_orders) {
    for (auto [p, k] : factorize(to_u64_order(order))) torsion[PrimePower{p, k}] += 1;
  }
  return AbelianGroup(rank, std::move(torsion));
}

AbelianGroup from_primary(const BigInt& rank, std::span<const PrimePower> torsion) {
  if (rank < 0) throw DomainError("rank must be non-negative");
  AbelianGroup::TorsionMap map;
  for (const auto& pp : torsion) {
    if (!is_prime(pp.prime)) throw DomainError(std::to_string(pp.prime) + " is not prime");
    if (pp.exponent < 1) throw DomainError("prime-power exponent must be at least 1");
    map[pp] += 1;
  }
  return AbelianGroup(rank, std::move(map));
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  AbelianGroup out = a;
  out += b;
  return out;
}

std::vector<BigInt> invariant_factors(const AbelianGroup& a) {
  // Per prime, exponents in descending order; the j-th largest invariant factor
  // collects the j-th largest exponent of every prime.
  std::map<std::uint64_t, std::vector<std::uint32_t>> by_prime;
  std::size_t count = 0;
  for (const auto& pp : a.torsion_list()) by_prime[pp.prime].push_back(pp.exponent);
  for (auto& [p, exps] : by_prime) {
    std::sort(exps.rbegin(), exps.rend());
    count = std::max(count, exps.size());
  }
  std::vector<BigInt> factors(count, BigInt(1));
  for (const auto& [p, exps] : by_prime) {
    for (std::size_t j = 0; j < exps.size(); ++j) factors[count - 1 - j] *= big_pow(p, exps[j]);
  }
  return factors;
}

std::string to_string(const AbelianGroup& a) {
  std::vector<std::string> parts;
  if (a.rank() == 1) {
    parts.emplace_back("Z");
  } else if (a.rank() > 1) {
    parts.push_back("Z^" + a.rank().str());
  }
  for (const auto& d : invariant_factors(a)) parts.push_back("Z/" + d.str());
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

AbelianGroup parse_group(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_number = [&]() -> BigInt {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw ParseError("expected a decimal integer", pos, {"<integer>"});
    return BigInt(std::string(text.substr(start, pos - start)));
  };

  BigInt free_rank = 0;
  std::vector<BigInt> orders;
  bool first = true;
  for (;;) {
    skip_ws();
    if (!first) {
      if (pos == text.size()) break;
      if (text[pos] != '+') throw ParseError("expected '+' between group summands", pos, {"+"});
      ++pos;
      skip_ws();
    }
    first = false;
    if (pos == text.size()) throw ParseError("expected a group summand", pos, {"0", "Z", "Z^r", "Z/d"});
    if (text[pos] == '0') {
      ++pos;
    } else if (text[pos] == 'Z') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        free_rank += read_number();
      } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::size_t at = pos;
        BigInt d = read_number();
        if (d < 2) throw ParseError("cyclic order must be at least 2", at, {"<integer >= 2>"});
        orders.push_back(std::move(d));
      } else {
        free_rank += 1;
      }
    } else {
      throw ParseError("unexpected character in group literal", pos, {"0", "Z", "Z^r", "Z/d"});
    }
  }
  return canonicalize(free_rank, orders);
}

}  // namespace gottcalc
