#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gottcalc/abelian.hpp"
#include "gottcalc/profiles.hpp"

namespace gottcalc::testing {

/// Number of elements of each order in Z/a_1 x ... x Z/a_k, by walking every element.
inline std::map<std::uint64_t, std::uint64_t> order_census(const std::vector<std::uint64_t>& orders) {
  std::map<std::uint64_t, std::uint64_t> census;
  std::vector<std::uint64_t> digit(orders.size(), 0);
  while (true) {
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      std::uint64_t o = orders[i] / std::gcd(orders[i], digit[i]);
      order = std::lcm(order, o);
    }
    ++census[order];
    std::size_t i = 0;
    while (i < orders.size() && ++digit[i] == orders[i]) digit[i++] = 0;
    if (i == orders.size()) break;
  }
  return census;
}

inline std::vector<std::uint64_t> to_u64(const std::vector<BigInt>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& x : v) out.push_back(x.convert_to<std::uint64_t>());
  return out;
}

/// Invariant factors by repeated (a, b) -> (gcd, lcm) on pairs; no factoring.
inline std::vector<std::uint64_t> gcd_lcm_invariants(std::vector<std::uint64_t> orders) {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      std::uint64_t g = std::gcd(orders[i], orders[j]);
      std::uint64_t l = orders[i] / g * orders[j];
      orders[i] = g;
      orders[j] = l;
    }
  }
  std::vector<std::uint64_t> out;
  for (auto o : orders)
    if (o > 1) out.push_back(o);
  return out;
}

inline AbelianGroup random_group(std::mt19937_64& rng, int max_terms = 3, std::uint64_t max_order = 60) {
  std::uniform_int_distribution<int> rank(0, 2), terms(0, max_terms);
  std::uniform_int_distribution<std::uint64_t> order(2, max_order);
  std::vector<BigInt> orders;
  for (int i = terms(rng); i > 0; --i) orders.emplace_back(order(rng));
  return canonicalize(rank(rng), orders);
}

/// Synthetic Gottlieb table on degrees 1..top with zero_above = top.
inline GradedGroup random_table(std::mt19937_64& rng, Degree top) {
  GradedGroup g({}, top);
  for (Degree d = 1; d <= top; ++d) g.set(d, random_group(rng));
  return g;
}

inline SpaceProfile synthetic_space(std::string name, GradedGroup gottlieb) {
  SpaceProfile p;
  p.name = std::move(name);
  p.gottlieb = std::move(gottlieb);
  return p;
}

}  // namespace gottcalc::testing
