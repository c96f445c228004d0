#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace firmml {

struct SkylinePair {
  std::uint32_t k = 0;
  std::uint32_t lambda = 0;
  friend bool operator==(const SkylinePair&, const SkylinePair&) = default;
};

// (k1, λ1) dominates (k2, λ2) when k1 >= k2 and λ1 >= λ2; reflexive.
inline bool dominates(const SkylinePair& a, const SkylinePair& b) {
  return a.k >= b.k && a.lambda >= b.lambda;
}

inline bool covers(std::span<const SkylinePair> skyline, std::uint32_t k, std::uint32_t lambda) {
  for (const auto& p : skyline)
    if (p.k >= k && p.lambda >= lambda) return true;
  return false;
}

// Reduces per-λ indices (entry i is the index at λ = i + 1) to the skyline,
// sorted by λ ascending. Entries below min_k are not memberships.
std::vector<SkylinePair> skyline_from_levels(std::span<const std::uint32_t> per_lambda,
                                             std::uint32_t min_k);

// Generic dominance reduction of an arbitrary pair list.
std::vector<SkylinePair> skyline_reduce(std::vector<SkylinePair> pairs);

}  // namespace firmml
