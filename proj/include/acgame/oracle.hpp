#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acgame/bibliometrics.hpp"
#include "acgame/game.hpp"

// Definitional brute-force evaluations of the bibliometric quantities. These
// scan every candidate value directly and share no code with
// bibliometrics.cpp; they exist to cross-check it.
namespace acgame::oracle {

using Multiset = std::vector<Count>;

Count count_at_least(const Multiset& z, Count threshold);
Count h_index(const Multiset& z);
Multiset h_profile(const Multiset& z);             // sorted ascending
Multiset h_augmenting_profile(const Multiset& z);  // sorted ascending
bool weakly_h_preferable(const Multiset& z, const Multiset& zp);
bool strongly_h_preferable(const Multiset& z, const Multiset& zp);

// Random multisets: size in [0, max_size], values in [0, max_value].
std::vector<Multiset> random_profiles(std::size_t count, std::size_t max_size, Count max_value, std::uint64_t seed);

struct SweepResult {
  std::size_t profiles = 0;
  std::size_t comparisons = 0;
  std::size_t discrepancies = 0;
};

// Checks every profile's h-index, h-profile and h-augmenting profile against
// the oracle, and both preference predicates on (Z, Z), (Z, next profile),
// (next profile, Z) and (Z, Z minus its smallest element).
SweepResult sweep(std::span<const Multiset> profiles, Execution mode = Execution::Parallel);

}  // namespace acgame::oracle
