#pragma once

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acgame/game.hpp"

namespace acgame {

class StrategyParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// All potential into one solo paper: solo = [Q].
Strategy solo_single_paper();

// Q split over k solo papers, larger parts first; Q parts of 1 when Q < k.
Strategy solo_split(int k);

// All potential into one joint paper with the partner: joint{partner: [Q]}.
Strategy pair_single_joint(PlayerId partner);

// Two joint papers with the partner. The lower-id player of the pair emits
// [ceil(Q/2), floor(Q/2)] and the higher-id player [floor(Q/2), ceil(Q/2)],
// so each aligned paper collects Q citations when both players have equal
// potential. Q = 1 degenerates to a single slot.
Strategy pair_two_joint_even_split(PlayerId partner);

// One side of the cross-pair deviation against a matching. Year 1-2: joint
// paper with old_partner. Years 3 and 7: one unit to old_partner, the rest to
// a joint paper with ally. Every other year: everything to ally.
Strategy coalition_switch(PlayerId ally, PlayerId old_partner);

// Both sides of the cross-pair deviation for a1 (matched with a1p) and a2
// (matched with a2p).
std::map<PlayerId, Strategy> theorem6_deviation(PlayerId a1, PlayerId a2, PlayerId a1p, PlayerId a2p);

using Matching = std::vector<std::pair<PlayerId, PlayerId>>;

class MatchingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Every matched pair plays pair_single_joint toward each other. The matching
// must be perfect on a roster of the given size.
StrategyProfile matching_profile(std::size_t roster, const Matching& matching);

StrategyProfile uniform_profile(std::size_t roster, const Strategy& s);

// Builds a catalog strategy from its name and parameters. Names:
// solo_single_paper, solo_split{k}, pair_single_joint{partner},
// pair_two_joint_even_split{partner}, theorem6_deviation{ally,old_partner}.
Strategy make_strategy(std::string_view name, const StrategyParams& params);

// Parses "name" or "name{key=value,...}".
std::pair<std::string, StrategyParams> parse_strategy_label(std::string_view label);

// ---------------------------------------------------------------------------
// Deviation catalog used by the coalition search.

struct DeviationContext {
  PlayerId self;
  std::span<const PlayerId> coalition;  // includes self
  const StrategyProfile& baseline;
  std::size_t roster = 0;
};

struct DeviationFamily {
  std::string name;
  // Candidate strategies for `self`; empty when the family does not apply.
  std::function<std::vector<Strategy>(const DeviationContext&)> candidates;
};

// solo_single_paper, solo_split (k = 2 and 3), pair_single_joint,
// pair_two_joint_even_split, theorem6_deviation.
std::vector<DeviationFamily> builtin_catalog();

// Looks up families by name. "solo_split{k=N}" selects one split width.
std::vector<DeviationFamily> select_catalog(std::span<const std::string> names);

}  // namespace acgame
