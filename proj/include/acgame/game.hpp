#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "acgame/bibliometrics.hpp"

namespace acgame {

struct PlayerId {
  std::size_t index = 0;

  auto operator<=>(const PlayerId&) const = default;
};

inline PlayerId player(std::size_t index) { return PlayerId{index}; }

// Year counts resolved years; the year being played is year + 1.
struct GameState {
  int year = 0;
  std::vector<CitationProfile> profiles;

  static GameState empty(std::size_t players) { return GameState{0, std::vector<CitationProfile>(players)}; }

  std::size_t players() const { return profiles.size(); }
  bool contains(PlayerId p) const { return p.index < profiles.size(); }
  const CitationProfile& profile(PlayerId p) const;
  Count h(PlayerId p) const { return h_index(profile(p)); }
};

// One year's allocation for a single player. Joint vectors are aligned
// positionally with the partner's vector for this player.
struct ActionPlan {
  std::vector<Count> solo;
  std::map<PlayerId, std::vector<Count>> joint;

  Count total() const;
  bool operator==(const ActionPlan&) const = default;
};

struct PaperId {
  int year = 0;
  std::size_t seq = 0;

  auto operator<=>(const PaperId&) const = default;
};

struct Paper {
  PaperId id;
  int year = 0;
  Count citations = 0;
  std::vector<PlayerId> authors;  // sorted, size 1 or 2
};

enum class ViolationKind {
  UnknownPlayer,
  MissingPlan,
  ConservationViolation,
  NegativeEntry,
  NonPositiveSolo,
  SelfPartner,
  UnknownPartner,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  PlayerId player;
  std::string detail;
};

class RosterError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ActionError : public std::runtime_error {
 public:
  explicit ActionError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Raised by run_game; identifies the year being played and the player whose
// strategy or plan failed.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(int year, PlayerId player, const std::string& what);
  int year() const { return year_; }
  PlayerId player() const { return player_; }

 private:
  int year_;
  PlayerId player_;
};

// Q_y(a) = h_y(a) + 1.
Count research_potential(const GameState& state, PlayerId player);

// Empty result means the plan is valid.
std::vector<Violation> validate_action(const GameState& state, PlayerId player, const ActionPlan& plan);

struct YearOutcome {
  GameState state;
  std::vector<Paper> papers;
};

// plans[i] is the plan of player i; one plan per player is required.
YearOutcome resolve_year(const GameState& state, std::span<const ActionPlan> plans);

// ---------------------------------------------------------------------------
// Strategies and trajectories

using StrategyParams = std::map<std::string, std::int64_t>;
using StrategyRule = std::function<ActionPlan(const GameState&, PlayerId)>;

struct Strategy {
  std::string name;
  StrategyParams params;
  StrategyRule rule;

  // name{key=value,...}; bare name when there are no parameters.
  std::string label() const;
  ActionPlan operator()(const GameState& state, PlayerId self) const { return rule(state, self); }
};

class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<Strategy> strategies) : strategies_(std::move(strategies)) {}

  std::size_t size() const { return strategies_.size(); }
  const Strategy& at(PlayerId p) const;
  void assign(PlayerId p, Strategy s);

  const std::vector<Strategy>& strategies() const { return strategies_; }

 private:
  std::vector<Strategy> strategies_;
};

struct YearRecord {
  int year = 0;
  std::vector<Paper> papers;
  std::vector<Count> utilities;          // h after the year, per player
  std::vector<Count> potential;          // Q invested this year, per player
  std::vector<std::size_t> papers_published;
  std::vector<Count> new_citations;
};

using UtilitySeries = std::vector<Count>;

class Trajectory {
 public:
  Trajectory(GameState initial, std::vector<YearRecord> years, GameState final_state)
      : initial_(std::move(initial)), years_(std::move(years)), final_(std::move(final_state)) {}

  const GameState& initial() const { return initial_; }
  const GameState& final_state() const { return final_; }
  const std::vector<YearRecord>& years() const { return years_; }
  std::size_t horizon() const { return years_.size(); }

  UtilitySeries utilities(PlayerId p) const;

  // Profile snapshot at the end of the given year (0 = initial state).
  CitationProfile profile_at(int year, PlayerId p) const;

 private:
  GameState initial_;
  std::vector<YearRecord> years_;
  GameState final_;
};

Trajectory run_game(const GameState& initial, const StrategyProfile& profile, int horizon);

struct GameSetup {
  GameState initial;
  StrategyProfile profile;
  int horizon = 1;
};

enum class Execution { Serial, Parallel };

// Independent games; results are in input order under either execution mode.
std::vector<Trajectory> run_games(std::span<const GameSetup> setups, Execution mode = Execution::Parallel);

}  // namespace acgame
