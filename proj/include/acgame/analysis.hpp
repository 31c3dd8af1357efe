#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "acgame/game.hpp"
#include "acgame/strategies.hpp"

namespace acgame {

// ---------------------------------------------------------------------------
// Overtaking at a finite horizon

enum class Verdict { FirstOvertakesSecond, SecondOvertakesFirst, Neither, Inconclusive };

std::string to_string(Verdict v);
Verdict mirror(Verdict v);

struct OvertakeEvidence {
  std::size_t tail_start = 0;  // first 1-based index inside the tail window
  // Earliest year from which the difference keeps the sign pattern behind
  // the verdict; absent when the tail itself oscillates.
  std::optional<std::size_t> stabilization_year;
  Count min_tail_diff = 0;
  Count max_tail_diff = 0;
};

struct OvertakeVerdict {
  Verdict verdict = Verdict::Inconclusive;
  OvertakeEvidence evidence;
};

inline constexpr double kDefaultBurnIn = 0.5;
inline constexpr int kDefaultHorizon = 1000;
inline constexpr std::size_t kMinSeriesLength = 10;

// Tail window is n > burn_in * N. f overtakes g when the tail difference
// f - g never goes negative and is positive at least once. A tail that is
// identically zero gives Inconclusive when the series agree everywhere and
// Neither otherwise.
OvertakeVerdict overtakes(std::span<const Count> f, std::span<const Count> g, double burn_in = kDefaultBurnIn);

// ---------------------------------------------------------------------------
// Growth-law fits

enum class GrowthModel { Sqrt, Linear, Power };

std::string to_string(GrowthModel m);

struct GrowthFit {
  GrowthModel model = GrowthModel::Power;
  double exponent = 0.0;
  double coefficient = 0.0;
  double max_relative_residual = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_relative_residual = 0.0;
};

class DegenerateFit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr std::size_t kMinFitLength = 100;

// Least squares of log s_n against log n over the second half of the series,
// s_n ~ coefficient * n^exponent. The model label is Sqrt or Linear when the
// exponent is within 0.05 of 1/2 or 1.
GrowthFit fit_growth(std::span<const Count> series);

// Ordinary least squares s_n = intercept + slope * n over the second half.
LinearFit fit_linear(std::span<const Count> series);

// ---------------------------------------------------------------------------

enum class WelfareVariant { SumH, HOfH };

Count social_welfare(const GameState& state, WelfareVariant variant);

// ---------------------------------------------------------------------------
// Coalition search

struct StabilityQuery {
  GameState initial;
  StrategyProfile baseline;
  std::vector<DeviationFamily> catalog;
  int k = 2;
  int horizon = kDefaultHorizon;
  double burn_in = kDefaultBurnIn;
};

struct DeviatorOutcome {
  PlayerId player;
  std::string strategy;
  OvertakeVerdict verdict;
};

struct Witness {
  std::vector<PlayerId> coalition;
  std::vector<DeviatorOutcome> deviators;
};

// Stability is relative to the supplied catalog only.
struct StabilityReport {
  bool stable = true;
  std::optional<Witness> witness;
  std::size_t candidates = 0;
};

class StabilityQueryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One deviation: a coalition and the strategy each member switches to.
struct DeviationCandidate {
  std::vector<PlayerId> coalition;
  std::vector<Strategy> strategies;  // aligned with coalition
};

// Coalitions are enumerated from the largest permitted size down, then in
// lexicographic order; assignments follow catalog order.
std::vector<DeviationCandidate> enumerate_deviations(const StabilityQuery& query);

// Reports the first candidate, in enumeration order, under which every
// deviator overtakes its baseline utility.
StabilityReport find_unstable_set(const StabilityQuery& query, Execution mode = Execution::Parallel);

// Verdicts of each coalition member under one deviation.
std::vector<DeviatorOutcome> evaluate_deviation(const StabilityQuery& query, const Trajectory& baseline,
                                                const DeviationCandidate& candidate);

}  // namespace acgame
