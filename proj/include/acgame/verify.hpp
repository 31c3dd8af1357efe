#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acgame/game.hpp"

namespace acgame {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string measured;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Overrides both the trajectory length of the exact checks (default
  // 10,000) and the verdict horizon (default 1,000). Growth-law fits keep
  // the full length.
  std::optional<int> horizon;
};

inline constexpr int kTrajectoryChecksLength = 10000;

// Closed forms of the single-player and even-split utility curves, computed
// in exact integer arithmetic.
Count solo_closed_form(Count n);   // floor((-1 + sqrt(1 + 8n)) / 2)
Count split_closed_form(Count n);  // floor((-1 + sqrt(1 + 16n)) / 2)

// The ten model-level acceptance checks, in order.
std::vector<CheckResult> run_acceptance(const VerifyOptions& options = {});

}  // namespace acgame
