#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "acgame/analysis.hpp"
#include "acgame/calibration.hpp"
#include "acgame/game.hpp"

namespace acgame {

// Config problems; the message starts with the JSON path of the bad field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct GameConfig {
  GameState initial;
  StrategyProfile strategies;
  std::optional<StrategyProfile> alternative;
  int horizon = 1;
  std::optional<std::filesystem::path> trajectory_out;
  std::optional<std::filesystem::path> sidecar_out;
};

// {
//   "players":    [{"id": 0, "initial": [3, 1]}, {"id": 1}],
//   "strategies": {"0": "pair_single_joint{partner=1}",
//                  "1": {"name": "pair_single_joint", "params": {"partner": 0}}},
//   "alternative": { same shape as strategies, optional },
//   "horizon": 10,
//   "outputs": {"trajectory": "out.csv", "sidecar": "out.json"}
// }
// Player ids must be exactly 0..n-1.
GameConfig parse_game_config(const nlohmann::json& doc);
GameConfig load_game_config(const std::filesystem::path& path);

// year,player,h,papers_published,new_citations
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

// Utility series per player, as written by write_trajectory_csv.
std::vector<UtilitySeries> read_trajectory_csv(std::istream& in);

nlohmann::json trajectory_sidecar(const Trajectory& t, const StrategyProfile& profile);

nlohmann::json to_json(const OvertakeVerdict& v);
nlohmann::json to_json(const StabilityReport& r);
nlohmann::json to_json(const PredictorCorrelations& c);

// group_key,median,count
void write_curve_csv(std::ostream& out, const Curve& curve);

// Writes a file, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace acgame
