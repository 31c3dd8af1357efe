#include <doctest.h>

#include <random>
#include <sstream>

#include "acgame/io.hpp"
#include "acgame/strategies.hpp"

using namespace acgame;
using nlohmann::json;

namespace {

std::string error_path(const json& doc) {
  try {
    parse_game_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_CASE("game config parsing") {
  const auto doc = json::parse(R"({
    "players": [{"id": 1}, {"id": 0, "initial": [3, 1]}],
    "strategies": {"0": "pair_single_joint{partner=1}",
                   "1": {"name": "pair_single_joint", "params": {"partner": 0}}},
    "alternative": {"0": "solo_single_paper", "1": "solo_split{k=2}"},
    "horizon": 12,
    "outputs": {"trajectory": "t.csv"}
  })");
  const auto cfg = parse_game_config(doc);
  CHECK(cfg.initial.players() == 2);
  CHECK(cfg.initial.profile(PlayerId{0}) == CitationProfile{3, 1});
  CHECK(cfg.initial.profile(PlayerId{1}).empty());
  CHECK(cfg.strategies.at(PlayerId{1}).label() == "pair_single_joint{partner=0}");
  REQUIRE(cfg.alternative.has_value());
  CHECK(cfg.alternative->at(PlayerId{1}).label() == "solo_split{k=2}");
  CHECK(cfg.horizon == 12);
  CHECK(cfg.trajectory_out == std::filesystem::path("t.csv"));
  CHECK_FALSE(cfg.sidecar_out.has_value());
}

TEST_CASE("config errors name the offending field") {
  CHECK(error_path(json::array()) == "$");
  CHECK(error_path(json::parse(R"({"players": []})")) == "$.players");
  CHECK(error_path(json::parse(R"({"players": [{"id": 3}], "strategies": {}})")) == "$.players[0].id");
  CHECK(error_path(json::parse(R"({"players": [{"id": 0, "initial": [-2]}], "strategies": {}})")) ==
        "$.players[0].initial[0]");
  CHECK(error_path(json::parse(R"({"players": [{"id": 0}, {"id": 1}], "strategies": {"0": "solo_single_paper"}})")) ==
        "$.strategies.1");
  CHECK(error_path(json::parse(R"({"players": [{"id": 0}], "strategies": {"0": "warp_drive"}})")) == "$.strategies.0");
  CHECK(error_path(json::parse(
            R"({"players": [{"id": 0}, {"id": 1}], "strategies": {"0": "pair_single_joint{partner=7}", "1": "solo_single_paper"}})"))
            .rfind("$.strategies.0", 0) == 0);
  CHECK(error_path(json::parse(R"({"players": [{"id": 0}], "strategies": {"0": "solo_single_paper"}, "horizon": 0})")) ==
        "$.horizon");
  CHECK(error_path(json::parse(R"({"players": [{"id": 0}], "strategies": {"0": "solo_single_paper"}, "outputs": {"trajectory": 3}})")) ==
        "$.outputs.trajectory");
}

TEST_CASE("trajectory CSV round-trips utilities") {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
    std::vector<Strategy> s;
    for (std::size_t i = 0; i < n; ++i)
      s.push_back(i % 2 == 0 ? solo_split(std::uniform_int_distribution<int>(2, 4)(rng))
                             : pair_single_joint(PlayerId{(i + 1) % n}));
    const auto t = run_game(GameState::empty(n), StrategyProfile(s), std::uniform_int_distribution<int>(1, 40)(rng));
    std::stringstream csv;
    write_trajectory_csv(csv, t);
    const auto back = read_trajectory_csv(csv);
    REQUIRE(back.size() == n);
    for (std::size_t p = 0; p < n; ++p) CHECK(back[p] == t.utilities(PlayerId{p}));
  }
  std::istringstream bad("year,player\n");
  CHECK_THROWS(read_trajectory_csv(bad));
}

TEST_CASE("trajectory CSV layout") {
  const auto t = run_game(GameState::empty(1), uniform_profile(1, solo_single_paper()), 3);
  std::ostringstream csv;
  write_trajectory_csv(csv, t);
  CHECK(csv.str() ==
        "year,player,h,papers_published,new_citations\n"
        "1,0,1,1,1\n"
        "2,0,1,1,2\n"
        "3,0,2,1,2\n");
}

TEST_CASE("sidecar contents") {
  const StrategyProfile profile({pair_single_joint(PlayerId{1}), pair_single_joint(PlayerId{0})});
  const auto t = run_game(GameState::empty(2), profile, 4);
  const auto j = trajectory_sidecar(t, profile);
  CHECK(j["horizon"] == 4);
  CHECK(j["players"][0]["strategy"] == "pair_single_joint{partner=1}");
  CHECK(j["players"][1]["utilities"] == json::array({1, 2, 2, 3}));
  CHECK(j["players"][0]["final_profile"] == json::array({6, 6, 4, 2}));
  CHECK(j["papers"].size() == 4);
  CHECK(j["papers"][0]["authors"] == json::array({0, 1}));
}

TEST_CASE("report serialization") {
  UtilitySeries f(20), g(20);
  for (std::size_t i = 0; i < 20; ++i) {
    f[i] = static_cast<Count>(i);
    g[i] = static_cast<Count>(i / 2);
  }
  const auto v = to_json(overtakes(f, g));
  CHECK(v["verdict"] == to_string(Verdict::FirstOvertakesSecond));

  const auto stable = to_json(StabilityReport{true, std::nullopt, 12});
  CHECK(stable["stable"] == true);
  CHECK(stable["witness"].is_null());
  CHECK(stable["candidates"] == 12);

  std::ostringstream curve;
  write_curve_csv(curve, Curve{{0, {1.0, 3}}, {2, {4.5, 2}}});
  CHECK(curve.str() == "group_key,median,count\n0,1,3\n2,4.5,2\n");
}
