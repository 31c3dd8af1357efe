#include "acgame/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "acgame/strategies.hpp"

namespace acgame {

using nlohmann::json;

namespace {

Strategy parse_strategy_entry(const json& entry, const std::string& path) {
  try {
    if (entry.is_string()) {
      auto [name, params] = parse_strategy_label(entry.get<std::string>());
      return make_strategy(name, params);
    }
    if (entry.is_object()) {
      if (!entry.contains("name") || !entry["name"].is_string()) throw ConfigError(path + ".name", "missing strategy name");
      StrategyParams params;
      if (entry.contains("params")) {
        if (!entry["params"].is_object()) throw ConfigError(path + ".params", "must be an object");
        for (const auto& [k, v] : entry["params"].items()) {
          if (!v.is_number_integer()) throw ConfigError(path + ".params." + k, "must be an integer");
          params[k] = v.get<std::int64_t>();
        }
      }
      return make_strategy(entry["name"].get<std::string>(), params);
    }
  } catch (const StrategyParameterError& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "strategy must be a label string or an object");
}

StrategyProfile parse_strategies(const json& doc, const std::string& path, std::size_t n) {
  if (!doc.is_object()) throw ConfigError(path, "must be an object keyed by player id");
  std::vector<std::optional<Strategy>> slots(n);
  for (const auto& [key, entry] : doc.items()) {
    std::size_t id = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (key.empty() || ec != std::errc{} || ptr != key.data() + key.size())
      throw ConfigError(path + "." + key, "key is not a player id");
    if (id >= n) throw ConfigError(path + "." + key, "no such player");
    const std::string entry_path = path + "." + key;
    Strategy s = parse_strategy_entry(entry, entry_path);
    for (const char* ref : {"partner", "ally", "old_partner"}) {
      auto it = s.params.find(ref);
      if (it == s.params.end()) continue;
      if (it->second < 0 || static_cast<std::size_t>(it->second) >= n)
        throw ConfigError(entry_path, std::string("'") + ref + "' refers to unknown player " + std::to_string(it->second));
      if (static_cast<std::size_t>(it->second) == id)
        throw ConfigError(entry_path, std::string("'") + ref + "' refers to the player itself");
    }
    slots[id] = std::move(s);
  }
  std::vector<Strategy> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!slots[i]) throw ConfigError(path + "." + std::to_string(i), "missing strategy for player " + std::to_string(i));
    out.push_back(std::move(*slots[i]));
  }
  return StrategyProfile(std::move(out));
}

}  // namespace

GameConfig parse_game_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  if (!doc.contains("players") || !doc["players"].is_array() || doc["players"].empty())
    throw ConfigError("$.players", "must be a non-empty array");
  const auto& players = doc["players"];
  const std::size_t n = players.size();

  GameConfig cfg;
  cfg.initial = GameState::empty(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string path = "$.players[" + std::to_string(i) + "]";
    const auto& p = players[i];
    if (!p.is_object() || !p.contains("id") || !p["id"].is_number_integer())
      throw ConfigError(path + ".id", "missing integer id");
    const auto id = p["id"].get<std::int64_t>();
    if (id < 0 || static_cast<std::size_t>(id) >= n) throw ConfigError(path + ".id", "ids must be 0.." + std::to_string(n - 1));
    if (seen[static_cast<std::size_t>(id)]) throw ConfigError(path + ".id", "duplicate id " + std::to_string(id));
    seen[static_cast<std::size_t>(id)] = true;
    std::vector<Count> initial;
    if (p.contains("initial")) {
      if (!p["initial"].is_array()) throw ConfigError(path + ".initial", "must be an array of citation counts");
      for (std::size_t k = 0; k < p["initial"].size(); ++k) {
        const auto& c = p["initial"][k];
        if (!c.is_number_integer() || c.get<Count>() < 0)
          throw ConfigError(path + ".initial[" + std::to_string(k) + "]", "must be a non-negative integer");
        initial.push_back(c.get<Count>());
      }
    }
    try {
      cfg.initial.profiles[static_cast<std::size_t>(id)] = CitationProfile(std::move(initial));
    } catch (const std::exception& e) {
      throw ConfigError(path + ".initial", e.what());
    }
  }

  if (!doc.contains("strategies")) throw ConfigError("$.strategies", "missing");
  cfg.strategies = parse_strategies(doc["strategies"], "$.strategies", n);
  if (doc.contains("alternative")) cfg.alternative = parse_strategies(doc["alternative"], "$.alternative", n);

  if (doc.contains("horizon")) {
    if (!doc["horizon"].is_number_integer() || doc["horizon"].get<std::int64_t>() < 1)
      throw ConfigError("$.horizon", "must be a positive integer");
    cfg.horizon = doc["horizon"].get<int>();
  }
  if (doc.contains("outputs")) {
    const auto& o = doc["outputs"];
    if (!o.is_object()) throw ConfigError("$.outputs", "must be an object");
    for (const char* key : {"trajectory", "sidecar"})
      if (o.contains(key) && !o[key].is_string()) throw ConfigError(std::string("$.outputs.") + key, "must be a path string");
    if (o.contains("trajectory")) cfg.trajectory_out = o["trajectory"].get<std::string>();
    if (o.contains("sidecar")) cfg.sidecar_out = o["sidecar"].get<std::string>();
  }
  return cfg;
}

GameConfig load_game_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_game_config(doc);
}

// ---------------------------------------------------------------------------

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "year,player,h,papers_published,new_citations\n";
  for (const auto& y : t.years())
    for (std::size_t a = 0; a < y.utilities.size(); ++a)
      out << y.year << ',' << a << ',' << y.utilities[a] << ',' << y.papers_published[a] << ',' << y.new_citations[a]
          << '\n';
}

std::vector<UtilitySeries> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "year,player,h,papers_published,new_citations")
    throw std::runtime_error("trajectory CSV: missing header");
  std::vector<UtilitySeries> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::int64_t> v;
    while (std::getline(row, field, ',')) {
      std::int64_t x = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
      if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error("trajectory CSV line " + std::to_string(line_no) + ": bad field '" + field + "'");
      v.push_back(x);
    }
    if (v.size() != 5 || v[1] < 0) throw std::runtime_error("trajectory CSV line " + std::to_string(line_no) + ": malformed");
    const auto p = static_cast<std::size_t>(v[1]);
    if (out.size() <= p) out.resize(p + 1);
    out[p].push_back(v[2]);
  }
  return out;
}

json trajectory_sidecar(const Trajectory& t, const StrategyProfile& profile) {
  json players = json::array();
  for (std::size_t a = 0; a < t.initial().players(); ++a) {
    const PlayerId p{a};
    const auto& init = t.initial().profile(p).values();
    const auto& fin = t.final_state().profile(p).values();
    players.push_back({{"id", a},
                       {"strategy", profile.at(p).label()},
                       {"initial_profile", std::vector<Count>(init.begin(), init.end())},
                       {"final_profile", std::vector<Count>(fin.begin(), fin.end())},
                       {"utilities", t.utilities(p)}});
  }
  json papers = json::array();
  for (const auto& y : t.years())
    for (const auto& paper : y.papers) {
      std::vector<std::size_t> authors;
      for (auto a : paper.authors) authors.push_back(a.index);
      papers.push_back({{"id", "y" + std::to_string(paper.id.year) + "-" + std::to_string(paper.id.seq)},
                        {"year", paper.year},
                        {"citations", paper.citations},
                        {"authors", authors}});
    }
  return {{"horizon", t.horizon()}, {"players", players}, {"papers", papers}};
}

json to_json(const OvertakeVerdict& v) {
  json j{{"verdict", to_string(v.verdict)},
         {"tail_start", v.evidence.tail_start},
         {"min_tail_diff", v.evidence.min_tail_diff},
         {"max_tail_diff", v.evidence.max_tail_diff}};
  j["stabilization_year"] = v.evidence.stabilization_year ? json(*v.evidence.stabilization_year) : json(nullptr);
  return j;
}

json to_json(const StabilityReport& r) {
  json j{{"stable", r.stable}, {"scope", "stable w.r.t. catalog"}, {"candidates", r.candidates}};
  if (!r.witness) {
    j["witness"] = nullptr;
    return j;
  }
  json coalition = json::array();
  for (auto p : r.witness->coalition) coalition.push_back(p.index);
  json deviators = json::array();
  for (const auto& d : r.witness->deviators)
    deviators.push_back({{"player", d.player.index}, {"strategy", d.strategy}, {"verdict", to_json(d.verdict)}});
  j["witness"] = {{"coalition", coalition}, {"deviators", deviators}};
  return j;
}

json to_json(const PredictorCorrelations& c) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"samples", c.samples},
          {"spearman",
           {{"h_index", opt(c.h_index)}, {"paper_count", opt(c.paper_count)}, {"citation_sum", opt(c.citation_sum)}}}};
}

void write_curve_csv(std::ostream& out, const Curve& curve) {
  out << "group_key,median,count\n";
  for (const auto& [key, bin] : curve) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, bin.median);
    out << key << ',' << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << ',' << bin.count << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace acgame
