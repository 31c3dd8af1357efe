#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "acgame/analysis.hpp"
#include "acgame/calibration.hpp"
#include "acgame/io.hpp"
#include "acgame/strategies.hpp"
#include "acgame/verify.hpp"

namespace acgame::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void emit(const std::string& text, const std::optional<fs::path>& path, std::ostream& out) {
  if (path)
    write_text_file(*path, text);
  else
    out << text;
}

fs::path sidecar_for(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".json");
  return p;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> horizon;
};

int simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  auto cfg = load_game_config(a.config);
  const int horizon = a.horizon.value_or(cfg.horizon);
  const auto t = run_game(cfg.initial, cfg.strategies, horizon);

  std::optional<fs::path> csv_path = cfg.trajectory_out;
  if (a.out) csv_path = fs::path(*a.out);
  std::optional<fs::path> sidecar = cfg.sidecar_out;
  if (!sidecar && csv_path) sidecar = sidecar_for(*csv_path);

  std::ostringstream csv;
  write_trajectory_csv(csv, t);
  emit(csv.str(), csv_path, out);
  if (sidecar) write_text_file(*sidecar, trajectory_sidecar(t, cfg.strategies).dump(2) + "\n");
  if (csv_path) err << "wrote " << csv_path->string() << (sidecar ? " and " + sidecar->string() : "") << "\n";
  return kOk;
}

// --- compare ----------------------------------------------------------------

struct CompareArgs {
  std::string config;
  std::optional<std::string> against;
  int horizon = kDefaultHorizon;
  double burn_in = kDefaultBurnIn;
  std::optional<std::string> out;
};

int compare(const CompareArgs& a, std::ostream& out, std::ostream&) {
  const auto first = load_game_config(a.config);
  StrategyProfile second;
  if (a.against) {
    const auto other = load_game_config(*a.against);
    if (other.initial.profiles != first.initial.profiles)
      throw ValidationFailure("roster mismatch: the two configs must declare the same players and initial profiles");
    second = other.strategies;
  } else if (first.alternative) {
    second = *first.alternative;
  } else {
    throw ValidationFailure("compare needs --against CONFIG or an \"alternative\" block in the config");
  }
  const auto ta = run_game(first.initial, first.strategies, a.horizon);
  const auto tb = run_game(first.initial, second, a.horizon);
  json players = json::array();
  for (std::size_t p = 0; p < first.initial.players(); ++p) {
    const PlayerId id{p};
    players.push_back({{"player", p},
                       {"first", first.strategies.at(id).label()},
                       {"second", second.at(id).label()},
                       {"result", to_json(overtakes(ta.utilities(id), tb.utilities(id), a.burn_in))}});
  }
  json report{{"horizon", a.horizon}, {"burn_in", a.burn_in}, {"players", players}};
  emit(report.dump(2) + "\n", a.out ? std::optional<fs::path>(*a.out) : std::nullopt, out);
  return kOk;
}

// --- stability --------------------------------------------------------------

struct StabilityArgs {
  std::string config;
  std::string catalog;
  int k = 2;
  int horizon = kDefaultHorizon;
  double burn_in = kDefaultBurnIn;
  std::optional<std::string> out;
};

int stability(const StabilityArgs& a, std::ostream& out, std::ostream&) {
  const auto cfg = load_game_config(a.config);
  std::vector<DeviationFamily> catalog;
  std::vector<std::string> names;
  if (a.catalog.empty()) {
    catalog = builtin_catalog();
    for (const auto& f : catalog) names.push_back(f.name);
  } else {
    names = split_list(a.catalog);
    catalog = select_catalog(names);
  }
  StabilityQuery q{cfg.initial, cfg.strategies, catalog, a.k, a.horizon, a.burn_in};
  const auto report = find_unstable_set(q);
  json j = to_json(report);
  j["k"] = a.k;
  j["horizon"] = a.horizon;
  j["burn_in"] = a.burn_in;
  j["catalog"] = names;
  emit(j.dump(2) + "\n", a.out ? std::optional<fs::path>(*a.out) : std::nullopt, out);
  return kOk;
}

// --- verify -----------------------------------------------------------------

int verify(std::optional<int> horizon, std::ostream& out) {
  VerifyOptions opt;
  opt.horizon = horizon;
  const auto results = run_acceptance(opt);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << "  (" << std::fixed
        << std::setprecision(2) << r.seconds << " s)\n      " << r.measured << "\n";
  }
  out << (all ? "all checks passed\n" : "some checks failed\n");
  return all ? kOk : kVerificationFailure;
}

// --- calibrate --------------------------------------------------------------

struct CalibrateArgs {
  std::string corpus;
  std::string format = "csv";
  std::string analyses = "single,two,reinvestment,correlation";
  std::string out;
  std::size_t min_group = 1;
};

int calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
  const auto loaded = load_corpus(fs::path(a.corpus), parse_corpus_format(a.format));
  for (const auto& r : loaded.rejects) err << "rejected line " << r.line << ": " << r.reason << "\n";
  if (loaded.corpus.empty()) err << "warning: corpus is empty\n";

  const fs::path dir(a.out);
  fs::create_directories(dir);
  CurveOptions opts{a.min_group};
  for (const auto& name : split_list(a.analyses)) {
    std::optional<Curve> curve;
    std::string file;
    if (name == "single") {
      curve = single_author_curve(loaded.corpus, opts);
      file = "single_author.csv";
    } else if (name == "two") {
      curve = two_author_curve(loaded.corpus, opts);
      file = "two_author.csv";
    } else if (name == "reinvestment") {
      curve = reinvestment_curve(loaded.corpus, opts);
      file = "reinvestment.csv";
    } else if (name == "correlation") {
      json j = to_json(predictor_correlations(loaded.corpus));
      j["records"] = loaded.corpus.size();
      j["rejected"] = loaded.rejects.size();
      write_text_file(dir / "correlations.json", j.dump(2) + "\n");
      out << (dir / "correlations.json").string() << "\n";
      continue;
    } else {
      throw ValidationFailure("unknown analysis '" + name + "' (expected single, two, reinvestment, correlation)");
    }
    std::ostringstream csv;
    write_curve_csv(csv, *curve);
    write_text_file(dir / file, csv.str());
    out << (dir / file).string() << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Academic collaboration game toolkit", "acgame"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run a game config and write the per-year trajectory");
  c_sim->add_option("--config", sim.config, "Game config (JSON)")->required();
  c_sim->add_option("--out", sim.out, "Trajectory CSV path (default: config outputs or stdout)");
  c_sim->add_option("--horizon", sim.horizon, "Override the config horizon")->check(CLI::PositiveNumber);

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare", "Overtaking verdicts between two strategy profiles");
  c_cmp->add_option("--config", cmp.config, "Game config (JSON)")->required();
  c_cmp->add_option("--against", cmp.against, "Second config; defaults to the config's alternative block");
  c_cmp->add_option("--horizon", cmp.horizon, "Years to simulate")->check(CLI::PositiveNumber);
  c_cmp->add_option("--burn-in", cmp.burn_in, "Burn-in fraction in (0,1)");
  c_cmp->add_option("--out", cmp.out, "Report path (default stdout)");

  StabilityArgs stab;
  auto* c_stab = app.add_subcommand("stability", "Search for an unstable coalition of size <= k");
  c_stab->add_option("--config", stab.config, "Game config (JSON)")->required();
  c_stab->add_option("--catalog", stab.catalog, "Deviation families, comma separated (default: all)");
  c_stab->add_option("--k", stab.k, "Maximum coalition size")->check(CLI::IsMember({1, 2}));
  c_stab->add_option("--horizon", stab.horizon, "Years to simulate")->check(CLI::PositiveNumber);
  c_stab->add_option("--burn-in", stab.burn_in, "Burn-in fraction in (0,1)");
  c_stab->add_option("--out", stab.out, "Report path (default stdout)");

  std::optional<int> verify_horizon;
  auto* c_ver = app.add_subcommand("verify", "Run the model acceptance checks");
  c_ver->add_option("--horizon", verify_horizon, "Override trajectory length and verdict horizon (fits keep 10000)")
      ->check(CLI::PositiveNumber);

  CalibrateArgs cal;
  auto* c_cal = app.add_subcommand("calibrate", "Median curves and rank correlations on a publication corpus");
  c_cal->add_option("--corpus", cal.corpus, "Corpus file")->required();
  c_cal->add_option("--format", cal.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  c_cal->add_option("--analysis", cal.analyses, "single,two,reinvestment,correlation");
  c_cal->add_option("--out", cal.out, "Output directory")->required();
  c_cal->add_option("--min-group", cal.min_group, "Minimum papers per emitted bin");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (*c_sim) return simulate(sim, out, err);
    if (*c_cmp) return compare(cmp, out, err);
    if (*c_stab) return stability(stab, out, err);
    if (*c_ver) return verify(verify_horizon, out);
    if (*c_cal) return calibrate(cal, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kValidationError;
  } catch (const CorpusError& e) {
    err << "corpus error: " << e.what() << "\n";
    return kValidationError;
  } catch (const SimulationError& e) {
    err << "simulation error: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kValidationError;
}

}  // namespace acgame::cli
