#include "acgame/game.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <optional>
#include <sstream>

namespace acgame {

const CitationProfile& GameState::profile(PlayerId p) const {
  if (!contains(p)) throw RosterError("unknown player " + std::to_string(p.index));
  return profiles[p.index];
}

Count ActionPlan::total() const {
  Count sum = std::accumulate(solo.begin(), solo.end(), Count{0});
  for (const auto& [partner, slots] : joint) sum = std::accumulate(slots.begin(), slots.end(), sum);
  return sum;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnknownPlayer: return "UnknownPlayer";
    case ViolationKind::MissingPlan: return "MissingPlan";
    case ViolationKind::ConservationViolation: return "ConservationViolation";
    case ViolationKind::NegativeEntry: return "NegativeEntry";
    case ViolationKind::NonPositiveSolo: return "NonPositiveSolo";
    case ViolationKind::SelfPartner: return "SelfPartner";
    case ViolationKind::UnknownPartner: return "UnknownPartner";
  }
  return "?";
}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << to_string(violations[i].kind) << " (player " << violations[i].player.index << "): " << violations[i].detail;
  }
  return os.str();
}

}  // namespace

ActionError::ActionError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

SimulationError::SimulationError(int year, PlayerId player, const std::string& what)
    : std::runtime_error("year " + std::to_string(year) + ", player " + std::to_string(player.index) + ": " + what),
      year_(year),
      player_(player) {}

Count research_potential(const GameState& state, PlayerId player) { return state.h(player) + 1; }

std::vector<Violation> validate_action(const GameState& state, PlayerId player, const ActionPlan& plan) {
  std::vector<Violation> out;
  if (!state.contains(player)) {
    out.push_back({ViolationKind::UnknownPlayer, player, "player not in roster"});
    return out;
  }
  for (std::size_t i = 0; i < plan.solo.size(); ++i) {
    if (plan.solo[i] < 0)
      out.push_back({ViolationKind::NegativeEntry, player, "solo[" + std::to_string(i) + "] < 0"});
    else if (plan.solo[i] == 0)
      out.push_back({ViolationKind::NonPositiveSolo, player, "solo[" + std::to_string(i) + "] == 0"});
  }
  for (const auto& [partner, slots] : plan.joint) {
    const std::string key = "joint[" + std::to_string(partner.index) + "]";
    if (partner == player) out.push_back({ViolationKind::SelfPartner, player, key + " targets self"});
    if (!state.contains(partner)) out.push_back({ViolationKind::UnknownPartner, player, key + " not in roster"});
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (slots[i] < 0) out.push_back({ViolationKind::NegativeEntry, player, key + "[" + std::to_string(i) + "] < 0"});
  }
  const Count q = research_potential(state, player);
  const Count total = plan.total();
  if (total != q)
    out.push_back({ViolationKind::ConservationViolation, player,
                   "allocated " + std::to_string(total) + " but potential is " + std::to_string(q)});
  return out;
}

YearOutcome resolve_year(const GameState& state, std::span<const ActionPlan> plans) {
  std::vector<Violation> violations;
  if (plans.size() != state.players()) {
    const std::size_t first_missing = std::min(plans.size(), state.players());
    violations.push_back({ViolationKind::MissingPlan, PlayerId{first_missing},
                          "expected " + std::to_string(state.players()) + " plans, got " + std::to_string(plans.size())});
    throw ActionError(std::move(violations));
  }
  for (std::size_t a = 0; a < plans.size(); ++a) {
    auto v = validate_action(state, PlayerId{a}, plans[a]);
    violations.insert(violations.end(), v.begin(), v.end());
  }
  if (!violations.empty()) throw ActionError(std::move(violations));

  YearOutcome out{state, {}};
  const int year = state.year + 1;
  std::size_t seq = 0;
  auto publish = [&](Count citations, std::vector<PlayerId> authors) {
    for (PlayerId a : authors) out.state.profiles[a.index].insert(citations);
    out.papers.push_back(Paper{PaperId{year, seq++}, year, citations, std::move(authors)});
  };

  for (std::size_t a = 0; a < plans.size(); ++a)
    for (Count q : plans[a].solo) publish(q, {PlayerId{a}});

  static const std::vector<Count> kNone;
  for (std::size_t a = 0; a < plans.size(); ++a) {
    for (const auto& [partner, mine] : plans[a].joint) {
      if (partner.index < a) continue;  // handled from the lower id's side
      auto it = plans[partner.index].joint.find(PlayerId{a});
      const auto& theirs = it == plans[partner.index].joint.end() ? kNone : it->second;
      const std::size_t slots = std::max(mine.size(), theirs.size());
      for (std::size_t i = 0; i < slots; ++i) {
        const Count qa = i < mine.size() ? mine[i] : 0;
        const Count qb = i < theirs.size() ? theirs[i] : 0;
        if (qa + qb <= 0) continue;
        std::vector<PlayerId> authors;
        if (qa > 0) authors.push_back(PlayerId{a});
        if (qb > 0) authors.push_back(partner);
        publish(qa + qb, std::move(authors));
      }
    }
    // Joint slots aimed at a lower-id player who did not reciprocate.
    for (const auto& [partner, mine] : plans[a].joint) {
      if (partner.index > a) continue;
      if (plans[partner.index].joint.contains(PlayerId{a})) continue;
      for (Count q : mine)
        if (q > 0) publish(q, {PlayerId{a}});
    }
  }
  out.state.year = year;
  return out;
}

// ---------------------------------------------------------------------------

std::string Strategy::label() const {
  if (params.empty()) return name;
  std::string s = name + "{";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) s += ',';
    first = false;
    s += k + "=" + std::to_string(v);
  }
  return s + "}";
}

const Strategy& StrategyProfile::at(PlayerId p) const {
  if (p.index >= strategies_.size()) throw RosterError("no strategy for player " + std::to_string(p.index));
  return strategies_[p.index];
}

void StrategyProfile::assign(PlayerId p, Strategy s) {
  if (p.index >= strategies_.size()) throw RosterError("no strategy slot for player " + std::to_string(p.index));
  strategies_[p.index] = std::move(s);
}

UtilitySeries Trajectory::utilities(PlayerId p) const {
  if (!initial_.contains(p)) throw RosterError("unknown player " + std::to_string(p.index));
  UtilitySeries out;
  out.reserve(years_.size());
  for (const auto& y : years_) out.push_back(y.utilities[p.index]);
  return out;
}

CitationProfile Trajectory::profile_at(int year, PlayerId p) const {
  if (year < 0 || static_cast<std::size_t>(year) > years_.size())
    throw std::out_of_range("year " + std::to_string(year) + " outside trajectory");
  CitationProfile out = initial_.profile(p);
  for (int y = 0; y < year; ++y)
    for (const auto& paper : years_[static_cast<std::size_t>(y)].papers)
      if (std::find(paper.authors.begin(), paper.authors.end(), p) != paper.authors.end()) out.insert(paper.citations);
  return out;
}

Trajectory run_game(const GameState& initial, const StrategyProfile& profile, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1, got " + std::to_string(horizon));
  if (profile.size() != initial.players())
    throw std::invalid_argument("strategy profile covers " + std::to_string(profile.size()) + " players, roster has " +
                                std::to_string(initial.players()));
  const std::size_t n = initial.players();
  GameState state = initial;
  std::vector<YearRecord> years;
  years.reserve(static_cast<std::size_t>(horizon));
  std::vector<ActionPlan> plans(n);

  for (int step = 0; step < horizon; ++step) {
    const int year = state.year + 1;
    YearRecord rec;
    rec.year = year;
    rec.potential.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      rec.potential[a] = research_potential(state, PlayerId{a});
      try {
        plans[a] = profile.at(PlayerId{a})(state, PlayerId{a});
      } catch (const std::exception& e) {
        throw SimulationError(year, PlayerId{a}, e.what());
      }
    }
    YearOutcome outcome;
    try {
      outcome = resolve_year(state, plans);
    } catch (const ActionError& e) {
      throw SimulationError(year, e.violations().front().player, e.what());
    } catch (const CitationOverflow& e) {
      throw SimulationError(year, PlayerId{0}, e.what());
    }
    state = std::move(outcome.state);
    rec.papers = std::move(outcome.papers);
    rec.utilities.resize(n);
    rec.papers_published.assign(n, 0);
    rec.new_citations.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) rec.utilities[a] = state.h(PlayerId{a});
    for (const auto& paper : rec.papers)
      for (PlayerId a : paper.authors) {
        rec.papers_published[a.index] += 1;
        rec.new_citations[a.index] += paper.citations;
      }
    years.push_back(std::move(rec));
  }
  return Trajectory(initial, std::move(years), std::move(state));
}

std::vector<Trajectory> run_games(std::span<const GameSetup> setups, Execution mode) {
  const auto count = static_cast<std::ptrdiff_t>(setups.size());
  std::vector<std::optional<Trajectory>> slots(setups.size());
  std::vector<std::exception_ptr> errors(setups.size());

  if (mode == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto& s = setups[static_cast<std::size_t>(i)];
      slots[static_cast<std::size_t>(i)] = run_game(s.initial, s.profile, s.horizon);
    }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      try {
        slots[idx] = run_game(setups[idx].initial, setups[idx].profile, setups[idx].horizon);
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<Trajectory> out;
  out.reserve(slots.size());
  for (auto& t : slots) out.push_back(std::move(*t));
  return out;
}

}  // namespace acgame
