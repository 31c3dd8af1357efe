#include "acgame/strategies.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>

namespace acgame {

namespace {

std::int64_t as_param(PlayerId p) { return static_cast<std::int64_t>(p.index); }

void require_distinct(std::initializer_list<PlayerId> ids, const std::string& what) {
  std::set<PlayerId> seen(ids);
  if (seen.size() != ids.size()) throw StrategyParameterError(what + ": players must be distinct");
}

}  // namespace

Strategy solo_single_paper() {
  return Strategy{"solo_single_paper", {}, [](const GameState& state, PlayerId self) {
                    ActionPlan plan;
                    plan.solo.push_back(research_potential(state, self));
                    return plan;
                  }};
}

Strategy solo_split(int k) {
  if (k < 2) throw StrategyParameterError("solo_split requires k >= 2, got " + std::to_string(k));
  return Strategy{"solo_split", {{"k", k}}, [k](const GameState& state, PlayerId self) {
                    const Count q = research_potential(state, self);
                    const Count parts = std::min<Count>(q, k);
                    ActionPlan plan;
                    for (Count i = 0; i < parts; ++i) plan.solo.push_back(q / parts + (i < q % parts ? 1 : 0));
                    return plan;
                  }};
}

Strategy pair_single_joint(PlayerId partner) {
  return Strategy{"pair_single_joint", {{"partner", as_param(partner)}}, [partner](const GameState& state, PlayerId self) {
                    if (self == partner) throw StrategyParameterError("pair_single_joint: partner is self");
                    ActionPlan plan;
                    plan.joint[partner] = {research_potential(state, self)};
                    return plan;
                  }};
}

Strategy pair_two_joint_even_split(PlayerId partner) {
  return Strategy{"pair_two_joint_even_split", {{"partner", as_param(partner)}},
                  [partner](const GameState& state, PlayerId self) {
                    if (self == partner) throw StrategyParameterError("pair_two_joint_even_split: partner is self");
                    const Count q = research_potential(state, self);
                    ActionPlan plan;
                    if (q == 1) {
                      plan.joint[partner] = {1};
                    } else if (self < partner) {
                      plan.joint[partner] = {(q + 1) / 2, q / 2};
                    } else {
                      plan.joint[partner] = {q / 2, (q + 1) / 2};
                    }
                    return plan;
                  }};
}

Strategy coalition_switch(PlayerId ally, PlayerId old_partner) {
  if (ally == old_partner) throw StrategyParameterError("theorem6_deviation: ally and old partner must differ");
  return Strategy{"theorem6_deviation",
                  {{"ally", as_param(ally)}, {"old_partner", as_param(old_partner)}},
                  [ally, old_partner](const GameState& state, PlayerId self) {
                    if (self == ally || self == old_partner)
                      throw StrategyParameterError("theorem6_deviation: self must differ from ally and old partner");
                    const int year = state.year + 1;
                    const Count q = research_potential(state, self);
                    ActionPlan plan;
                    if (year <= 2) {
                      plan.joint[old_partner] = {q};
                    } else if (year == 3 || year == 7) {
                      plan.joint[old_partner] = {1};
                      if (q > 1) plan.joint[ally] = {q - 1};
                    } else {
                      plan.joint[ally] = {q};
                    }
                    return plan;
                  }};
}

std::map<PlayerId, Strategy> theorem6_deviation(PlayerId a1, PlayerId a2, PlayerId a1p, PlayerId a2p) {
  require_distinct({a1, a2, a1p, a2p}, "theorem6_deviation");
  return {{a1, coalition_switch(a2, a1p)}, {a2, coalition_switch(a1, a2p)}};
}

StrategyProfile matching_profile(std::size_t roster, const Matching& matching) {
  if (roster % 2 != 0) throw MatchingError("no perfect matching exists on an odd roster of " + std::to_string(roster));
  std::vector<int> seen(roster, 0);
  for (const auto& [a, b] : matching) {
    if (a.index >= roster || b.index >= roster) throw MatchingError("matched player outside roster");
    if (a == b) throw MatchingError("player matched with itself");
    ++seen[a.index];
    ++seen[b.index];
  }
  for (std::size_t i = 0; i < roster; ++i)
    if (seen[i] != 1) throw MatchingError("player " + std::to_string(i) + " appears in " + std::to_string(seen[i]) + " pairs");
  std::vector<Strategy> out(roster);
  for (const auto& [a, b] : matching) {
    out[a.index] = pair_single_joint(b);
    out[b.index] = pair_single_joint(a);
  }
  return StrategyProfile(std::move(out));
}

StrategyProfile uniform_profile(std::size_t roster, const Strategy& s) {
  return StrategyProfile(std::vector<Strategy>(roster, s));
}

namespace {

std::int64_t require_param(const StrategyParams& params, const std::string& strategy, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw StrategyParameterError(strategy + " requires parameter '" + key + "'");
  return it->second;
}

PlayerId require_player(const StrategyParams& params, const std::string& strategy, const std::string& key) {
  auto v = require_param(params, strategy, key);
  if (v < 0) throw StrategyParameterError(strategy + ": '" + key + "' must be a player id");
  return PlayerId{static_cast<std::size_t>(v)};
}

void reject_unknown(const StrategyParams& params, const std::string& strategy, std::initializer_list<const char*> known) {
  for (const auto& [k, v] : params)
    if (std::none_of(known.begin(), known.end(), [&](const char* n) { return k == n; }))
      throw StrategyParameterError(strategy + ": unknown parameter '" + k + "'");
}

}  // namespace

Strategy make_strategy(std::string_view name_view, const StrategyParams& params) {
  const std::string name(name_view);
  if (name == "solo_single_paper") {
    reject_unknown(params, name, {});
    return solo_single_paper();
  }
  if (name == "solo_split") {
    reject_unknown(params, name, {"k"});
    return solo_split(static_cast<int>(require_param(params, name, "k")));
  }
  if (name == "pair_single_joint") {
    reject_unknown(params, name, {"partner"});
    return pair_single_joint(require_player(params, name, "partner"));
  }
  if (name == "pair_two_joint_even_split") {
    reject_unknown(params, name, {"partner"});
    return pair_two_joint_even_split(require_player(params, name, "partner"));
  }
  if (name == "theorem6_deviation") {
    reject_unknown(params, name, {"ally", "old_partner"});
    return coalition_switch(require_player(params, name, "ally"), require_player(params, name, "old_partner"));
  }
  throw StrategyParameterError("unknown strategy '" + name + "'");
}

std::pair<std::string, StrategyParams> parse_strategy_label(std::string_view label) {
  const auto brace = label.find('{');
  if (brace == std::string_view::npos) return {std::string(label), {}};
  if (label.back() != '}') throw StrategyParameterError("malformed strategy label '" + std::string(label) + "'");
  std::string name(label.substr(0, brace));
  StrategyParams params;
  std::string_view body = label.substr(brace + 1, label.size() - brace - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw StrategyParameterError("malformed parameter '" + std::string(item) + "' in '" + std::string(label) + "'");
    std::int64_t value = 0;
    const auto digits = item.substr(eq + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw StrategyParameterError("parameter '" + std::string(item.substr(0, eq)) + "' is not an integer");
    params[std::string(item.substr(0, eq))] = value;
  }
  return {name, params};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<PlayerId> partner_candidates(const DeviationContext& ctx) {
  std::vector<PlayerId> out;
  if (ctx.coalition.size() >= 2) {
    for (PlayerId p : ctx.coalition)
      if (p != ctx.self) out.push_back(p);
  } else {
    for (std::size_t i = 0; i < ctx.roster; ++i)
      if (PlayerId{i} != ctx.self) out.push_back(PlayerId{i});
  }
  return out;
}

template <typename Make>
DeviationFamily pair_family(std::string name, Make make) {
  return DeviationFamily{std::move(name), [make](const DeviationContext& ctx) {
                           std::vector<Strategy> out;
                           for (PlayerId p : partner_candidates(ctx)) out.push_back(make(p));
                           return out;
                         }};
}

DeviationFamily split_family(std::vector<int> widths) {
  return DeviationFamily{"solo_split", [widths](const DeviationContext&) {
                           std::vector<Strategy> out;
                           for (int k : widths) out.push_back(solo_split(k));
                           return out;
                         }};
}

// Partner a player is matched with in the baseline, if it plays
// pair_single_joint.
std::optional<PlayerId> matched_partner(const StrategyProfile& baseline, PlayerId p) {
  const auto& s = baseline.at(p);
  if (s.name != "pair_single_joint") return std::nullopt;
  return PlayerId{static_cast<std::size_t>(s.params.at("partner"))};
}

DeviationFamily cross_pair_family() {
  return DeviationFamily{"theorem6_deviation", [](const DeviationContext& ctx) -> std::vector<Strategy> {
                           if (ctx.coalition.size() != 2) return {};
                           const PlayerId ally = ctx.coalition[0] == ctx.self ? ctx.coalition[1] : ctx.coalition[0];
                           auto mine = matched_partner(ctx.baseline, ctx.self);
                           auto theirs = matched_partner(ctx.baseline, ally);
                           if (!mine || !theirs) return {};
                           std::set<PlayerId> four{ctx.self, ally, *mine, *theirs};
                           if (four.size() != 4) return {};
                           return {coalition_switch(ally, *mine)};
                         }};
}

}  // namespace

std::vector<DeviationFamily> builtin_catalog() {
  return {
      DeviationFamily{"solo_single_paper", [](const DeviationContext&) { return std::vector<Strategy>{solo_single_paper()}; }},
      split_family({2, 3}),
      pair_family("pair_single_joint", pair_single_joint),
      pair_family("pair_two_joint_even_split", pair_two_joint_even_split),
      cross_pair_family(),
  };
}

std::vector<DeviationFamily> select_catalog(std::span<const std::string> names) {
  const auto all = builtin_catalog();
  std::vector<DeviationFamily> out;
  for (const auto& label : names) {
    auto [name, params] = parse_strategy_label(label);
    if (name == "solo_split" && !params.empty()) {
      reject_unknown(params, name, {"k"});
      const auto k = static_cast<int>(require_param(params, name, "k"));
      solo_split(k);  // validates k
      out.push_back(split_family({k}));
      continue;
    }
    if (!params.empty()) throw StrategyParameterError("catalog entry '" + label + "' takes no parameters");
    auto it = std::find_if(all.begin(), all.end(), [&](const DeviationFamily& f) { return f.name == name; });
    if (it == all.end()) throw StrategyParameterError("unknown catalog entry '" + label + "'");
    out.push_back(*it);
  }
  return out;
}

}  // namespace acgame
