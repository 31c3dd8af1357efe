#include <doctest.h>

#include <random>
#include <set>

#include "acgame/strategies.hpp"

using namespace acgame;

namespace {

const PlayerId a{0}, b{1}, c{2}, d{3};

GameState single(CitationProfile z) { return GameState{0, {std::move(z)}}; }

GameState pair_state(CitationProfile za, CitationProfile zb) { return GameState{0, {std::move(za), std::move(zb)}}; }

}  // namespace

TEST_CASE("solo strategies") {
  const auto fresh = single({});
  CHECK(solo_single_paper()(fresh, a).solo == std::vector<Count>{1});

  const auto q4 = single({3, 3, 3});
  CHECK(solo_single_paper()(q4, a).solo == std::vector<Count>{4});
  CHECK(solo_single_paper()(single({20, 20, 20, 20, 20, 20, 20, 20, 20, 20}), a).solo == std::vector<Count>{11});
  CHECK(solo_split(2)(single({9, 9, 9, 9}), a).solo == std::vector<Count>{3, 2});
  CHECK(solo_split(2)(q4, a).solo == std::vector<Count>{2, 2});
  CHECK(solo_split(3)(q4, a).solo == std::vector<Count>{2, 1, 1});
  CHECK(solo_split(3)(fresh, a).solo == std::vector<Count>{1});
  CHECK(solo_split(5)(pair_state({1, 1}, {}), a).solo == std::vector<Count>{1, 1});

  CHECK_THROWS_AS(solo_split(1), StrategyParameterError);
  CHECK_THROWS_AS(solo_split(0), StrategyParameterError);
}

TEST_CASE("pair strategies") {
  const auto fresh = pair_state({}, {});
  const auto pa = pair_single_joint(b)(fresh, a);
  CHECK(pa.solo.empty());
  CHECK(pa.joint.at(b) == std::vector<Count>{1});
  CHECK(pair_single_joint(b)(pair_state({2, 2}, {}), a).joint.at(b) == std::vector<Count>{3});
  CHECK_THROWS_AS(pair_single_joint(a)(fresh, a), StrategyParameterError);
  CHECK_THROWS_AS(pair_two_joint_even_split(a)(fresh, a), StrategyParameterError);

  const auto q4 = pair_state({3, 3, 3}, {3, 3, 3});
  CHECK(pair_two_joint_even_split(b)(q4, a).joint.at(b) == std::vector<Count>{2, 2});
  CHECK(pair_two_joint_even_split(a)(q4, b).joint.at(a) == std::vector<Count>{2, 2});

  const auto q3 = pair_state({2, 2}, {2, 2});
  CHECK(pair_two_joint_even_split(b)(q3, a).joint.at(b) == std::vector<Count>{2, 1});
  CHECK(pair_two_joint_even_split(a)(q3, b).joint.at(a) == std::vector<Count>{1, 2});

  CHECK(pair_two_joint_even_split(b)(fresh, a).joint.at(b) == std::vector<Count>{1});
}

TEST_CASE("labels and the parameter parser") {
  CHECK(solo_single_paper().label() == "solo_single_paper");
  CHECK(solo_split(3).label() == "solo_split{k=3}");
  CHECK(pair_single_joint(b).label() == "pair_single_joint{partner=1}");
  CHECK(coalition_switch(c, b).label() == "theorem6_deviation{ally=2,old_partner=1}");

  const auto [name, params] = parse_strategy_label("solo_split{k=4}");
  CHECK(name == "solo_split");
  CHECK(params.at("k") == 4);
  CHECK(parse_strategy_label("solo_single_paper").second.empty());
  CHECK_THROWS(parse_strategy_label("solo_split{k=}"));
  CHECK_THROWS(parse_strategy_label("solo_split{k=2"));

  CHECK(make_strategy("pair_single_joint", {{"partner", 3}}).label() == "pair_single_joint{partner=3}");
  CHECK_THROWS_AS(make_strategy("nope", {}), StrategyParameterError);
  CHECK_THROWS_AS(make_strategy("solo_split", {}), StrategyParameterError);
  CHECK_THROWS_AS(make_strategy("pair_single_joint", {{"partner", -1}}), StrategyParameterError);
}

TEST_CASE("coalition switch schedule") {
  const auto s = coalition_switch(c, b);
  GameState st{0, {CitationProfile{3, 3, 3}, {}, {}, {}}};  // Q = 4
  auto plan_at = [&](int year) {
    st.year = year - 1;
    return s(st, a);
  };
  for (int y : {1, 2}) {
    const auto p = plan_at(y);
    CHECK(p.joint.size() == 1);
    CHECK(p.joint.at(b) == std::vector<Count>{4});
  }
  for (int y : {3, 7}) {
    const auto p = plan_at(y);
    CHECK(p.joint.at(b) == std::vector<Count>{1});
    CHECK(p.joint.at(c) == std::vector<Count>{3});
  }
  for (int y : {4, 5, 6, 8, 50}) {
    const auto p = plan_at(y);
    CHECK(p.joint.size() == 1);
    CHECK(p.joint.at(c) == std::vector<Count>{4});
  }

  // Year 3 with Q = 3.
  GameState q3{2, {CitationProfile{2, 2}, {}, {}, {}}};
  const auto y3 = s(q3, a);
  CHECK(y3.joint.at(b) == std::vector<Count>{1});
  CHECK(y3.joint.at(c) == std::vector<Count>{2});

  const auto both = theorem6_deviation(a, c, b, d);
  CHECK(both.at(a).label() == "theorem6_deviation{ally=2,old_partner=1}");
  CHECK(both.at(c).label() == "theorem6_deviation{ally=0,old_partner=3}");
  CHECK_THROWS_AS(theorem6_deviation(a, a, b, d), StrategyParameterError);
}

TEST_CASE("matching profiles") {
  const auto m = matching_profile(4, {{a, b}, {c, d}});
  CHECK(m.at(a).label() == "pair_single_joint{partner=1}");
  CHECK(m.at(b).label() == "pair_single_joint{partner=0}");
  CHECK(m.at(d).label() == "pair_single_joint{partner=2}");

  CHECK_THROWS_AS(matching_profile(3, {{a, b}}), MatchingError);
  CHECK_THROWS_AS(matching_profile(4, {{a, b}, {b, c}}), MatchingError);
  CHECK_THROWS_AS(matching_profile(2, {{a, a}}), MatchingError);
  CHECK_THROWS_AS(matching_profile(2, {{a, PlayerId{5}}}), MatchingError);
}

TEST_CASE("catalog selection") {
  std::set<std::string> names;
  for (const auto& f : builtin_catalog()) names.insert(f.name);
  CHECK(names == std::set<std::string>{"solo_single_paper", "solo_split", "pair_single_joint",
                                       "pair_two_joint_even_split", "theorem6_deviation"});
  const std::vector<std::string> pick{"solo_split{k=2}", "pair_single_joint"};
  CHECK(select_catalog(pick).size() == 2);
  const std::vector<std::string> bad{"nope"};
  CHECK_THROWS(select_catalog(bad));
}

TEST_CASE("catalog candidates produce valid plans on random states") {
  std::mt19937_64 rng(99);
  const auto catalog = builtin_catalog();
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
    GameState st{std::uniform_int_distribution<int>(0, 12)(rng), {}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Count> z(std::uniform_int_distribution<std::size_t>(0, 8)(rng));
      for (auto& v : z) v = std::uniform_int_distribution<Count>(0, 12)(rng);
      st.profiles.emplace_back(z);
    }
    const auto baseline = uniform_profile(n, solo_single_paper());
    const std::vector<PlayerId> coalition{PlayerId{0}, PlayerId{1}};
    for (const auto& family : catalog) {
      for (std::size_t self = 0; self < 2; ++self) {
        DeviationContext ctx{PlayerId{self}, coalition, baseline, n};
        for (const auto& s : family.candidates(ctx)) {
          const auto plan = s(st, PlayerId{self});
          const auto violations = validate_action(st, PlayerId{self}, plan);
          CHECK_MESSAGE(violations.empty(), s.label());
          // Determinism: same inputs, same plan.
          const auto again = s(st, PlayerId{self});
          CHECK(again.solo == plan.solo);
          CHECK(again.joint == plan.joint);
        }
      }
    }
  }
}

TEST_CASE("pair trajectories hit their hand-simulated anchors") {
  const auto even = run_game(GameState::empty(2),
                             StrategyProfile({pair_two_joint_even_split(b), pair_two_joint_even_split(a)}), 400);
  const auto u = even.utilities(a);
  CHECK(u == even.utilities(b));
  CHECK(u[0] == 1);
  CHECK(u[1] == 2);
  CHECK(u[3] == 3);
  // The first year reaching h is sum_{i<=h} ceil(i/2).
  Count first_year = 0;
  for (Count h = 1; h <= u.back(); ++h) {
    first_year += (h + 1) / 2;
    CHECK(u[static_cast<std::size_t>(first_year - 1)] == h);
    if (first_year > 1) CHECK(u[static_cast<std::size_t>(first_year - 2)] == h - 1);
  }

  const auto single = run_game(GameState::empty(2), StrategyProfile({pair_single_joint(b), pair_single_joint(a)}), 11);
  const auto s = single.utilities(a);
  CHECK(s[1] == 2);
  CHECK(s[3] == 3);
  CHECK(s[10] == 7);
}
