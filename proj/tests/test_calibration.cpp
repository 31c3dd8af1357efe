#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "acgame/calibration.hpp"
#include "acgame/strategies.hpp"

using namespace acgame;

namespace {

LoadResult load_csv(const std::string& text, const LoadOptions& opts = {}) {
  std::istringstream in(text);
  return load_corpus(in, CorpusFormat::Csv, opts);
}

Corpus corpus_of(std::vector<PublicationRecord> records) { return Corpus(std::move(records)); }

PublicationRecord rec(std::string id, int year, Count cit, std::vector<std::string> authors) {
  return {std::move(id), year, cit, std::move(authors)};
}

// Ranks with ties averaged, then Pearson; written out independently.
double spearman_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double w : v) {
        if (w < v[i]) ++less;
        if (w == v[i]) ++equal;
      }
      r[i] = less + (equal + 1) / 2;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("load_corpus examples") {
  const auto empty = load_csv("");
  CHECK(empty.corpus.empty());
  CHECK(empty.rejects.empty());

  const auto three = load_csv(
      "paper_id,year,citations,authors\n"
      "p1,2000,5,alice\n"
      "p2,2001,3,alice;bob\n"
      "\"p,3\",2001,0,bob\n");
  CHECK(three.corpus.size() == 3);
  CHECK(three.rejects.empty());
  CHECK(three.corpus.records()[1].authors == std::vector<std::string>{"alice", "bob"});
  CHECK(three.corpus.records()[2].paper_id == "p,3");

  std::string text = "paper_id,year,citations,authors\n";
  for (int i = 0; i < 9; ++i) text += "q" + std::to_string(i) + ",2000,1,a\n";
  text += "bad,2000,-4,a\n";
  const auto one_bad = load_csv(text);
  CHECK(one_bad.corpus.size() == 9);
  REQUIRE(one_bad.rejects.size() == 1);
  CHECK(one_bad.rejects[0].line == 11);
}

TEST_CASE("load_corpus rejects and aborts") {
  CHECK_THROWS_AS(load_csv("id,year,citations,authors\np,2000,1,a\n"), CorpusError);
  CHECK_THROWS_AS(load_csv("paper_id,year,citations,authors\np1,2000,-1,a\np2,2000,1,a\n"), CorpusError);

  std::string text = "paper_id,year,citations,authors\n";
  for (int i = 0; i < 20; ++i) text += "q" + std::to_string(i) + ",2000,1,a\n";
  text += "q0,2001,1,a\n";        // duplicate id
  text += "r1,1500,1,a\n";        // year out of range
  const auto r = load_csv(text);
  CHECK(r.corpus.size() == 20);
  CHECK(r.rejects.size() == 2);

  const auto dup_author = load_csv("paper_id,year,citations,authors\n" + std::string(
      "a1,2000,1,x\na2,2000,1,x\na3,2000,1,x\na4,2000,1,x\na5,2000,1,x\n"
      "a6,2000,1,x\na7,2000,1,x\na8,2000,1,x\na9,2000,1,x\nz,2000,1,x;x\n"));
  CHECK(dup_author.rejects.size() == 1);
}

TEST_CASE("jsonl corpus") {
  std::istringstream in(
      "{\"paper_id\": \"a\", \"year\": 2000, \"citations\": 2, \"authors\": [\"x\", \"y\"]}\n"
      "\n"
      "{\"paper_id\": \"b\", \"year\": 2001, \"citations\": 4, \"authors\": \"x;z\"}\n");
  const auto r = load_corpus(in, CorpusFormat::Jsonl);
  CHECK(r.corpus.size() == 2);
  CHECK(r.corpus.records()[1].authors == std::vector<std::string>{"x", "z"});
  CHECK(r.corpus.papers_of("x").size() == 2);
  CHECK(r.corpus.paper_count_in_year("x", 2001) == 1);
  CHECK_THROWS_AS(r.corpus.papers_of("nobody"), UnknownAuthor);
  CHECK(parse_corpus_format("jsonl") == CorpusFormat::Jsonl);
  CHECK_THROWS(parse_corpus_format("xml"));
}

TEST_CASE("author_h_at_year uses strictly earlier years") {
  const auto c = corpus_of({rec("1", 2000, 5, {"a"}), rec("2", 2000, 4, {"a"}), rec("3", 2000, 3, {"a"}),
                            rec("4", 2000, 2, {"a"}), rec("5", 2000, 1, {"a"}), rec("6", 2001, 9, {"b"})});
  CHECK(author_h_at_year(c, "a", 2001) == 3);
  CHECK(author_h_at_year(c, "a", 2000) == 0);
  CHECK(author_h_at_year(c, "a", 1990) == 0);
  CHECK(author_h_at_year(c, "b", 2001) == 0);
}

TEST_CASE("spearman examples") {
  CHECK(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{10, 20, 30}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{30, 20, 10}) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 1, 4, 3}) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(spearman_oracle({1, 2, 3, 4}, {2, 1, 4, 3}) == doctest::Approx(0.6).epsilon(1e-9));

  CHECK_THROWS_AS(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), DegenerateInput);
  CHECK_THROWS_AS(spearman(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
  CHECK_THROWS_AS(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("spearman properties") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 40)(rng);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = std::uniform_int_distribution<int>(0, 8)(rng);
    for (auto& v : y) v = std::uniform_int_distribution<int>(0, 8)(rng);
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) continue;
    if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) continue;

    const double rho = spearman(x, y);
    CHECK(rho == doctest::Approx(spearman_oracle(x, y)).epsilon(1e-9));
    CHECK(rho >= -1.0 - 1e-12);
    CHECK(rho <= 1.0 + 1e-12);
    CHECK(spearman(y, x) == doctest::Approx(rho).epsilon(1e-12));

    std::vector<double> tx(n), neg(n);
    std::transform(x.begin(), x.end(), tx.begin(), [](double v) { return std::exp(v / 3) + 7; });
    std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
    CHECK(spearman(tx, y) == doctest::Approx(rho).epsilon(1e-9));
    CHECK(spearman(neg, y) == doctest::Approx(-rho).epsilon(1e-9));
  }
}

TEST_CASE("median convention") {
  CHECK(median({3, 5}) == 4.0);
  CHECK(median({9, 1, 2}) == 2.0);
  CHECK(median({7}) == 7.0);
  CHECK_THROWS(median({}));
}

TEST_CASE("single_author_curve examples") {
  CHECK(single_author_curve(Corpus{}).empty());
  CHECK(single_author_curve(corpus_of({rec("j", 2000, 3, {"a", "b"})})).empty());

  // Two same-year papers do not qualify, but give h = 2 afterwards.
  const auto one = corpus_of({rec("1", 1999, 5, {"a"}), rec("2", 1999, 5, {"a"}), rec("3", 2000, 7, {"a"})});
  const auto c1 = single_author_curve(one);
  CHECK(c1 == Curve{{2, CurveBin{7.0, 1}}});

  const auto two = corpus_of({rec("1", 1998, 1, {"u"}), rec("2", 1998, 1, {"u"}), rec("3", 2000, 3, {"u"}),
                              rec("4", 1998, 1, {"w"}), rec("5", 1998, 1, {"w"}), rec("6", 2000, 5, {"w"})});
  CHECK(single_author_curve(two) == Curve{{1, CurveBin{4.0, 2}}});
  CHECK(single_author_curve(two, CurveOptions{3}).empty());
}

TEST_CASE("two_author_curve examples") {
  CHECK(two_author_curve(Corpus{}).empty());
  // u has h 1 and v has h 2 before 2000.
  const auto c = corpus_of({rec("1", 1998, 1, {"u"}), rec("2", 1998, 1, {"u"}), rec("3", 1998, 2, {"v"}),
                            rec("4", 1998, 2, {"v"}), rec("5", 2000, 4, {"u", "v"})});
  CHECK(two_author_curve(c) == Curve{{3, CurveBin{4.0, 1}}});

  // A coauthor with another paper the same year disqualifies the pair.
  auto busy = c.records();
  busy.push_back(rec("6", 2000, 1, {"v", "q"}));
  CHECK(two_author_curve(corpus_of(busy)).empty());
}

TEST_CASE("reinvestment_curve examples") {
  CHECK(reinvestment_curve(Corpus{}).empty());
  CHECK(reinvestment_curve(corpus_of({rec("1", 2000, 1, {"a"})})) == Curve{{0, CurveBin{1.0, 1}}});

  // a has h 2, b has h 2 and c has h 1 before 2000.
  const auto c = corpus_of({rec("a1", 1998, 5, {"a"}), rec("a2", 1998, 5, {"a"}), rec("b1", 1998, 3, {"b"}),
                            rec("b2", 1998, 3, {"b"}), rec("c1", 1998, 1, {"c"}), rec("c2", 1998, 1, {"c"}),
                            rec("x", 2000, 5, {"a", "b"}), rec("y", 2000, 4, {"a", "c"})});
  const auto curve = reinvestment_curve(c);
  REQUIRE(curve.count(2) == 1);
  CHECK(curve.at(2).median == 6.0);
  CHECK(curve.at(2).count == 1);
}

TEST_CASE("curves do not depend on record order") {
  std::mt19937_64 rng(17);
  const auto t = run_game(GameState::empty(5),
                          StrategyProfile({pair_single_joint(PlayerId{1}), pair_single_joint(PlayerId{0}),
                                           solo_single_paper(), solo_split(2), pair_single_joint(PlayerId{2})}),
                          30);
  const auto base = corpus_from_trajectory(t);
  for (int iter = 0; iter < 5; ++iter) {
    auto shuffled = base.records();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Corpus c(shuffled);
    CHECK(single_author_curve(c) == single_author_curve(base));
    CHECK(two_author_curve(c) == two_author_curve(base));
    CHECK(reinvestment_curve(c) == reinvestment_curve(base));
  }
}

TEST_CASE("model-generated corpus lies on the additive curves") {
  const PlayerId p2{2}, p3{3};
  GameState init{0, {CitationProfile{4, 4, 4, 4}, CitationProfile{2, 2}, {}, {}, {}}};
  const auto t = run_game(init,
                          StrategyProfile({solo_single_paper(), solo_single_paper(), pair_single_joint(p3),
                                           pair_single_joint(p2), solo_single_paper()}),
                          40);
  const auto c = corpus_from_trajectory(t);
  const auto single = single_author_curve(c);
  REQUIRE_FALSE(single.empty());
  for (const auto& [h, bin] : single) CHECK(bin.median == static_cast<double>(h + 1));
  const auto pair = two_author_curve(c);
  REQUIRE_FALSE(pair.empty());
  for (const auto& [hsum, bin] : pair) CHECK(bin.median == static_cast<double>(hsum + 2));
}

TEST_CASE("predictor correlations") {
  CHECK(predictor_correlations(Corpus{}).samples == 0);
  CHECK_FALSE(predictor_correlations(Corpus{}).h_index.has_value());

  const auto t = run_game(GameState::empty(3), uniform_profile(3, solo_single_paper()), 40);
  const auto r = predictor_correlations(corpus_from_trajectory(t));
  CHECK(r.samples > 0);
  REQUIRE(r.h_index.has_value());
  CHECK(*r.h_index == doctest::Approx(1.0).epsilon(1e-9));
}
