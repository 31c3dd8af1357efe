#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acgame/bibliometrics.hpp"
#include "acgame/game.hpp"

namespace acgame {

struct PublicationRecord {
  std::string paper_id;
  int year = 0;
  Count citations = 0;
  std::vector<std::string> authors;

  bool operator==(const PublicationRecord&) const = default;
};

class UnknownAuthor : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Publication records plus per-author and per-author-year indices. Indices
// are a pure function of the record list.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<PublicationRecord> records);

  const std::vector<PublicationRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  bool contains(std::string_view author) const;
  std::vector<std::string> authors() const;

  // Record indices of P(a), ordered by (year, record index).
  const std::vector<std::size_t>& papers_of(std::string_view author) const;
  // Record indices of P_y(a).
  std::vector<std::size_t> papers_in_year(std::string_view author, int year) const;
  std::size_t paper_count_in_year(std::string_view author, int year) const;

 private:
  std::vector<PublicationRecord> records_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_author_;
  std::map<std::pair<std::string, int>, std::size_t, std::less<>> per_year_count_;
};

enum class CorpusFormat { Csv, Jsonl };

CorpusFormat parse_corpus_format(std::string_view name);

struct Reject {
  std::size_t line = 0;  // 1-based line in the input
  std::string reason;
};

struct LoadOptions {
  int min_year = 1800;
  int max_year = 2200;
  double max_reject_fraction = 0.10;
};

struct LoadResult {
  Corpus corpus;
  std::vector<Reject> rejects;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV: header `paper_id,year,citations,authors`, authors separated by ';'.
// JSONL: one object per line with the same keys; authors may be an array or a
// ';'-separated string. Malformed rows are reported, not dropped silently;
// more than max_reject_fraction malformed rows aborts.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format, const LoadOptions& options = {});
LoadResult load_corpus(std::istream& in, CorpusFormat format, const LoadOptions& options = {});

// h-index over the author's papers published strictly before `year`, using
// the snapshot citation totals.
Count author_h_at_year(const Corpus& corpus, std::string_view author, int year);

class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

// Even-sized groups average the two middle values.
double median(std::vector<double> values);

struct CurveBin {
  double median = 0.0;
  std::size_t count = 0;

  bool operator==(const CurveBin&) const = default;
};

using Curve = std::map<Count, CurveBin>;

struct CurveOptions {
  std::size_t min_group_size = 1;
};

// Single-author papers whose author published nothing else that year,
// grouped by the author's prior h-index.
Curve single_author_curve(const Corpus& corpus, const CurveOptions& options = {});

// Two-author papers where neither author published anything else that year,
// grouped by the sum of the authors' prior h-indices.
Curve two_author_curve(const Corpus& corpus, const CurveOptions& options = {});

// Per (author, year) where every coauthor on the author's papers that year
// published nothing else that year: sum over those papers of
// cit(p) - sum of coauthor prior h-indices, grouped by the author's prior h.
Curve reinvestment_curve(const Corpus& corpus, const CurveOptions& options = {});

// Spearman correlation between the citations of qualifying single-author
// papers and three prior-year attributes of the author. Absent values mean
// the correlation is undefined (fewer than two samples or constant input).
struct PredictorCorrelations {
  std::size_t samples = 0;
  std::optional<double> h_index;
  std::optional<double> paper_count;
  std::optional<double> citation_sum;
};

PredictorCorrelations predictor_correlations(const Corpus& corpus);

// Corpus of every paper in a simulated trajectory. Game year y maps to
// calendar year base_year + y; initial profile entries become single-author
// papers in base_year. Player i is named names[i], or "p<i>" when names is
// empty.
Corpus corpus_from_trajectory(const Trajectory& trajectory, int base_year = 2000,
                              std::span<const std::string> names = {});

}  // namespace acgame
