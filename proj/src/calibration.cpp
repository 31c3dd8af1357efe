#include "acgame/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace acgame {

Corpus::Corpus(std::vector<PublicationRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    for (const auto& a : records_[i].authors) {
      by_author_[a].push_back(i);
      ++per_year_count_[{a, records_[i].year}];
    }
  }
  for (auto& [author, idx] : by_author_)
    std::stable_sort(idx.begin(), idx.end(),
                     [this](std::size_t l, std::size_t r) { return records_[l].year < records_[r].year; });
}

bool Corpus::contains(std::string_view author) const { return by_author_.find(author) != by_author_.end(); }

std::vector<std::string> Corpus::authors() const {
  std::vector<std::string> out;
  out.reserve(by_author_.size());
  for (const auto& [a, idx] : by_author_) out.push_back(a);
  return out;
}

const std::vector<std::size_t>& Corpus::papers_of(std::string_view author) const {
  auto it = by_author_.find(author);
  if (it == by_author_.end()) throw UnknownAuthor("unknown author '" + std::string(author) + "'");
  return it->second;
}

std::vector<std::size_t> Corpus::papers_in_year(std::string_view author, int year) const {
  std::vector<std::size_t> out;
  for (auto i : papers_of(author))
    if (records_[i].year == year) out.push_back(i);
  return out;
}

std::size_t Corpus::paper_count_in_year(std::string_view author, int year) const {
  auto it = per_year_count_.find(std::pair<std::string, int>(std::string(author), year));
  return it == per_year_count_.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// Loading

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "csv") return CorpusFormat::Csv;
  if (name == "jsonl") return CorpusFormat::Jsonl;
  throw CorpusError("unknown corpus format '" + std::string(name) + "' (expected csv or jsonl)");
}

namespace {

constexpr std::string_view kCsvHeader = "paper_id,year,citations,authors";

class RowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Splits one CSV line; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw RowError("unterminated quoted field");
  return fields;
}

template <typename Int>
Int parse_int(std::string_view text, const char* field) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw RowError(std::string(field) + " is not an integer: '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split_authors(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

void check_record(const PublicationRecord& r, const LoadOptions& opt) {
  if (r.paper_id.empty()) throw RowError("empty paper_id");
  if (r.year < opt.min_year || r.year > opt.max_year)
    throw RowError("year " + std::to_string(r.year) + " outside [" + std::to_string(opt.min_year) + ", " +
                   std::to_string(opt.max_year) + "]");
  if (r.citations < 0) throw RowError("negative citations " + std::to_string(r.citations));
  if (r.authors.empty()) throw RowError("no authors");
  std::set<std::string_view> seen;
  for (const auto& a : r.authors) {
    if (a.empty()) throw RowError("empty author token");
    if (!seen.insert(a).second) throw RowError("duplicate author '" + a + "'");
  }
}

PublicationRecord parse_csv_row(std::string_view line) {
  auto f = split_csv(line);
  if (f.size() != 4) throw RowError("expected 4 fields, got " + std::to_string(f.size()));
  PublicationRecord r;
  r.paper_id = f[0];
  r.year = parse_int<int>(f[1], "year");
  r.citations = parse_int<Count>(f[2], "citations");
  r.authors = split_authors(f[3]);
  return r;
}

PublicationRecord parse_json_row(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw RowError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw RowError("row is not a JSON object");
  for (const char* key : {"paper_id", "year", "citations", "authors"})
    if (!j.contains(key)) throw RowError(std::string("missing field '") + key + "'");
  PublicationRecord r;
  const auto& id = j["paper_id"];
  if (id.is_string())
    r.paper_id = id.get<std::string>();
  else if (id.is_number_integer())
    r.paper_id = id.dump();
  else
    throw RowError("paper_id must be a string or integer");
  if (!j["year"].is_number_integer()) throw RowError("year is not an integer");
  if (!j["citations"].is_number_integer()) throw RowError("citations is not an integer");
  r.year = j["year"].get<int>();
  r.citations = j["citations"].get<Count>();
  const auto& authors = j["authors"];
  if (authors.is_string()) {
    r.authors = split_authors(authors.get<std::string>());
  } else if (authors.is_array()) {
    for (const auto& a : authors) {
      if (!a.is_string()) throw RowError("author tokens must be strings");
      r.authors.push_back(a.get<std::string>());
    }
  } else {
    throw RowError("authors must be an array or a ';'-separated string");
  }
  return r;
}

}  // namespace

LoadResult load_corpus(std::istream& in, CorpusFormat format, const LoadOptions& options) {
  LoadResult out;
  std::vector<PublicationRecord> records;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  bool header_seen = format == CorpusFormat::Jsonl;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader)
        throw CorpusError("line " + std::to_string(line_no) + ": expected header '" + std::string(kCsvHeader) + "'");
      header_seen = true;
      continue;
    }
    ++rows;
    try {
      auto r = format == CorpusFormat::Csv ? parse_csv_row(line) : parse_json_row(line);
      check_record(r, options);
      if (!ids.insert(r.paper_id).second) throw RowError("duplicate paper_id '" + r.paper_id + "'");
      records.push_back(std::move(r));
    } catch (const RowError& e) {
      out.rejects.push_back({line_no, e.what()});
    }
  }

  if (rows > 0 && static_cast<double>(out.rejects.size()) > options.max_reject_fraction * static_cast<double>(rows)) {
    std::ostringstream os;
    os << out.rejects.size() << " of " << rows << " rows malformed";
    for (std::size_t i = 0; i < std::min<std::size_t>(out.rejects.size(), 5); ++i)
      os << "; line " << out.rejects[i].line << ": " << out.rejects[i].reason;
    throw CorpusError(os.str());
  }
  out.corpus = Corpus(std::move(records));
  return out;
}

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read corpus file " + path.string());
  return load_corpus(in, format, options);
}

// ---------------------------------------------------------------------------

Count author_h_at_year(const Corpus& corpus, std::string_view author, int year) {
  std::vector<Count> prior;
  for (auto i : corpus.papers_of(author)) {
    const auto& r = corpus.records()[i];
    if (r.year >= year) break;
    prior.push_back(r.citations);
  }
  return h_index(CitationProfile(std::move(prior), std::numeric_limits<Count>::max()));
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("spearman: lengths differ (" + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  if (x.size() < 2) throw std::invalid_argument("spearman: need at least two observations");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) throw DegenerateInput("spearman: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty group");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

// ---------------------------------------------------------------------------
// Curves

namespace {

class PriorH {
 public:
  explicit PriorH(const Corpus& c) : corpus_(c) {}

  Count operator()(const std::string& author, int year) {
    auto key = std::make_pair(author, year);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const Count h = author_h_at_year(corpus_, author, year);
    cache_.emplace(std::move(key), h);
    return h;
  }

 private:
  const Corpus& corpus_;
  std::map<std::pair<std::string, int>, Count> cache_;
};

Curve summarize(const std::map<Count, std::vector<double>>& groups, const CurveOptions& options) {
  Curve out;
  for (const auto& [key, values] : groups)
    if (values.size() >= std::max<std::size_t>(options.min_group_size, 1))
      out[key] = CurveBin{median(values), values.size()};
  return out;
}

bool sole_paper_that_year(const Corpus& c, const std::string& author, int year) {
  return c.paper_count_in_year(author, year) == 1;
}

}  // namespace

Curve single_author_curve(const Corpus& corpus, const CurveOptions& options) {
  PriorH prior(corpus);
  std::map<Count, std::vector<double>> groups;
  for (const auto& r : corpus.records()) {
    if (r.authors.size() != 1) continue;
    if (!sole_paper_that_year(corpus, r.authors[0], r.year)) continue;
    groups[prior(r.authors[0], r.year)].push_back(static_cast<double>(r.citations));
  }
  return summarize(groups, options);
}

Curve two_author_curve(const Corpus& corpus, const CurveOptions& options) {
  PriorH prior(corpus);
  std::map<Count, std::vector<double>> groups;
  for (const auto& r : corpus.records()) {
    if (r.authors.size() != 2) continue;
    if (!sole_paper_that_year(corpus, r.authors[0], r.year) || !sole_paper_that_year(corpus, r.authors[1], r.year))
      continue;
    groups[prior(r.authors[0], r.year) + prior(r.authors[1], r.year)].push_back(static_cast<double>(r.citations));
  }
  return summarize(groups, options);
}

Curve reinvestment_curve(const Corpus& corpus, const CurveOptions& options) {
  PriorH prior(corpus);
  std::map<Count, std::vector<double>> groups;
  std::set<std::pair<std::string, int>> author_years;
  for (const auto& r : corpus.records())
    for (const auto& a : r.authors) author_years.emplace(a, r.year);

  for (const auto& [author, year] : author_years) {
    bool qualifies = true;
    Count residual = 0;
    for (auto i : corpus.papers_in_year(author, year)) {
      const auto& r = corpus.records()[i];
      residual += r.citations;
      for (const auto& b : r.authors) {
        if (b == author) continue;
        if (!sole_paper_that_year(corpus, b, year)) {
          qualifies = false;
          break;
        }
        residual -= prior(b, year);
      }
      if (!qualifies) break;
    }
    if (qualifies) groups[prior(author, year)].push_back(static_cast<double>(residual));
  }
  return summarize(groups, options);
}

PredictorCorrelations predictor_correlations(const Corpus& corpus) {
  std::vector<double> cit, h, count, sum;
  for (const auto& r : corpus.records()) {
    if (r.authors.size() != 1) continue;
    const auto& a = r.authors[0];
    if (!sole_paper_that_year(corpus, a, r.year)) continue;
    std::vector<Count> prior;
    for (auto i : corpus.papers_of(a)) {
      const auto& p = corpus.records()[i];
      if (p.year >= r.year) break;
      prior.push_back(p.citations);
    }
    cit.push_back(static_cast<double>(r.citations));
    count.push_back(static_cast<double>(prior.size()));
    sum.push_back(static_cast<double>(std::accumulate(prior.begin(), prior.end(), Count{0})));
    h.push_back(static_cast<double>(h_index(CitationProfile(std::move(prior), std::numeric_limits<Count>::max()))));
  }
  PredictorCorrelations out;
  out.samples = cit.size();
  auto corr = [&](const std::vector<double>& x) -> std::optional<double> {
    try {
      return spearman(x, cit);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  out.h_index = corr(h);
  out.paper_count = corr(count);
  out.citation_sum = corr(sum);
  return out;
}

Corpus corpus_from_trajectory(const Trajectory& trajectory, int base_year, std::span<const std::string> names) {
  const auto& init = trajectory.initial();
  if (!names.empty() && names.size() != init.players())
    throw std::invalid_argument("corpus_from_trajectory: expected " + std::to_string(init.players()) + " names");
  auto name = [&](PlayerId p) { return names.empty() ? "p" + std::to_string(p.index) : names[p.index]; };

  std::vector<PublicationRecord> records;
  for (std::size_t a = 0; a < init.players(); ++a) {
    std::size_t i = 0;
    for (Count c : init.profiles[a].values())
      records.push_back({"seed-" + std::to_string(a) + "-" + std::to_string(i++), base_year, c, {name(PlayerId{a})}});
  }
  for (const auto& y : trajectory.years())
    for (const auto& p : y.papers) {
      PublicationRecord r{"y" + std::to_string(p.id.year) + "-" + std::to_string(p.id.seq), base_year + p.year,
                          p.citations, {}};
      for (PlayerId a : p.authors) r.authors.push_back(name(a));
      records.push_back(std::move(r));
    }
  return Corpus(std::move(records));
}

}  // namespace acgame
