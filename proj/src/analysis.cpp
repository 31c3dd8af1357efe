#include "acgame/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace acgame {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::FirstOvertakesSecond: return "FirstOvertakesSecond";
    case Verdict::SecondOvertakesFirst: return "SecondOvertakesFirst";
    case Verdict::Neither: return "Neither";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict mirror(Verdict v) {
  switch (v) {
    case Verdict::FirstOvertakesSecond: return Verdict::SecondOvertakesFirst;
    case Verdict::SecondOvertakesFirst: return Verdict::FirstOvertakesSecond;
    default: return v;
  }
}

OvertakeVerdict overtakes(std::span<const Count> f, std::span<const Count> g, double burn_in) {
  if (f.size() != g.size())
    throw std::invalid_argument("series lengths differ: " + std::to_string(f.size()) + " vs " + std::to_string(g.size()));
  if (f.size() < kMinSeriesLength)
    throw std::invalid_argument("series must have at least " + std::to_string(kMinSeriesLength) + " entries");
  if (!(burn_in > 0.0 && burn_in < 1.0)) throw std::invalid_argument("burn-in fraction must lie in (0, 1)");

  const std::size_t n = f.size();
  // n > burn_in * N, 1-based.
  const auto tail_start = static_cast<std::size_t>(std::floor(burn_in * static_cast<double>(n))) + 1;

  OvertakeVerdict out;
  out.evidence.tail_start = tail_start;
  Count lo = std::numeric_limits<Count>::max();
  Count hi = std::numeric_limits<Count>::min();
  for (std::size_t i = tail_start - 1; i < n; ++i) {
    const Count d = f[i] - g[i];
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  out.evidence.min_tail_diff = lo;
  out.evidence.max_tail_diff = hi;

  // Earliest m such that pred(d_j) holds for all j >= m.
  auto settled_from = [&](auto pred) -> std::size_t {
    std::size_t m = n;
    while (m > 0 && pred(f[m - 1] - g[m - 1])) --m;
    return m + 1;
  };

  if (lo >= 0 && hi > 0) {
    out.verdict = Verdict::FirstOvertakesSecond;
    out.evidence.stabilization_year = settled_from([](Count d) { return d >= 0; });
  } else if (hi <= 0 && lo < 0) {
    out.verdict = Verdict::SecondOvertakesFirst;
    out.evidence.stabilization_year = settled_from([](Count d) { return d <= 0; });
  } else if (lo == 0 && hi == 0) {
    const auto m = settled_from([](Count d) { return d == 0; });
    out.verdict = m == 1 ? Verdict::Inconclusive : Verdict::Neither;
    out.evidence.stabilization_year = m;
  } else {
    out.verdict = Verdict::Neither;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(GrowthModel m) {
  switch (m) {
    case GrowthModel::Sqrt: return "sqrt";
    case GrowthModel::Linear: return "linear";
    case GrowthModel::Power: return "power";
  }
  return "?";
}

namespace {

std::size_t fit_start(std::span<const Count> series) {
  if (series.size() < kMinFitLength)
    throw std::invalid_argument("growth fit needs at least " + std::to_string(kMinFitLength) + " entries");
  return series.size() / 2;  // 0-based index of the first tail entry
}

}  // namespace

GrowthFit fit_growth(std::span<const Count> series) {
  const std::size_t start = fit_start(series);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double m = 0;
  for (std::size_t i = start; i < series.size(); ++i) {
    if (series[i] <= 0) throw DegenerateFit("series has a non-positive value at n=" + std::to_string(i + 1));
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(static_cast<double>(series[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    m += 1;
  }
  const double denom = m * sxx - sx * sx;
  GrowthFit fit;
  fit.exponent = (m * sxy - sx * sy) / denom;
  fit.coefficient = std::exp((sy - fit.exponent * sx) / m);
  for (std::size_t i = start; i < series.size(); ++i) {
    const double model = fit.coefficient * std::pow(static_cast<double>(i + 1), fit.exponent);
    const double s = static_cast<double>(series[i]);
    fit.max_relative_residual = std::max(fit.max_relative_residual, std::abs(model - s) / s);
  }
  if (std::abs(fit.exponent - 0.5) < 0.05)
    fit.model = GrowthModel::Sqrt;
  else if (std::abs(fit.exponent - 1.0) < 0.05)
    fit.model = GrowthModel::Linear;
  else
    fit.model = GrowthModel::Power;
  return fit;
}

LinearFit fit_linear(std::span<const Count> series) {
  const std::size_t start = fit_start(series);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (std::size_t i = start; i < series.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    const double y = static_cast<double>(series[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    m += 1;
  }
  LinearFit fit;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  for (std::size_t i = start; i < series.size(); ++i) {
    const double s = static_cast<double>(series[i]);
    if (s <= 0) throw DegenerateFit("series has a non-positive value at n=" + std::to_string(i + 1));
    const double model = fit.intercept + fit.slope * static_cast<double>(i + 1);
    fit.max_relative_residual = std::max(fit.max_relative_residual, std::abs(model - s) / s);
  }
  return fit;
}

// ---------------------------------------------------------------------------

Count social_welfare(const GameState& state, WelfareVariant variant) {
  std::vector<Count> hs;
  hs.reserve(state.players());
  for (const auto& p : state.profiles) hs.push_back(h_index(p));
  if (variant == WelfareVariant::SumH) {
    Count sum = 0;
    for (Count h : hs) sum += h;
    return sum;
  }
  return h_index(CitationProfile(std::move(hs), std::numeric_limits<Count>::max()));
}

// ---------------------------------------------------------------------------

namespace {

void check_query(const StabilityQuery& q) {
  if (q.catalog.empty()) throw StabilityQueryError("deviation catalog is empty");
  if (q.k < 1 || q.k > 2) throw StabilityQueryError("coalition size k must be 1 or 2, got " + std::to_string(q.k));
  if (q.baseline.size() != q.initial.players()) throw StabilityQueryError("baseline profile does not cover the roster");
  if (q.horizon < static_cast<int>(kMinSeriesLength))
    throw StabilityQueryError("horizon must be at least " + std::to_string(kMinSeriesLength));
}

// All subsets of {0..n-1} of the given size, lexicographic.
std::vector<std::vector<PlayerId>> subsets_of_size(std::size_t n, std::size_t size) {
  std::vector<std::vector<PlayerId>> out;
  if (size > n) return out;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    std::vector<PlayerId> s;
    for (auto i : idx) s.push_back(PlayerId{i});
    out.push_back(std::move(s));
    std::size_t pos = size;
    while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<DeviationCandidate> enumerate_deviations(const StabilityQuery& query) {
  check_query(query);
  const std::size_t n = query.initial.players();
  std::vector<DeviationCandidate> out;
  for (std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(query.k), n); size >= 1; --size) {
    for (const auto& coalition : subsets_of_size(n, size)) {
      std::vector<std::vector<Strategy>> options;
      bool feasible = true;
      for (PlayerId member : coalition) {
        DeviationContext ctx{member, coalition, query.baseline, n};
        std::vector<Strategy> mine;
        for (const auto& family : query.catalog) {
          auto c = family.candidates(ctx);
          mine.insert(mine.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
        }
        if (mine.empty()) feasible = false;
        options.push_back(std::move(mine));
      }
      if (!feasible) continue;
      // Cartesian product, first member varying slowest.
      std::vector<std::size_t> pick(coalition.size(), 0);
      while (true) {
        DeviationCandidate cand{coalition, {}};
        for (std::size_t m = 0; m < coalition.size(); ++m) cand.strategies.push_back(options[m][pick[m]]);
        out.push_back(std::move(cand));
        std::size_t m = coalition.size();
        while (m > 0 && ++pick[m - 1] == options[m - 1].size()) pick[--m] = 0;
        if (m == 0) break;
      }
    }
  }
  return out;
}

std::vector<DeviatorOutcome> evaluate_deviation(const StabilityQuery& query, const Trajectory& baseline,
                                                const DeviationCandidate& candidate) {
  StrategyProfile deviated = query.baseline;
  for (std::size_t m = 0; m < candidate.coalition.size(); ++m)
    deviated.assign(candidate.coalition[m], candidate.strategies[m]);
  const Trajectory t = run_game(query.initial, deviated, query.horizon);
  std::vector<DeviatorOutcome> out;
  for (std::size_t m = 0; m < candidate.coalition.size(); ++m) {
    const PlayerId p = candidate.coalition[m];
    out.push_back({p, candidate.strategies[m].label(), overtakes(t.utilities(p), baseline.utilities(p), query.burn_in)});
  }
  return out;
}

namespace {

bool all_overtake(const std::vector<DeviatorOutcome>& outcomes) {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const DeviatorOutcome& o) { return o.verdict.verdict == Verdict::FirstOvertakesSecond; });
}

}  // namespace

StabilityReport find_unstable_set(const StabilityQuery& query, Execution mode) {
  const auto candidates = enumerate_deviations(query);
  const Trajectory baseline = run_game(query.initial, query.baseline, query.horizon);

  StabilityReport report;
  report.candidates = candidates.size();
  const auto count = static_cast<std::ptrdiff_t>(candidates.size());

  if (mode == Execution::Serial) {
    for (const auto& cand : candidates) {
      auto outcomes = evaluate_deviation(query, baseline, cand);
      if (all_overtake(outcomes)) {
        report.stable = false;
        report.witness = Witness{cand.coalition, std::move(outcomes)};
        break;
      }
    }
    return report;
  }

  std::vector<std::optional<std::vector<DeviatorOutcome>>> hits(candidates.size());
  std::vector<std::exception_ptr> errors(candidates.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      auto outcomes = evaluate_deviation(query, baseline, candidates[idx]);
      if (all_overtake(outcomes)) hits[idx] = std::move(outcomes);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  // Ordered reduction: the lowest candidate index wins, matching the serial scan.
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    if (hits[i]) {
      report.stable = false;
      report.witness = Witness{candidates[i].coalition, std::move(*hits[i])};
      break;
    }
  }
  return report;
}

}  // namespace acgame
