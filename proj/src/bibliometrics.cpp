#include "acgame/bibliometrics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace acgame {

CitationProfile::CitationProfile(std::vector<Count> counts, Count cap) : counts_(std::move(counts)), cap_(cap) {
  for (Count c : counts_) check(c);
  std::sort(counts_.begin(), counts_.end(), std::greater<>());
}

CitationProfile::CitationProfile(std::initializer_list<Count> counts)
    : CitationProfile(std::vector<Count>(counts)) {}

void CitationProfile::check(Count citations) const {
  if (citations < 0) throw std::invalid_argument("citation count must be non-negative, got " + std::to_string(citations));
  if (citations > cap_)
    throw CitationOverflow("citation count " + std::to_string(citations) + " exceeds cap " + std::to_string(cap_));
}

void CitationProfile::insert(Count citations) {
  check(citations);
  auto pos = std::upper_bound(counts_.begin(), counts_.end(), citations, std::greater<>());
  counts_.insert(pos, citations);
}

std::size_t CitationProfile::count_at_least(Count threshold) const {
  // counts_ is descending; first element < threshold marks the boundary.
  auto it = std::partition_point(counts_.begin(), counts_.end(), [threshold](Count c) { return c >= threshold; });
  return static_cast<std::size_t>(it - counts_.begin());
}

std::string CitationProfile::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) os << ',';
    os << counts_[i];
  }
  os << '}';
  return os.str();
}

Count h_index(const CitationProfile& z) {
  // With values sorted descending, h is the number of positions i (1-based)
  // where values[i-1] >= i; that predicate is monotone in i.
  auto v = z.values();
  std::size_t lo = 0, hi = v.size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (v[mid] >= static_cast<Count>(mid + 1))
      lo = mid + 1;
    else
      hi = mid;
  }
  return static_cast<Count>(lo);
}

namespace {

CitationProfile filter_at_least(const CitationProfile& z, Count threshold) {
  auto v = z.values();
  std::vector<Count> kept(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(z.count_at_least(threshold)));
  return CitationProfile(std::move(kept), z.cap());
}

}  // namespace

CitationProfile h_profile(const CitationProfile& z) { return filter_at_least(z, h_index(z)); }

CitationProfile h_augmenting_profile(const CitationProfile& z) { return filter_at_least(z, h_index(z) + 1); }

namespace {

struct Comparison {
  bool weak = false;
  bool strict = false;
};

Comparison compare(const CitationProfile& z, const CitationProfile& zp) {
  Comparison out;
  const Count hz = h_index(z);
  const Count hzp = h_index(zp);
  if (hz < hzp) return out;
  out.strict = hz > hzp;
  // Threshold counts are step functions that only change just above an
  // element value, so testing t at every distinct element value > h covers
  // every interval of (h, max]. Thresholds above max(Z ∪ Z') give 0 >= 0.
  std::vector<Count> thresholds;
  for (auto* p : {&z, &zp})
    for (Count v : p->values()) {
      if (v <= hz) break;
      thresholds.push_back(v);
    }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  for (Count t : thresholds) {
    const auto a = z.count_at_least(t);
    const auto b = zp.count_at_least(t);
    if (a < b) return out;
    if (a > b) out.strict = true;
  }
  out.weak = true;
  return out;
}

}  // namespace

bool weakly_h_preferable(const CitationProfile& z, const CitationProfile& zp) { return compare(z, zp).weak; }

bool strongly_h_preferable(const CitationProfile& z, const CitationProfile& zp) {
  auto c = compare(z, zp);
  return c.weak && c.strict;
}

}  // namespace acgame
