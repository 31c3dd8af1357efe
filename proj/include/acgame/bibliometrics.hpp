#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acgame {

using Count = std::int64_t;

inline constexpr Count kDefaultCitationCap = std::numeric_limits<std::int32_t>::max();

class CitationOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Multiset of per-paper citation counts. Elements are kept sorted in
// descending order, so two profiles with the same contents compare equal
// regardless of insertion order.
class CitationProfile {
 public:
  CitationProfile() = default;
  explicit CitationProfile(std::vector<Count> counts, Count cap = kDefaultCitationCap);
  CitationProfile(std::initializer_list<Count> counts);

  void insert(Count citations);

  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  Count max() const { return counts_.empty() ? 0 : counts_.front(); }
  Count cap() const { return cap_; }

  // Number of elements >= threshold.
  std::size_t count_at_least(Count threshold) const;

  // Descending view.
  std::span<const Count> values() const { return counts_; }

  bool operator==(const CitationProfile& other) const { return counts_ == other.counts_; }

  std::string to_string() const;

 private:
  void check(Count citations) const;

  std::vector<Count> counts_;
  Count cap_ = kDefaultCitationCap;
};

// Largest h such that at least h elements are >= h.
Count h_index(const CitationProfile& z);

// Elements >= h(Z).
CitationProfile h_profile(const CitationProfile& z);

// Elements > h(Z).
CitationProfile h_augmenting_profile(const CitationProfile& z);

// h(Z) >= h(Z') and, for every threshold t > h(Z), Z has at least as many
// elements >= t as Z' does.
bool weakly_h_preferable(const CitationProfile& z, const CitationProfile& zp);

// Weak preference plus a strict gap in h or in some above-h threshold count.
bool strongly_h_preferable(const CitationProfile& z, const CitationProfile& zp);

}  // namespace acgame
