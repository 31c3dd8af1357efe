#include "acgame/oracle.hpp"

#include <algorithm>
#include <random>

namespace acgame::oracle {

Count count_at_least(const Multiset& z, Count threshold) {
  Count n = 0;
  for (Count v : z)
    if (v >= threshold) ++n;
  return n;
}

Count h_index(const Multiset& z) {
  Count best = 0;
  for (Count h = 0; h <= static_cast<Count>(z.size()); ++h)
    if (count_at_least(z, h) >= h) best = h;
  return best;
}

namespace {

Multiset keep_if(const Multiset& z, auto pred) {
  Multiset out;
  for (Count v : z)
    if (pred(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

Count max_of(const Multiset& z) { return z.empty() ? 0 : *std::max_element(z.begin(), z.end()); }

}  // namespace

Multiset h_profile(const Multiset& z) {
  const Count h = h_index(z);
  return keep_if(z, [h](Count v) { return v >= h; });
}

Multiset h_augmenting_profile(const Multiset& z) {
  const Count h = h_index(z);
  return keep_if(z, [h](Count v) { return v > h; });
}

bool weakly_h_preferable(const Multiset& z, const Multiset& zp) {
  const Count h = h_index(z);
  if (h < h_index(zp)) return false;
  const Count top = std::max(max_of(z), max_of(zp)) + 1;
  for (Count t = h + 1; t <= top; ++t)
    if (count_at_least(z, t) < count_at_least(zp, t)) return false;
  return true;
}

bool strongly_h_preferable(const Multiset& z, const Multiset& zp) {
  if (!weakly_h_preferable(z, zp)) return false;
  const Count h = h_index(z);
  if (h > h_index(zp)) return true;
  const Count top = std::max(max_of(z), max_of(zp)) + 1;
  for (Count t = h + 1; t <= top; ++t)
    if (count_at_least(z, t) > count_at_least(zp, t)) return true;
  return false;
}

std::vector<Multiset> random_profiles(std::size_t count, std::size_t max_size, Count max_value, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(0, max_size);
  std::uniform_int_distribution<Count> value_dist(0, max_value);
  std::vector<Multiset> out(count);
  for (auto& z : out) {
    z.resize(size_dist(rng));
    for (auto& v : z) v = value_dist(rng);
  }
  return out;
}

namespace {

Multiset ascending(const CitationProfile& p) {
  Multiset out(p.values().begin(), p.values().end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t check_one(const Multiset& z, const Multiset& next, std::size_t& comparisons) {
  std::size_t bad = 0;
  auto expect = [&](bool ok) {
    ++comparisons;
    if (!ok) ++bad;
  };
  const CitationProfile pz(z), pn(next);
  expect(acgame::h_index(pz) == h_index(z));
  expect(ascending(acgame::h_profile(pz)) == h_profile(z));
  expect(ascending(acgame::h_augmenting_profile(pz)) == h_augmenting_profile(z));

  Multiset shrunk = z;
  if (!shrunk.empty()) shrunk.erase(std::min_element(shrunk.begin(), shrunk.end()));
  const CitationProfile ps(shrunk);
  const std::pair<const Multiset*, const CitationProfile*> pairs[][2] = {
      {{&z, &pz}, {&z, &pz}}, {{&z, &pz}, {&next, &pn}}, {{&next, &pn}, {&z, &pz}}, {{&z, &pz}, {&shrunk, &ps}}};
  for (const auto& pr : pairs) {
    expect(acgame::weakly_h_preferable(*pr[0].second, *pr[1].second) == weakly_h_preferable(*pr[0].first, *pr[1].first));
    expect(acgame::strongly_h_preferable(*pr[0].second, *pr[1].second) ==
           strongly_h_preferable(*pr[0].first, *pr[1].first));
  }
  return bad;
}

}  // namespace

SweepResult sweep(std::span<const Multiset> profiles, Execution mode) {
  SweepResult out;
  out.profiles = profiles.size();
  const auto n = static_cast<std::ptrdiff_t>(profiles.size());
  std::size_t bad = 0, comparisons = 0;
  auto next = [&](std::ptrdiff_t i) -> const Multiset& { return profiles[static_cast<std::size_t>((i + 1) % n)]; };

  if (mode == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) bad += check_one(profiles[static_cast<std::size_t>(i)], next(i), comparisons);
  } else {
#pragma omp parallel for schedule(static) reduction(+ : bad, comparisons)
    for (std::ptrdiff_t i = 0; i < n; ++i) bad += check_one(profiles[static_cast<std::size_t>(i)], next(i), comparisons);
  }
  out.comparisons = comparisons;
  out.discrepancies = bad;
  return out;
}

}  // namespace acgame::oracle
