#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dtw.hpp"
#include "series.hpp"

namespace eapdtw {

/// Per-position sliding min/max of a series over radius `window`:
/// lower[j] <= series[j] <= upper[j], with upper[j] = max over
/// [j - w, j + w] clamped to the series bounds (lower symmetric).
struct Envelope {
  std::vector<double> upper;
  std::vector<double> lower;
  std::size_t window = 0;

  [[nodiscard]] std::size_t length() const { return upper.size(); }
};

/// Build the envelope with a monotonic-deque sweep, O(l) amortized.
/// An unbounded band clamps to the series length (constant min/max).
[[nodiscard]] Envelope compute_envelope(std::span<const double> series, Band band);
[[nodiscard]] inline Envelope compute_envelope(const Series& series, Band band) {
  return compute_envelope(series.view(), band);
}

/// LB_Kim, first/last variant: both extremities of any warping path are
/// aligned, so their costs always contribute. Valid on z-normalized data.
/// Requires equal lengths >= 2.
[[nodiscard]] double lb_kim_fl(std::span<const double> q, std::span<const double> c);
[[nodiscard]] inline double lb_kim_fl(const Series& q, const Series& c) {
  return lb_kim_fl(q.view(), c.view());
}

/// LB_Keogh result. `contributions` holds one per-position term in natural
/// index order; their sum is `total`. When the accumulation was abandoned,
/// `abandoned` is set, `total` is the (already disqualifying) partial sum and
/// `contributions` only covers the positions visited.
struct BoundResult {
  double total = 0.0;
  std::vector<double> contributions;
  bool abandoned = false;
};

/// LB_Keogh of `series` against an envelope of the other series (built with
/// the same window as the eventual DTW call). Accumulation visits positions
/// in `order` when given (else natural order) and abandons once the running
/// total strictly exceeds `abandon_above`.
[[nodiscard]] BoundResult lb_keogh(const Envelope& env, std::span<const double> series,
                                   double abandon_above = PRUNED,
                                   std::span<const std::size_t> order = {});
[[nodiscard]] inline BoundResult lb_keogh(const Envelope& env, const Series& series,
                                          double abandon_above = PRUNED,
                                          std::span<const std::size_t> order = {}) {
  return lb_keogh(env, series.view(), abandon_above, order);
}

/// Reverse cumulative sum, excluding the current position:
/// cb[i] = sum of contributions[j] for j > i. Non-increasing, cb[last] = 0.
[[nodiscard]] std::vector<double> cumulative_bound(std::span<const double> contributions);

} // namespace eapdtw
