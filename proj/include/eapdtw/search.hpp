#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dtw.hpp"
#include "lower_bounds.hpp"
#include "series.hpp"

namespace eapdtw {

/// Sliding-window sum statistics, updated in O(1) per slide.
struct RunningStats {
  double sum = 0.0;
  double sum_of_squares = 0.0;
  std::size_t count = 0;

  [[nodiscard]] static RunningStats over(std::span<const double> window);

  void add(double x) {
    sum += x;
    sum_of_squares += x * x;
    ++count;
  }
  void remove(double x) {
    sum -= x;
    sum_of_squares -= x * x;
    --count;
  }

  [[nodiscard]] double mean() const { return sum / static_cast<double>(count); }
  /// sum_sq/n - mean^2, floored at 0 before the square root.
  [[nodiscard]] double variance() const {
    const double m = mean();
    const double v = sum_of_squares / static_cast<double>(count) - m * m;
    return v > 0.0 ? v : 0.0;
  }
  [[nodiscard]] double stddev() const;
};

/// Z-normalize into dst: (x - mean) / std. A window with std below 1e-12 is
/// constant and maps to all zeros.
void znormalize_into(std::span<const double> src, const RunningStats& stats, std::span<double> dst);
[[nodiscard]] Series znormalize(const Series& s, const RunningStats& stats);

/// Best candidate seen so far; its squared distance serves as the search ub.
struct BestSoFar {
  std::size_t location = 0;  // 0-based start index into the reference
  double distance_sq = PRUNED;
  bool found = false;
};

enum class Algo : std::uint8_t { full, left_prune, ea_pruned };

[[nodiscard]] std::string to_string(Algo a);

struct SearchConfig {
  std::size_t query_length = 0; // 0: use the query's full length
  double window_ratio = 0.1;    // window_cells = floor(window_ratio * m)
  Algo algorithm = Algo::ea_pruned;
  bool use_lower_bounds = true;
  bool tighten_ub = true;       // requires use_lower_bounds
};

struct SearchReport {
  std::size_t candidates_total = 0;
  std::size_t pruned_kim = 0;
  std::size_t pruned_keogh_eq = 0;
  std::size_t pruned_keogh_ec = 0;
  std::size_t dtw_calls = 0;
  std::size_t dtw_abandoned = 0;
  std::size_t dp_cells_evaluated = 0;
  double elapsed_seconds = 0.0;
};

struct SearchResult {
  BestSoFar best;
  SearchReport report;
};

/// Cascade outcome: which tier disqualified the candidate, or none (compute).
enum class CascadeTier : std::uint8_t { none, kim, keogh_eq, keogh_ec };

/// Scratch reused across candidates; also carries the cascade outputs the
/// kernel call needs (normalized candidate, cumulative bound).
struct CascadeWorkspace {
  std::vector<double> candidate_norm;
  std::vector<double> contrib_eq;
  std::vector<double> contrib_ec;
  std::vector<double> cumulative;
};

/// Apply the lower-bound tiers in order Kim -> Keogh-EQ (query envelope vs
/// normalized candidate) -> Keogh-EC (candidate envelope vs normalized query).
/// Prunes at the first tier whose bound strictly exceeds bsf.distance_sq.
/// On none: ws.candidate_norm holds the normalized candidate and ws.cumulative
/// the tightening bound (from the larger of the two Keogh contribution vectors
/// when cfg.tighten_ub, else empty). With cfg.use_lower_bounds off the
/// decision is always none with an empty bound.
[[nodiscard]] CascadeTier cascade_decision(std::span<const double> query_norm,
                                           const Envelope& query_env,
                                           std::span<const std::size_t> order,
                                           std::span<const double> candidate_raw,
                                           const RunningStats& stats, const BestSoFar& bsf,
                                           const SearchConfig& cfg, CascadeWorkspace& ws);

/// Threshold for one kernel row under a cumulative bound:
/// bsf.distance_sq - cb[min(row + w, last)], never below 0; +INF absorbs.
/// `row` is 1-based, `cb` indexed as produced by cumulative_bound.
[[nodiscard]] double tighten_threshold(const BestSoFar& bsf, std::span<const double> cb,
                                       std::size_t row, std::size_t window_cells);

/// Scan every start position of `reference` for the query's nearest
/// z-normalized subsequence under windowed DTW. First occurrence wins ties.
[[nodiscard]] SearchResult similarity_search(const Series& reference, const Series& query,
                                             const SearchConfig& cfg);

} // namespace eapdtw
