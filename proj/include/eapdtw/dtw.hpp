#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "series.hpp"

namespace eapdtw {

/// Sakoe-Chiba band: the warping path may deviate at most `window` cells from
/// the diagonal (|i - j| <= window, shorter series on columns).
/// A window >= min(l_S, l_T) behaves exactly like an unbounded band.
struct Band {
  static constexpr std::size_t unbounded_window = std::numeric_limits<std::size_t>::max();
  std::size_t window = unbounded_window;

  [[nodiscard]] static constexpr Band unbounded() { return Band{unbounded_window}; }
  [[nodiscard]] static constexpr Band cells(std::size_t w) { return Band{w}; }
  [[nodiscard]] constexpr bool is_unbounded() const { return window == unbounded_window; }
};

/// One matrix coordinate. Rows and columns are 1-based, matching the DP matrix
/// whose borders live at row 0 / column 0; the longer series is on rows.
struct CellRef {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const CellRef&, const CellRef&) = default;
};

struct TraceCell {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Instrumentation sink for the traced kernel variants.
/// Counters are always maintained; the per-cell matrix capture is optional
/// (set capture_cells before the call) so searches can count DP work cheaply.
struct KernelTrace {
  std::size_t cells_evaluated = 0;
  bool capture_cells = false;
  std::vector<TraceCell> cells;          // only filled when capture_cells
  std::vector<CellRef> discard_points;   // cells that extended the left border
  std::vector<CellRef> pruning_points;   // first cell of each trailing > ub run
  std::optional<CellRef> abandon_cell;   // set iff the kernel early-abandoned

  void reset() {
    cells_evaluated = 0;
    cells.clear();
    discard_points.clear();
    pruning_points.clear();
    abandon_cell.reset();
  }
};

/// Squared Euclidean cost between two samples.
[[nodiscard]] inline double squared_cost(double a, double b) {
  const double d = a - b;
  return d * d;
}

// --- --- --- Kernels, span level. Preconditions: both spans non-empty, samples finite.
// All kernels assign the longer input to rows (first argument wins ties), so the
// row buffers are sized by the shorter series and results are symmetric.

[[nodiscard]] double dtw_full(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double dtw_full(std::span<const double> a, std::span<const double> b, KernelTrace& trace);

[[nodiscard]] double dtw_windowed(std::span<const double> a, std::span<const double> b, Band band);
[[nodiscard]] double dtw_windowed(std::span<const double> a, std::span<const double> b, Band band,
                                  KernelTrace& trace);

[[nodiscard]] double dtw_left_prune(std::span<const double> a, std::span<const double> b, double ub);
[[nodiscard]] double dtw_left_prune(std::span<const double> a, std::span<const double> b, double ub,
                                    KernelTrace& trace);

[[nodiscard]] double dtw_left_prune_windowed(std::span<const double> a, std::span<const double> b,
                                             Band band, double ub);
[[nodiscard]] double dtw_left_prune_windowed(std::span<const double> a, std::span<const double> b,
                                             Band band, double ub, KernelTrace& trace);

[[nodiscard]] double ea_pruned_dtw(std::span<const double> a, std::span<const double> b, double ub);
[[nodiscard]] double ea_pruned_dtw(std::span<const double> a, std::span<const double> b, double ub,
                                   KernelTrace& trace);

/// Windowed EAPrunedDTW with optional per-row threshold tightening.
/// `cumulative_bound` is either empty or a vector sized by the longer series,
/// non-increasing with final element 0; row i is then tested against
/// ub - cumulative_bound[min(i + w, l_longer) - 1] (clamped at 0).
[[nodiscard]] double ea_pruned_dtw_windowed(std::span<const double> a, std::span<const double> b,
                                            Band band, double ub,
                                            std::span<const double> cumulative_bound = {});
[[nodiscard]] double ea_pruned_dtw_windowed(std::span<const double> a, std::span<const double> b,
                                            Band band, double ub,
                                            std::span<const double> cumulative_bound,
                                            KernelTrace& trace);

// --- --- --- Series-level conveniences.

[[nodiscard]] inline double dtw_full(const Series& a, const Series& b) {
  return dtw_full(a.view(), b.view());
}
[[nodiscard]] inline double dtw_full(const Series& a, const Series& b, KernelTrace& trace) {
  return dtw_full(a.view(), b.view(), trace);
}
[[nodiscard]] inline double dtw_windowed(const Series& a, const Series& b, Band band) {
  return dtw_windowed(a.view(), b.view(), band);
}
[[nodiscard]] inline double dtw_windowed(const Series& a, const Series& b, Band band, KernelTrace& trace) {
  return dtw_windowed(a.view(), b.view(), band, trace);
}
[[nodiscard]] inline double dtw_left_prune(const Series& a, const Series& b, double ub) {
  return dtw_left_prune(a.view(), b.view(), ub);
}
[[nodiscard]] inline double dtw_left_prune(const Series& a, const Series& b, double ub, KernelTrace& trace) {
  return dtw_left_prune(a.view(), b.view(), ub, trace);
}
[[nodiscard]] inline double ea_pruned_dtw(const Series& a, const Series& b, double ub) {
  return ea_pruned_dtw(a.view(), b.view(), ub);
}
[[nodiscard]] inline double ea_pruned_dtw(const Series& a, const Series& b, double ub, KernelTrace& trace) {
  return ea_pruned_dtw(a.view(), b.view(), ub, trace);
}
[[nodiscard]] inline double ea_pruned_dtw_windowed(const Series& a, const Series& b, Band band, double ub,
                                                   std::span<const double> cumulative_bound = {}) {
  return ea_pruned_dtw_windowed(a.view(), b.view(), band, ub, cumulative_bound);
}
[[nodiscard]] inline double ea_pruned_dtw_windowed(const Series& a, const Series& b, Band band, double ub,
                                                   std::span<const double> cumulative_bound,
                                                   KernelTrace& trace) {
  return ea_pruned_dtw_windowed(a.view(), b.view(), band, ub, cumulative_bound, trace);
}

} // namespace eapdtw
