#include "eapdtw/dtw.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>

namespace eapdtw {

namespace {

constexpr double PINF = std::numeric_limits<double>::infinity();

// Instrumentation sinks. The kernels are templated on a sink so the plain
// entry points compile down to bare loops.
struct NullSink {
  void cell(std::size_t, std::size_t, double) {}
  void discard(std::size_t, std::size_t) {}
  void pruning_point(std::size_t, std::size_t) {}
  void abandon() {}
};

struct TraceSink {
  KernelTrace& t;
  std::size_t last_row = 0;
  std::size_t last_col = 0;

  void cell(std::size_t i, std::size_t j, double v) {
    ++t.cells_evaluated;
    if (t.capture_cells) { t.cells.push_back({i, j, v}); }
    last_row = i;
    last_col = j;
  }
  void discard(std::size_t i, std::size_t j) {
    if (t.capture_cells) { t.discard_points.push_back({i, j}); }
  }
  void pruning_point(std::size_t i, std::size_t j) {
    if (t.capture_cells) { t.pruning_points.push_back({i, j}); }
  }
  void abandon() { t.abandon_cell = CellRef{last_row, last_col}; }
};

struct Oriented {
  std::span<const double> rows; // longer series
  std::span<const double> cols; // shorter series; sized the row buffers
};

Oriented orient(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) { throw std::invalid_argument("dtw: empty series"); }
  if (a.size() >= b.size()) { return {a, b}; }
  return {b, a};
}

// Effective half-window. nullopt: no path fits inside the band (length gap
// exceeds the window). A window >= the shorter length behaves as unbounded;
// returning the longer length makes the band checks never bind.
std::optional<std::size_t> effective_window(Band band, std::size_t lr, std::size_t lc) {
  if (band.is_unbounded()) { return lr; }
  if (lr - lc > band.window) { return std::nullopt; }
  if (band.window >= lc) { return lr; }
  return band.window;
}

void check_cumulative_bound(std::span<const double> cb, std::size_t lr) {
  if (cb.empty()) { return; }
  if (cb.size() != lr) {
    throw std::invalid_argument("cumulative bound: length must match the longer series");
  }
  for (std::size_t k = 0; k + 1 < cb.size(); ++k) {
    if (!(cb[k] >= cb[k + 1])) {
      throw std::invalid_argument("cumulative bound: must be non-increasing");
    }
  }
  if (cb.back() != 0.0) { throw std::invalid_argument("cumulative bound: final element must be 0"); }
}

inline std::size_t band_start(std::size_t i, std::size_t w) { return i > w ? i - w : 1; }

// Threshold for row i: the bound on cost still to come past the rightmost
// column reachable from this row is deducted from the global threshold.
inline double row_threshold(double ub, std::span<const double> cb, std::size_t i, std::size_t w,
                            std::size_t lr) {
  if (cb.empty()) { return ub; }
  const std::size_t k = std::min(i + w, lr);
  return std::max(0.0, ub - cb[k - 1]);
}

inline double min3(double a, double b, double c) { return std::min(a, std::min(b, c)); }

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Row-by-row DTW on a double buffer, O(l_cols) space. 1-based matrix indices:
// row 0 and column 0 are the +INF borders, with the corner (0,0) = 0.
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

template<typename Sink>
double full_scan(std::span<const double> rows, std::span<const double> cols, std::size_t w,
                 Sink& sink) {
  const std::size_t lr = rows.size();
  const std::size_t lc = cols.size();

  std::vector<double> buffer(2 * (lc + 1), PINF);
  double* prev = buffer.data();
  double* curr = buffer.data() + lc + 1;
  curr[0] = 0.0;

  for (std::size_t i = 1; i <= lr; ++i) {
    std::swap(prev, curr);
    const double ri = rows[i - 1];
    const std::size_t jStart = band_start(i, w);
    const std::size_t jStop = std::min(lc, i + w);
    curr[jStart - 1] = PINF;
    for (std::size_t j = jStart; j <= jStop; ++j) {
      const double v = squared_cost(ri, cols[j - 1]) + min3(curr[j - 1], prev[j], prev[j - 1]);
      curr[j] = v;
      sink.cell(i, j, v);
    }
    // Reset the cell right of the band so the next row reads +INF, not a
    // value left over from two rows ago.
    if (jStop + 1 <= lc) { curr[jStop + 1] = PINF; }
  }
  return curr[lc];
}

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Pruning from the left. Discard points (a contiguous > ub run starting at the
// left border) move the start of all later rows right; the run spanning the
// whole reachable row triggers early abandoning.
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

template<typename Sink>
double left_prune_scan(std::span<const double> rows, std::span<const double> cols, std::size_t w,
                       double ub, Sink& sink) {
  const std::size_t lr = rows.size();
  const std::size_t lc = cols.size();

  std::vector<double> buffer(2 * (lc + 1), PINF);
  double* prev = buffer.data();
  double* curr = buffer.data() + lc + 1;
  curr[0] = 0.0;

  std::size_t next_start = 1;

  for (std::size_t i = 1; i <= lr; ++i) {
    std::swap(prev, curr);
    const double ri = rows[i - 1];
    const std::size_t jStart = std::max(next_start, band_start(i, w));
    const std::size_t jStop = std::min(lc, i + w);
    assert(jStart <= jStop);
    next_start = jStart;
    std::size_t j = jStart;
    curr[j - 1] = PINF;

    // --- --- --- Stage 1: extend the discard run; the left neighbour is a
    // discard point (or the border), so only top and diagonal are read.
    for (; j == next_start && j <= jStop; ++j) {
      const double v = squared_cost(ri, cols[j - 1]) + std::min(prev[j], prev[j - 1]);
      curr[j] = v;
      sink.cell(i, j, v);
      if (v > ub) {
        ++next_start;
        sink.discard(i, j);
      }
    }
    // Abandon only when the discard run consumed the reachable row. Exiting
    // with j past the band because the last cell was <= ub is a normal exit.
    if (j > jStop && j == next_start) {
      sink.abandon();
      return PRUNED;
    }
    // --- --- --- Stage 2: standard three-way scan for the rest of the row.
    for (; j <= jStop; ++j) {
      const double v = squared_cost(ri, cols[j - 1]) + min3(curr[j - 1], prev[j], prev[j - 1]);
      curr[j] = v;
      sink.cell(i, j, v);
    }
    if (jStop + 1 <= lc) { curr[jStop + 1] = PINF; }
  }

  if (curr[lc] <= ub) { return curr[lc]; }
  sink.abandon();
  return PRUNED;
}

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Early Abandoning PrunedDTW. On top of the left pruning, pruning points form
// a movable right border: in a row, a pruning point starts a contiguous > ub
// run reaching the end of the row, so the next row needs no cell past it.
// The left border colliding with the right one triggers early abandoning.
// Four stages per row:
//   1. discard run up to the previous pruning point   (reads top, diagonal)
//   2. standard scan up to the previous pruning point (reads all three)
//   3. the previous pruning point column: diagonal only when it follows a
//      discard run (abandon on > ub: border collision), else left + diagonal
//   4. past the previous pruning point                (reads left only)
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

template<typename Sink>
double ea_pruned_scan(std::span<const double> rows, std::span<const double> cols, std::size_t w,
                      double ub_global, std::span<const double> cb, Sink& sink) {
  const std::size_t lr = rows.size();
  const std::size_t lc = cols.size();

  std::vector<double> buffer(2 * (lc + 1), PINF);
  double* prev = buffer.data();
  double* curr = buffer.data() + lc + 1;
  curr[0] = 0.0;

  std::size_t next_start = 1;
  std::size_t prev_pp = 1; // the border row's pruning point sits at (0,1)
  std::size_t pp = 0;
  sink.pruning_point(0, 1);

  for (std::size_t i = 1; i <= lr; ++i) {
    std::swap(prev, curr);
    const double ri = rows[i - 1];
    const double ub = row_threshold(ub_global, cb, i, w, lr);
    const std::size_t jStart = std::max(next_start, band_start(i, w));
    const std::size_t jStop = std::min(lc, i + w);
    assert(jStart <= jStop);
    next_start = jStart;
    std::size_t j = jStart;
    curr[j - 1] = PINF;

    // Reachable only under aggressive per-row tightening: the row starts
    // inside the pruned area, which is already a border collision.
    if (jStart > prev_pp) {
      sink.abandon();
      return PRUNED;
    }

    // --- --- --- Stage 1: discard run, up to the previous pruning point.
    for (; j == next_start && j < prev_pp; ++j) {
      const double v = squared_cost(ri, cols[j - 1]) + std::min(prev[j], prev[j - 1]);
      curr[j] = v;
      sink.cell(i, j, v);
      if (v > ub) {
        ++next_start;
        sink.discard(i, j);
      } else {
        pp = j + 1;
      }
    }
    // --- --- --- Stage 2: three-way scan, up to the previous pruning point.
    for (; j < prev_pp; ++j) {
      const double v = squared_cost(ri, cols[j - 1]) + min3(curr[j - 1], prev[j], prev[j - 1]);
      curr[j] = v;
      sink.cell(i, j, v);
      if (v <= ub) { pp = j + 1; }
    }
    // --- --- --- Stage 3: at the previous pruning point column.
    if (j <= jStop) {
      const double d = squared_cost(ri, cols[j - 1]);
      if (j == next_start) {
        // Follows a discard run: top and left are both > ub, only the
        // diagonal remains. A value > ub here is a border collision.
        const double v = d + prev[j - 1];
        curr[j] = v;
        sink.cell(i, j, v);
        if (v <= ub) {
          pp = j + 1;
        } else {
          sink.abandon();
          return PRUNED;
        }
      } else {
        // Top neighbour is the previous pruning point: left and diagonal.
        const double v = d + std::min(curr[j - 1], prev[j - 1]);
        curr[j] = v;
        sink.cell(i, j, v);
        if (v <= ub) { pp = j + 1; }
      }
      ++j;
    } else if (j == next_start) {
      // Stage 1 consumed the reachable row.
      sink.abandon();
      return PRUNED;
    }
    // --- --- --- Stage 4: past the previous pruning point, left only. Stop
    // as soon as a cell stays > ub: everything after it is > ub too.
    for (; j == pp && j <= jStop; ++j) {
      const double v = squared_cost(ri, cols[j - 1]) + curr[j - 1];
      curr[j] = v;
      sink.cell(i, j, v);
      if (v <= ub) { ++pp; }
    }
    if (jStop + 1 <= lc) { curr[jStop + 1] = PINF; }
    if (pp <= jStop) { sink.pruning_point(i, pp); }
    assert(pp >= 1);
    prev_pp = pp;
  }

  // The last cell was computed and kept iff the pruning point moved past it.
  if (prev_pp > lc) { return curr[lc]; }
  sink.abandon();
  return PRUNED;
}

} // namespace

// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
// Entry points
// --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

double dtw_full(std::span<const double> a, std::span<const double> b) {
  const auto [rows, cols] = orient(a, b);
  NullSink sink;
  return full_scan(rows, cols, rows.size(), sink);
}

double dtw_full(std::span<const double> a, std::span<const double> b, KernelTrace& trace) {
  const auto [rows, cols] = orient(a, b);
  TraceSink sink{trace};
  return full_scan(rows, cols, rows.size(), sink);
}

double dtw_windowed(std::span<const double> a, std::span<const double> b, Band band) {
  const auto [rows, cols] = orient(a, b);
  const auto w = effective_window(band, rows.size(), cols.size());
  if (!w) { return PRUNED; }
  NullSink sink;
  return full_scan(rows, cols, *w, sink);
}

double dtw_windowed(std::span<const double> a, std::span<const double> b, Band band,
                    KernelTrace& trace) {
  const auto [rows, cols] = orient(a, b);
  const auto w = effective_window(band, rows.size(), cols.size());
  if (!w) { return PRUNED; }
  TraceSink sink{trace};
  return full_scan(rows, cols, *w, sink);
}

double dtw_left_prune(std::span<const double> a, std::span<const double> b, double ub) {
  const auto [rows, cols] = orient(a, b);
  NullSink sink;
  return left_prune_scan(rows, cols, rows.size(), ub, sink);
}

double dtw_left_prune(std::span<const double> a, std::span<const double> b, double ub,
                      KernelTrace& trace) {
  const auto [rows, cols] = orient(a, b);
  TraceSink sink{trace};
  return left_prune_scan(rows, cols, rows.size(), ub, sink);
}

double dtw_left_prune_windowed(std::span<const double> a, std::span<const double> b, Band band,
                               double ub) {
  const auto [rows, cols] = orient(a, b);
  const auto w = effective_window(band, rows.size(), cols.size());
  if (!w) { return PRUNED; }
  NullSink sink;
  return left_prune_scan(rows, cols, *w, ub, sink);
}

double dtw_left_prune_windowed(std::span<const double> a, std::span<const double> b, Band band,
                               double ub, KernelTrace& trace) {
  const auto [rows, cols] = orient(a, b);
  const auto w = effective_window(band, rows.size(), cols.size());
  if (!w) { return PRUNED; }
  TraceSink sink{trace};
  return left_prune_scan(rows, cols, *w, ub, sink);
}

double ea_pruned_dtw(std::span<const double> a, std::span<const double> b, double ub) {
  const auto [rows, cols] = orient(a, b);
  NullSink sink;
  return ea_pruned_scan(rows, cols, rows.size(), ub, {}, sink);
}

double ea_pruned_dtw(std::span<const double> a, std::span<const double> b, double ub,
                     KernelTrace& trace) {
  const auto [rows, cols] = orient(a, b);
  TraceSink sink{trace};
  return ea_pruned_scan(rows, cols, rows.size(), ub, {}, sink);
}

double ea_pruned_dtw_windowed(std::span<const double> a, std::span<const double> b, Band band,
                              double ub, std::span<const double> cumulative_bound) {
  const auto [rows, cols] = orient(a, b);
  check_cumulative_bound(cumulative_bound, rows.size());
  const auto w = effective_window(band, rows.size(), cols.size());
  if (!w) { return PRUNED; }
  NullSink sink;
  return ea_pruned_scan(rows, cols, *w, ub, cumulative_bound, sink);
}

double ea_pruned_dtw_windowed(std::span<const double> a, std::span<const double> b, Band band,
                              double ub, std::span<const double> cumulative_bound,
                              KernelTrace& trace) {
  const auto [rows, cols] = orient(a, b);
  check_cumulative_bound(cumulative_bound, rows.size());
  const auto w = effective_window(band, rows.size(), cols.size());
  if (!w) { return PRUNED; }
  TraceSink sink{trace};
  return ea_pruned_scan(rows, cols, *w, ub, cumulative_bound, sink);
}

} // namespace eapdtw
