#pragma once

// Positional scan oracle for the search engine: z-normalize every window with
// the same running-sum arithmetic the engine pins down, call the plain
// windowed kernel at every start position, keep the first strict minimum.
// No cascade, no early abandoning, no shared code with the engine's scan.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "eapdtw/dtw.hpp"
#include "eapdtw/series.hpp"

namespace oracle {

struct ScanResult {
  std::size_t location = 0;
  double distance_sq = std::numeric_limits<double>::infinity();
};

inline ScanResult brute_force_scan(const eapdtw::Series& reference, const eapdtw::Series& query,
                                   std::size_t m, double ratio) {
  const std::span<const double> ref = reference.view();
  const std::span<const double> q_raw = query.view().subspan(0, m);
  const std::size_t w = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(m)));

  auto normalize = [m](std::span<const double> src, double sum, double sumsq,
                       std::vector<double>& dst) {
    const double mean = sum / static_cast<double>(m);
    double var = sumsq / static_cast<double>(m) - mean * mean;
    if (var < 0.0) { var = 0.0; }
    const double sd = std::sqrt(var);
    if (sd < 1e-12) {
      dst.assign(m, 0.0);
      return;
    }
    dst.resize(m);
    for (std::size_t i = 0; i < m; ++i) { dst[i] = (src[i] - mean) / sd; }
  };

  double qsum = 0.0;
  double qsumsq = 0.0;
  for (const double x : q_raw) {
    qsum += x;
    qsumsq += x * x;
  }
  std::vector<double> qn;
  normalize(q_raw, qsum, qsumsq, qn);

  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sum += ref[i];
    sumsq += ref[i] * ref[i];
  }

  ScanResult best;
  bool found = false;
  std::vector<double> cn;
  for (std::size_t s = 0; s + m <= ref.size(); ++s) {
    if (s > 0) {
      const double in = ref[s + m - 1];
      const double out = ref[s - 1];
      sum += in;
      sumsq += in * in;
      sum -= out;
      sumsq -= out * out;
    }
    normalize(ref.subspan(s, m), sum, sumsq, cn);
    const double d = eapdtw::dtw_windowed(std::span<const double>{cn}, std::span<const double>{qn},
                                          eapdtw::Band::cells(w));
    if (!found || d < best.distance_sq) {
      found = true;
      best.location = s;
      best.distance_sq = d;
    }
  }
  return best;
}

} // namespace oracle
