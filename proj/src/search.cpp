#include "eapdtw/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace eapdtw {

namespace {

constexpr double kMinStddev = 1e-12;

// Sliding sums are rebuilt from scratch this often to bound float drift.
constexpr std::size_t kStatsResetInterval = 100000;

std::size_t window_cells_for(double ratio, std::size_t m) {
  const double w = std::floor(ratio * static_cast<double>(m));
  return w <= 0.0 ? 0 : static_cast<std::size_t>(w);
}

} // namespace

RunningStats RunningStats::over(std::span<const double> window) {
  RunningStats s;
  for (const double x : window) {
    s.sum += x;
    s.sum_of_squares += x * x;
  }
  s.count = window.size();
  return s;
}

double RunningStats::stddev() const { return std::sqrt(variance()); }

void znormalize_into(std::span<const double> src, const RunningStats& stats,
                     std::span<double> dst) {
  const double m = stats.mean();
  const double s = stats.stddev();
  if (s < kMinStddev) {
    std::fill(dst.begin(), dst.end(), 0.0);
    return;
  }
  for (std::size_t i = 0; i < src.size(); ++i) { dst[i] = (src[i] - m) / s; }
}

Series znormalize(const Series& s, const RunningStats& stats) {
  std::vector<double> out(s.length());
  znormalize_into(s.view(), stats, out);
  return Series(std::move(out));
}

std::string to_string(Algo a) {
  switch (a) {
    case Algo::full: return "full";
    case Algo::left_prune: return "lp";
    case Algo::ea_pruned: return "eap";
  }
  return "?";
}

CascadeTier cascade_decision(std::span<const double> query_norm, const Envelope& query_env,
                             std::span<const std::size_t> order,
                             std::span<const double> candidate_raw, const RunningStats& stats,
                             const BestSoFar& bsf, const SearchConfig& cfg, CascadeWorkspace& ws) {
  const std::size_t m = query_norm.size();
  ws.candidate_norm.resize(m);
  ws.cumulative.clear();

  if (!cfg.use_lower_bounds) {
    znormalize_into(candidate_raw, stats, ws.candidate_norm);
    return CascadeTier::none;
  }

  const double ub = bsf.found ? bsf.distance_sq : PRUNED;
  const double mean = stats.mean();
  const double sd = stats.stddev();
  const bool constant = sd < kMinStddev;

  // --- Tier 1: LB_Kim on the two aligned extremities.
  if (m >= 2) {
    const double c0 = constant ? 0.0 : (candidate_raw.front() - mean) / sd;
    const double cl = constant ? 0.0 : (candidate_raw.back() - mean) / sd;
    const double kim = squared_cost(query_norm.front(), c0) + squared_cost(query_norm.back(), cl);
    if (kim > ub) { return CascadeTier::kim; }
  }

  znormalize_into(candidate_raw, stats, ws.candidate_norm);

  // --- Tier 2: LB_Keogh, query envelope against the normalized candidate.
  const BoundResult eq = lb_keogh(query_env, ws.candidate_norm, ub, order);
  if (eq.total > ub) { return CascadeTier::keogh_eq; }
  ws.contrib_eq = eq.contributions;

  // --- Tier 3: LB_Keogh, candidate envelope against the normalized query.
  const Envelope cand_env = compute_envelope(ws.candidate_norm, Band::cells(query_env.window));
  const BoundResult ec = lb_keogh(cand_env, query_norm, ub, order);
  if (ec.total > ub) { return CascadeTier::keogh_ec; }
  ws.contrib_ec = ec.contributions;

  if (cfg.tighten_ub) {
    const auto& contrib = eq.total > ec.total ? ws.contrib_eq : ws.contrib_ec;
    ws.cumulative = cumulative_bound(contrib);
  }
  return CascadeTier::none;
}

double tighten_threshold(const BestSoFar& bsf, std::span<const double> cb, std::size_t row,
                         std::size_t window_cells) {
  if (cb.empty()) { return bsf.distance_sq; }
  const std::size_t k = std::min(row + window_cells, cb.size());
  const double t = bsf.distance_sq - cb[k - 1];
  return t > 0.0 ? t : 0.0;
}

SearchResult similarity_search(const Series& reference, const Series& query,
                               const SearchConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t m = cfg.query_length == 0 ? query.length() : cfg.query_length;
  if (m == 0 || m > query.length()) {
    throw std::invalid_argument("similarity_search: bad query length");
  }
  if (m > reference.length()) {
    throw std::invalid_argument("similarity_search: query longer than reference");
  }
  // tighten_ub needs the Keogh contributions, so without lower bounds it is
  // inert: cascade_decision never consults it on the no-lb path.

  const std::size_t w = window_cells_for(cfg.window_ratio, m);
  const Band band = Band::cells(w);
  const std::span<const double> ref = reference.view();

  // The query is normalized once, batch stats over its prefix.
  const std::span<const double> q_raw = query.view().subspan(0, m);
  std::vector<double> q_norm(m);
  znormalize_into(q_raw, RunningStats::over(q_raw), q_norm);
  const Envelope q_env = compute_envelope(q_norm, band);

  // Keogh accumulation order: by descending |normalized query value|, index
  // as tie break, fixed once for the whole scan.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double fa = std::fabs(q_norm[a]);
    const double fb = std::fabs(q_norm[b]);
    return fa != fb ? fa > fb : a < b;
  });

  BestSoFar bsf;
  SearchReport report;
  CascadeWorkspace ws;
  KernelTrace cells; // counters only; capture stays off

  RunningStats stats = RunningStats::over(ref.subspan(0, m));
  std::size_t slides_since_reset = 0;

  const std::size_t last_start = reference.length() - m;
  for (std::size_t s = 0; s <= last_start; ++s) {
    if (s > 0) {
      stats.add(ref[s + m - 1]);
      stats.remove(ref[s - 1]);
      if (++slides_since_reset == kStatsResetInterval) {
        stats = RunningStats::over(ref.subspan(s, m));
        slides_since_reset = 0;
      }
    }
    ++report.candidates_total;
    const std::span<const double> cand_raw = ref.subspan(s, m);

    const CascadeTier tier = cascade_decision(q_norm, q_env, order, cand_raw, stats, bsf, cfg, ws);
    switch (tier) {
      case CascadeTier::kim: ++report.pruned_kim; continue;
      case CascadeTier::keogh_eq: ++report.pruned_keogh_eq; continue;
      case CascadeTier::keogh_ec: ++report.pruned_keogh_ec; continue;
      case CascadeTier::none: break;
    }

    ++report.dtw_calls;
    const double ub = bsf.found ? bsf.distance_sq : PRUNED;
    double d = 0.0;
    switch (cfg.algorithm) {
      case Algo::full:
        d = dtw_windowed(ws.candidate_norm, q_norm, band, cells);
        break;
      case Algo::left_prune:
        d = dtw_left_prune_windowed(ws.candidate_norm, q_norm, band, ub, cells);
        break;
      case Algo::ea_pruned:
        d = ea_pruned_dtw_windowed(ws.candidate_norm, q_norm, band, ub, ws.cumulative, cells);
        break;
    }

    if (is_pruned(d)) {
      ++report.dtw_abandoned;
      continue;
    }
    if (!bsf.found || d < bsf.distance_sq) {
      bsf.found = true;
      bsf.location = s;
      bsf.distance_sq = d;
    }
  }

  report.dp_cells_evaluated = cells.cells_evaluated;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {bsf, report};
}

} // namespace eapdtw
