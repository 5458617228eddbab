// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 7-9 share one run matrix (a 100k-sample scan grid), so
// the matrix is built inside criterion 7 and read by 8 and 9.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eapdtw/dtw.hpp"
#include "eapdtw/io.hpp"
#include "eapdtw/lower_bounds.hpp"
#include "eapdtw/search.hpp"
#include "eapdtw/series.hpp"
#include "oracles.hpp"
#include "search_oracle.hpp"

using namespace eapdtw;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<double> kS = {3, 1, 4, 4, 1, 1};
const std::vector<double> kT = {1, 3, 2, 1, 2, 2};

double traced_cell(const KernelTrace& t, std::size_t row, std::size_t col) {
  for (const auto& c : t.cells) {
    if (c.row == row && c.col == col) { return c.value; }
  }
  return -1.0;
}

// --- Criterion 1: the worked example, exact values, < 1 ms.
Outcome criterion1() {
  Outcome out;
  (void)dtw_full(std::span<const double>{kS}, std::span<const double>{kT}); // warm up

  const auto t0 = Clock::now();
  const double d = dtw_full(std::span<const double>{kS}, std::span<const double>{kT});
  KernelTrace trace;
  trace.capture_cells = true;
  (void)dtw_full(std::span<const double>{kS}, std::span<const double>{kT}, trace);
  out.seconds = seconds_since(t0);

  double mx = 0.0;
  for (const auto& c : trace.cells) { mx = std::max(mx, c.value); }
  out.pass = d == 9.0 && traced_cell(trace, 2, 2) == 8.0 && traced_cell(trace, 3, 4) == 14.0 &&
             mx == 22.0 && out.seconds < 1e-3;
  std::ostringstream ss;
  ss << "dtw=" << d << " (2,2)=" << traced_cell(trace, 2, 2) << " (3,4)=" << traced_cell(trace, 3, 4)
     << " max=" << mx;
  out.detail = ss.str();
  return out;
}

// --- Criterion 2: early-abandon fixtures, exact, < 1 ms.
Outcome criterion2() {
  Outcome out;
  const std::span<const double> s{kS};
  const std::span<const double> t{kT};
  (void)ea_pruned_dtw(s, t, 9.0); // warm up

  const auto t0 = Clock::now();
  const double at9 = ea_pruned_dtw(s, t, 9.0);
  KernelTrace ea6;
  const double at6 = ea_pruned_dtw(s, t, 6.0, ea6);
  KernelTrace lp6;
  const double lp_at6 = dtw_left_prune(s, t, 6.0, lp6);
  out.seconds = seconds_since(t0);

  const bool ea_abandons_at_5_3 =
      ea6.abandon_cell.has_value() && *ea6.abandon_cell == CellRef{5, 3};
  const bool lp_abandons_on_line_5 = lp6.abandon_cell.has_value() && lp6.abandon_cell->row == 5;
  out.pass = at9 == 9.0 && is_pruned(at6) && ea_abandons_at_5_3 && is_pruned(lp_at6) &&
             lp_abandons_on_line_5 && out.seconds < 1e-3;
  std::ostringstream ss;
  ss << "ea(9)=" << at9 << " ea(6) abandon=(" << (ea6.abandon_cell ? ea6.abandon_cell->row : 0)
     << "," << (ea6.abandon_cell ? ea6.abandon_cell->col : 0) << ")"
     << " lp(6) abandon row=" << (lp6.abandon_cell ? lp6.abandon_cell->row : 0);
  out.detail = ss.str();
  return out;
}

// --- Criterion 3: 1,000 random pairs vs the direct recursion; bit-exact
//     tiering at an infinite threshold. < 10 s.
Outcome criterion3() {
  Outcome out;
  const auto t0 = Clock::now();
  oracle::Rng rng(0xacc30001);
  std::size_t bad_oracle = 0;
  std::size_t bad_tier = 0;
  for (int it = 0; it < 1000; ++it) {
    const auto s = rng.series(rng.index(2, 16));
    const auto t = rng.series(rng.index(2, 16));
    const std::span<const double> sv{s};
    const std::span<const double> tv{t};
    const double full = dtw_full(sv, tv);
    const double want = oracle::dtw_recursive(s, t);
    if (std::fabs(full - want) > 1e-9 * std::max(1.0, std::fabs(want))) { ++bad_oracle; }
    if (ea_pruned_dtw(sv, tv, PRUNED) != full || dtw_left_prune(sv, tv, PRUNED) != full) {
      ++bad_tier;
    }
  }
  out.seconds = seconds_since(t0);
  out.pass = bad_oracle == 0 && bad_tier == 0 && out.seconds < 10.0;
  out.detail = "oracle mismatches=" + std::to_string(bad_oracle) +
               " tiering mismatches=" + std::to_string(bad_tier);
  return out;
}

// Shared sweep for criteria 4 and 5.
struct ContractSweep {
  std::size_t wrong_result = 0;
  std::size_t wrong_tie = 0;
  std::size_t dominance_violations = 0;
  std::size_t monotonicity_violations = 0;
  std::size_t trials = 0;
  double seconds = 0.0;
};

const ContractSweep& contract_sweep() {
  static const ContractSweep sweep = [] {
    ContractSweep r;
    const auto t0 = Clock::now();
    oracle::Rng rng(0xacc40001);
    for (int it = 0; it < 10000; ++it) {
      const auto s = rng.series(rng.index(2, 32));
      const auto t = rng.series(rng.index(2, 32));
      const std::span<const double> sv{s};
      const std::span<const double> tv{t};
      const double d = dtw_full(sv, tv);

      double ub = 0.0;
      switch (it % 4) {
        case 0: ub = d; break; // the exact tie
        case 1: ub = d * rng.uniform(0.0, 1.0); break;
        case 2: ub = d * rng.uniform(1.0, 2.0) + 0.5; break;
        default: ub = rng.uniform(0.0, 2.0 * d); break;
      }

      KernelTrace te, tl, tf, te2;
      const double got_ea = ea_pruned_dtw(sv, tv, ub, te);
      const double got_lp = dtw_left_prune(sv, tv, ub, tl);
      (void)dtw_full(sv, tv, tf);

      if (d <= ub) {
        if (got_ea != d || got_lp != d) { ++r.wrong_result; }
        if (it % 4 == 0 && (is_pruned(got_ea) || is_pruned(got_lp))) { ++r.wrong_tie; }
      } else {
        if (!is_pruned(got_ea) || !is_pruned(got_lp)) { ++r.wrong_result; }
      }

      if (!(te.cells_evaluated <= tl.cells_evaluated &&
            tl.cells_evaluated <= tf.cells_evaluated &&
            tf.cells_evaluated == s.size() * t.size())) {
        ++r.dominance_violations;
      }
      const double ub2 = ub + rng.uniform(0.0, 1.0) * (d + 1.0);
      (void)ea_pruned_dtw(sv, tv, ub2, te2);
      if (te.cells_evaluated > te2.cells_evaluated) { ++r.monotonicity_violations; }
      ++r.trials;
    }
    r.seconds = seconds_since(t0);
    return r;
  }();
  return sweep;
}

// --- Criterion 4: early-abandon contract over 10,000 triples. < 30 s.
Outcome criterion4() {
  const ContractSweep& s = contract_sweep();
  Outcome out;
  out.seconds = s.seconds;
  out.pass = s.wrong_result == 0 && s.wrong_tie == 0 && s.seconds < 30.0;
  out.detail = "trials=" + std::to_string(s.trials) +
               " wrong=" + std::to_string(s.wrong_result) +
               " tie-failures=" + std::to_string(s.wrong_tie);
  return out;
}

// --- Criterion 5: cell-count dominance and ub monotonicity, 100% of trials.
Outcome criterion5() {
  const ContractSweep& s = contract_sweep();
  Outcome out;
  out.seconds = 0.0; // piggybacks on criterion 4's sweep
  out.pass = s.dominance_violations == 0 && s.monotonicity_violations == 0;
  out.detail = "dominance violations=" + std::to_string(s.dominance_violations) +
               " monotonicity violations=" + std::to_string(s.monotonicity_violations);
  return out;
}

// --- Criterion 6: lower-bound soundness on 10,000 normalized pairs. < 30 s.
Outcome criterion6() {
  Outcome out;
  const auto t0 = Clock::now();
  oracle::Rng rng(0xacc60001);
  std::size_t kim_violations = 0;
  std::size_t keogh_violations = 0;
  std::size_t sandwich_violations = 0;
  for (int it = 0; it < 10000; ++it) {
    const std::size_t n = rng.index(2, 48);
    auto q = rng.series(n);
    auto c = rng.series(n);
    znormalize_into(q, RunningStats::over(q), q);
    znormalize_into(c, RunningStats::over(c), c);
    const std::size_t w = rng.index(0, n);
    const std::span<const double> qv{q};
    const std::span<const double> cv{c};

    if (lb_kim_fl(qv, cv) > dtw_full(qv, cv)) { ++kim_violations; }
    const Envelope env = compute_envelope(qv, Band::cells(w));
    if (lb_keogh(env, cv).total > dtw_windowed(qv, cv, Band::cells(w))) { ++keogh_violations; }
    for (std::size_t j = 0; j < n; ++j) {
      if (!(env.lower[j] <= q[j] && q[j] <= env.upper[j])) { ++sandwich_violations; }
    }
  }
  out.seconds = seconds_since(t0);
  out.pass = kim_violations == 0 && keogh_violations == 0 && sandwich_violations == 0 &&
             out.seconds < 30.0;
  out.detail = "kim=" + std::to_string(kim_violations) +
               " keogh=" + std::to_string(keogh_violations) +
               " sandwich=" + std::to_string(sandwich_violations);
  return out;
}

// --- Shared run matrix for criteria 7-9.
struct GridRun {
  BestSoFar best;
  SearchReport report;
};

struct SearchGrid {
  // key: (m, ratio_index, algo, lb, tighten)
  std::map<std::tuple<std::size_t, int, Algo, bool, bool>, GridRun> runs;
  std::map<std::size_t, oracle::ScanResult> oracle_at_r01;
  double seconds = 0.0;
  bool built = false;
};

constexpr double kRatios[] = {0.1, 0.2, 0.3, 0.4, 0.5};

const SearchGrid& search_grid() {
  static const SearchGrid grid = [] {
    SearchGrid g;
    const auto t0 = Clock::now();
    const Series reference = random_walk(100000, 20260809);
    const Series query_full = random_walk(1024, 414243);

    auto run_one = [&](std::size_t m, int ri, Algo algo, bool lb, bool tighten) {
      SearchConfig cfg;
      cfg.query_length = m;
      cfg.window_ratio = kRatios[ri];
      cfg.algorithm = algo;
      cfg.use_lower_bounds = lb;
      cfg.tighten_ub = tighten && lb;
      const SearchResult res = similarity_search(reference, query_full, cfg);
      g.runs[{m, ri, algo, lb, cfg.tighten_ub}] = {res.best, res.report};
    };

    for (const std::size_t m : {std::size_t{128}, std::size_t{512}}) {
      // Six configurations at ratio 0.1, plus the positional oracle.
      for (const Algo algo : {Algo::full, Algo::left_prune, Algo::ea_pruned}) {
        run_one(m, 0, algo, true, true);
        run_one(m, 0, algo, false, false);
      }
      g.oracle_at_r01[m] = oracle::brute_force_scan(reference, query_full, m, kRatios[0]);

      // The ratio axis: no-lb eap/full for the work-trend criterion, and
      // tighten on/off for the tightening criterion.
      for (int ri = 0; ri < 5; ++ri) {
        if (ri > 0) {
          run_one(m, ri, Algo::full, false, false);
          run_one(m, ri, Algo::ea_pruned, false, false);
          run_one(m, ri, Algo::ea_pruned, true, true);
        }
        run_one(m, ri, Algo::ea_pruned, true, false);
      }
    }
    g.seconds = seconds_since(t0);
    g.built = true;
    return g;
  }();
  return grid;
}

// --- Criterion 7: result invariance across the six configurations and the
//     brute-force oracle; counter conservation. < 10 min for the whole grid.
Outcome criterion7() {
  const SearchGrid& g = search_grid();
  Outcome out;
  out.seconds = g.seconds;
  std::size_t mismatches = 0;
  std::size_t conservation_failures = 0;

  for (const std::size_t m : {std::size_t{128}, std::size_t{512}}) {
    const auto& want = g.oracle_at_r01.at(m);
    for (const Algo algo : {Algo::full, Algo::left_prune, Algo::ea_pruned}) {
      for (const bool lb : {true, false}) {
        const auto& r = g.runs.at({m, 0, algo, lb, lb});
        if (r.best.location != want.location || r.best.distance_sq != want.distance_sq) {
          ++mismatches;
        }
      }
    }
    for (const auto& [key, r] : g.runs) {
      if (std::get<0>(key) != m) { continue; }
      const auto& rep = r.report;
      if (rep.candidates_total !=
              rep.pruned_kim + rep.pruned_keogh_eq + rep.pruned_keogh_ec + rep.dtw_calls ||
          rep.dtw_abandoned > rep.dtw_calls) {
        ++conservation_failures;
      }
    }
  }
  out.pass = mismatches == 0 && conservation_failures == 0 && g.seconds < 600.0;
  out.detail = "mismatches=" + std::to_string(mismatches) +
               " conservation failures=" + std::to_string(conservation_failures) + " grid built in " +
               std::to_string(g.seconds) + " s";
  return out;
}

// --- Criterion 8: work-reduction trend on the no-lb runs: eap beats full by
//     at least 2x in aggregate and grows sublinearly across the ratio axis.
Outcome criterion8() {
  const SearchGrid& g = search_grid();
  Outcome out;
  std::size_t cells_full = 0;
  std::size_t cells_eap = 0;
  bool growth_ok = true;
  std::ostringstream ss;

  for (const std::size_t m : {std::size_t{128}, std::size_t{512}}) {
    std::size_t full_lo = 0, full_hi = 0, eap_lo = 0, eap_hi = 0;
    for (int ri = 0; ri < 5; ++ri) {
      const auto& f = g.runs.at({m, ri, Algo::full, false, false}).report;
      const auto& e = g.runs.at({m, ri, Algo::ea_pruned, false, false}).report;
      cells_full += f.dp_cells_evaluated;
      cells_eap += e.dp_cells_evaluated;
      if (ri == 0) {
        full_lo = f.dp_cells_evaluated;
        eap_lo = e.dp_cells_evaluated;
      }
      if (ri == 4) {
        full_hi = f.dp_cells_evaluated;
        eap_hi = e.dp_cells_evaluated;
      }
    }
    const double full_growth = static_cast<double>(full_hi) / static_cast<double>(full_lo);
    const double eap_growth = static_cast<double>(eap_hi) / static_cast<double>(eap_lo);
    if (!(eap_growth < full_growth)) { growth_ok = false; }
    ss << " m=" << m << " growth eap=" << eap_growth << " full=" << full_growth << ";";
  }

  const bool factor_ok = cells_full >= 2 * cells_eap && cells_eap > 0;
  out.pass = factor_ok && growth_ok;
  std::ostringstream head;
  head << "aggregate full/eap=" << static_cast<double>(cells_full) / static_cast<double>(cells_eap)
       << ";" << ss.str();
  out.detail = head.str();
  return out;
}

// --- Criterion 9: tightening on/off yields identical results and does not
//     increase the aggregate DP work.
Outcome criterion9() {
  const SearchGrid& g = search_grid();
  Outcome out;
  std::size_t mismatches = 0;
  std::size_t cells_tight = 0;
  std::size_t cells_plain = 0;

  for (const std::size_t m : {std::size_t{128}, std::size_t{512}}) {
    for (int ri = 0; ri < 5; ++ri) {
      const auto& on = g.runs.at({m, ri, Algo::ea_pruned, true, true});
      const auto& off = g.runs.at({m, ri, Algo::ea_pruned, true, false});
      if (on.best.location != off.best.location ||
          on.best.distance_sq != off.best.distance_sq) {
        ++mismatches;
      }
      cells_tight += on.report.dp_cells_evaluated;
      cells_plain += off.report.dp_cells_evaluated;
    }
  }
  out.pass = mismatches == 0 && cells_tight <= cells_plain;
  out.detail = "mismatches=" + std::to_string(mismatches) +
               " cells tightened=" + std::to_string(cells_tight) +
               " untightened=" + std::to_string(cells_plain);
  return out;
}

} // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "worked example matrix values", criterion1},
      {2, "early-abandon fixtures", criterion2},
      {3, "oracle equivalence and bit-exact tiering", criterion3},
      {4, "early-abandon contract sweep", criterion4},
      {5, "cell-count dominance and monotonicity", criterion5},
      {6, "lower-bound soundness", criterion6},
      {7, "search result invariance", criterion7},
      {8, "work-reduction trend", criterion8},
      {9, "tightening soundness", criterion9},
  };

  int failures = 0;
  for (const auto& e : entries) {
    const Outcome out = e.fn();
    if (!out.pass) { ++failures; }
    std::printf("criterion %d [%s] %s (%s; %.3f s)\n", e.id, out.pass ? "PASS" : "FAIL", e.name,
                out.detail.c_str(), out.seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
