#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eapdtw/dtw.hpp"
#include "eapdtw/io.hpp"
#include "eapdtw/search.hpp"
#include "eapdtw/series.hpp"

namespace {

using namespace eapdtw;

Algo parse_algo(const std::string& name) {
  if (name == "full") { return Algo::full; }
  if (name == "lp") { return Algo::left_prune; }
  if (name == "eap") { return Algo::ea_pruned; }
  throw CLI::ValidationError("--algo", "expected one of full|lp|eap");
}

double parse_ub(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "+inf") { return PRUNED; }
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size() || std::isnan(v) || v < 0.0) { throw std::invalid_argument(text); }
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError("--ub", "expected a non-negative float or 'inf'");
  }
}

bool on_ratio_grid(double r) {
  for (const double g : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    if (std::fabs(r - g) < 1e-9) { return true; }
  }
  return false;
}

void print_result(const BestSoFar& best) {
  std::cout << "Location: " << best.location << "\n";
  std::cout << "Distance: " << format_double(std::sqrt(best.distance_sq)) << "\n";
  std::cout << "Distance_sq: " << format_double(best.distance_sq) << "\n";
}

std::string ratio_label(double r) {
  std::string s = format_double(r);
  for (char& c : s) {
    if (c == '.') { c = 'p'; }
  }
  return s;
}

int run_search(const std::string& data_path, const std::string& query_path, std::size_t query_len,
               double ratio, const std::string& algo_name, bool no_lb, bool no_tighten,
               const std::string& stats_path, bool allow_any_ratio) {
  if (!allow_any_ratio && !on_ratio_grid(ratio)) {
    throw CLI::ValidationError("--window-ratio",
                               "outside the supported grid {0.1,0.2,0.3,0.4,0.5}; "
                               "pass --allow-any-ratio to override");
  }
  const Series reference = load_series(data_path);
  const Series query = load_series(query_path);

  SearchConfig cfg;
  cfg.query_length = query_len;
  cfg.window_ratio = ratio;
  cfg.algorithm = parse_algo(algo_name);
  cfg.use_lower_bounds = !no_lb;
  cfg.tighten_ub = !no_tighten && cfg.use_lower_bounds;

  const SearchResult res = similarity_search(reference, query, cfg);
  print_result(res.best);
  std::cout << "Candidates: " << res.report.candidates_total
            << "  pruned_kim: " << res.report.pruned_kim
            << "  pruned_keogh_eq: " << res.report.pruned_keogh_eq
            << "  pruned_keogh_ec: " << res.report.pruned_keogh_ec
            << "  dtw_calls: " << res.report.dtw_calls
            << "  dtw_abandoned: " << res.report.dtw_abandoned << "\n";
  std::cout << "DP cells evaluated: " << res.report.dp_cells_evaluated << "\n";
  std::cout << "Elapsed: " << format_double(res.report.elapsed_seconds) << " s\n";
  if (!stats_path.empty()) { emit_stats(res.report, res.best, stats_path); }
  return 0;
}

int run_trace(const std::string& a_path, const std::string& b_path, const std::string& ub_text,
              const std::string& algo_name, const std::string& out_path) {
  const Series a = load_series(a_path);
  const Series b = load_series(b_path);
  const double ub = parse_ub(ub_text);

  KernelTrace trace;
  trace.capture_cells = true;
  const Algo algo = parse_algo(algo_name);
  switch (algo) {
    case Algo::full: (void)dtw_full(a, b, trace); break;
    case Algo::left_prune: (void)dtw_left_prune(a, b, ub, trace); break;
    case Algo::ea_pruned: (void)ea_pruned_dtw(a, b, ub, trace); break;
  }
  write_trace_csv(trace, out_path);
  return 0;
}

int run_bench(const std::vector<std::size_t>& lengths, const std::vector<double>& ratios,
              const std::vector<std::string>& algos, const std::string& stats_dir,
              std::size_t synthetic_len, std::uint64_t seed) {
  std::filesystem::create_directories(stats_dir);
  std::size_t max_len = 0;
  for (const std::size_t l : lengths) { max_len = std::max(max_len, l); }

  const Series reference = random_walk(synthetic_len, seed);
  const Series query = random_walk(max_len, seed + 1);

  for (const std::string& algo_name : algos) {
    const Algo algo = parse_algo(algo_name);
    for (const std::size_t len : lengths) {
      for (const double ratio : ratios) {
        SearchConfig cfg;
        cfg.query_length = len;
        cfg.window_ratio = ratio;
        cfg.algorithm = algo;
        const SearchResult res = similarity_search(reference, query, cfg);
        const std::filesystem::path out = std::filesystem::path(stats_dir) /
            ("stats_" + algo_name + "_len" + std::to_string(len) + "_ratio" +
             ratio_label(ratio) + ".json");
        emit_stats(res.report, res.best, out);
        std::cout << "bench algo=" << algo_name << " len=" << len
                  << " ratio=" << format_double(ratio) << " location=" << res.best.location
                  << " distance_sq=" << format_double(res.best.distance_sq)
                  << " cells=" << res.report.dp_cells_evaluated
                  << " elapsed=" << format_double(res.report.elapsed_seconds) << "s\n";
      }
    }
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact DTW with pruning and early abandoning, plus subsequence similarity search.\n"
      "Subsequence locations are 0-based; trace matrix rows/columns are 1-based\n"
      "(row 0 / column 0 are the DP borders)."};
  app.require_subcommand(1);

  // --- search
  auto* search = app.add_subcommand("search", "locate the query's nearest subsequence");
  std::string data_path;
  std::string query_path;
  std::size_t query_len = 0;
  double ratio = 0.1;
  std::string algo_name = "eap";
  bool no_lb = false;
  bool no_tighten = false;
  bool allow_any_ratio = false;
  std::string stats_path;
  std::uint64_t search_seed = 0;
  search->add_option("--data", data_path, "reference series file")->required();
  search->add_option("--query", query_path, "query series file")->required();
  search->add_option("--query-len", query_len, "query prefix length")->required();
  search->add_option("--window-ratio", ratio, "warping window as a ratio of the query length")
      ->required();
  search->add_option("--algo", algo_name, "DTW kernel: full|lp|eap")->required();
  search->add_flag("--no-lb", no_lb, "disable the lower-bound cascade");
  search->add_flag("--no-tighten", no_tighten, "disable per-row threshold tightening");
  search->add_flag("--allow-any-ratio", allow_any_ratio,
                   "accept window ratios outside {0.1,0.2,0.3,0.4,0.5}");
  search->add_option("--stats", stats_path, "write run statistics (JSON) to this path");
  search->add_option("--seed", search_seed, "accepted for protocol compatibility; unused");

  // --- trace
  auto* trace = app.add_subcommand("trace", "dump the evaluated DP matrix cells as CSV");
  std::string a_path;
  std::string b_path;
  std::string ub_text = "inf";
  std::string trace_algo = "eap";
  std::string out_path;
  trace->add_option("--a", a_path, "first series file")->required();
  trace->add_option("--b", b_path, "second series file")->required();
  trace->add_option("--ub", ub_text, "threshold (float or 'inf'); ignored by --algo full")
      ->required();
  trace->add_option("--algo", trace_algo, "DTW kernel: full|lp|eap")->required();
  trace->add_option("--out", out_path, "output CSV path")->required();

  // --- bench
  auto* bench = app.add_subcommand("bench", "run the query-length x window-ratio grid");
  std::vector<std::size_t> grid_lengths = {128, 256, 512, 1024};
  std::vector<double> grid_ratios = {0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<std::string> grid_algos = {"full", "lp", "eap"};
  std::string stats_dir;
  std::size_t synthetic_len = 100000;
  std::uint64_t bench_seed = 42;
  bench->add_option("--grid-lengths", grid_lengths, "query lengths")->delimiter(',');
  bench->add_option("--grid-ratios", grid_ratios, "window ratios")->delimiter(',');
  bench->add_option("--algos", grid_algos, "kernels to run")->delimiter(',');
  bench->add_option("--stats-dir", stats_dir, "directory for per-run statistics")->required();
  bench->add_option("--synthetic", synthetic_len, "synthetic random-walk reference length");
  bench->add_option("--seed", bench_seed, "random-walk seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (search->parsed()) {
      return run_search(data_path, query_path, query_len, ratio, algo_name, no_lb, no_tighten,
                        stats_path, allow_any_ratio);
    }
    if (trace->parsed()) { return run_trace(a_path, b_path, ub_text, trace_algo, out_path); }
    if (bench->parsed()) {
      return run_bench(grid_lengths, grid_ratios, grid_algos, stats_dir, synthetic_len,
                       bench_seed);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
