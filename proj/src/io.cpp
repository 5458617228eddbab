#include "eapdtw/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace eapdtw {

Series load_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) { throw std::runtime_error("cannot open '" + path.string() + "'"); }

  std::vector<double> samples;
  std::string token;
  std::size_t index = 0;
  while (in >> token) {
    ++index;
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw std::runtime_error("'" + path.string() + "': token " + std::to_string(index) +
                               " ('" + token + "') is not a number");
    }
    if (!std::isfinite(v)) {
      throw std::runtime_error("'" + path.string() + "': token " + std::to_string(index) +
                               " is not finite");
    }
    samples.push_back(v);
  }
  if (samples.empty()) { throw std::runtime_error("'" + path.string() + "': empty series file"); }
  return Series(std::move(samples));
}

void save_series(const Series& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) { throw std::runtime_error("cannot write '" + path.string() + "'"); }
  for (const double v : s) { out << format_double(v) << '\n'; }
}

std::string format_double(double v) {
  if (v == PRUNED) { return "inf"; }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void emit_stats(const SearchReport& report, const BestSoFar& best,
                const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["candidates_total"] = report.candidates_total;
  j["pruned_kim"] = report.pruned_kim;
  j["pruned_keogh_eq"] = report.pruned_keogh_eq;
  j["pruned_keogh_ec"] = report.pruned_keogh_ec;
  j["dtw_calls"] = report.dtw_calls;
  j["dtw_abandoned"] = report.dtw_abandoned;
  j["dp_cells_evaluated"] = report.dp_cells_evaluated;
  j["elapsed_seconds"] = report.elapsed_seconds;
  j["best_location"] = best.location;
  j["best_distance_sq"] = best.distance_sq;

  std::ofstream out(path);
  if (!out) { throw std::runtime_error("cannot write stats to '" + path.string() + "'"); }
  out << j.dump(2) << '\n';
}

void write_trace_csv(const KernelTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) { throw std::runtime_error("cannot write trace to '" + path.string() + "'"); }
  out << "row,col,value,kind\n";

  // Restore event order: cells carry the chronology; markers attach to their
  // cell (discards right after it, pruning points when the row closes, the
  // abandon cell last).
  auto value_at = [&](CellRef ref) -> std::string {
    for (auto it = trace.cells.rbegin(); it != trace.cells.rend(); ++it) {
      if (it->row == ref.row && it->col == ref.col) { return format_double(it->value); }
    }
    return "inf";
  };
  auto emit = [&](std::size_t row, std::size_t col, const std::string& value, const char* kind) {
    out << row << ',' << col << ',' << value << ',' << kind << '\n';
  };

  std::size_t next_discard = 0;
  std::size_t next_pruning = 0;
  // Pruning points on the border row precede every cell.
  while (next_pruning < trace.pruning_points.size() &&
         trace.pruning_points[next_pruning].row == 0) {
    const auto p = trace.pruning_points[next_pruning++];
    emit(p.row, p.col, "inf", "pruning_point");
  }
  for (std::size_t k = 0; k < trace.cells.size(); ++k) {
    const auto& c = trace.cells[k];
    emit(c.row, c.col, format_double(c.value), "cell");
    if (next_discard < trace.discard_points.size() &&
        trace.discard_points[next_discard].row == c.row &&
        trace.discard_points[next_discard].col == c.col) {
      ++next_discard;
      emit(c.row, c.col, format_double(c.value), "discard_point");
    }
    const bool row_done = k + 1 == trace.cells.size() || trace.cells[k + 1].row != c.row;
    while (row_done && next_pruning < trace.pruning_points.size() &&
           trace.pruning_points[next_pruning].row == c.row) {
      const auto p = trace.pruning_points[next_pruning++];
      emit(p.row, p.col, value_at(p), "pruning_point");
    }
  }
  if (trace.abandon_cell) {
    const auto a = *trace.abandon_cell;
    emit(a.row, a.col, value_at(a), "abandon");
  }
}

Series random_walk(std::size_t length, std::uint64_t seed) {
  if (length == 0) { throw std::invalid_argument("random_walk: zero length"); }
  std::mt19937_64 gen(seed);
  std::vector<double> samples(length);
  double x = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    // Top 53 bits -> [0,1), shifted to a centered step. The mt19937_64
    // stream is specified by the standard, so this is portable.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    x += u - 0.5;
    samples[i] = x;
  }
  return Series(std::move(samples));
}

} // namespace eapdtw
