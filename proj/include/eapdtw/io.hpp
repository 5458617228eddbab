#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dtw.hpp"
#include "search.hpp"
#include "series.hpp"

namespace eapdtw {

/// Load a series from a whitespace-delimited ASCII file. Non-numeric tokens,
/// NaN and infinities are rejected with the (1-based) offending token index.
[[nodiscard]] Series load_series(const std::filesystem::path& path);

/// Write a series back as whitespace-delimited text, one value per line.
void save_series(const Series& s, const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double ("inf" for the sentinel).
[[nodiscard]] std::string format_double(double v);

/// Write the run statistics as a flat JSON object.
void emit_stats(const SearchReport& report, const BestSoFar& best,
                const std::filesystem::path& path);

/// Write a trace as CSV rows (row, col, value, kind) with kind one of
/// cell / discard_point / pruning_point / abandon, in event order.
/// Matrix rows and columns are 1-based, matching the DP matrix coordinates.
void write_trace_csv(const KernelTrace& trace, const std::filesystem::path& path);

/// Seeded synthetic random walk with uniform steps in [-0.5, 0.5). The raw
/// mt19937_64 stream is mapped directly so output is identical everywhere.
[[nodiscard]] Series random_walk(std::size_t length, std::uint64_t seed);

} // namespace eapdtw
