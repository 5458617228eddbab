#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eapdtw {

/// Sentinel for "abandoned / pruned: the result strictly exceeds the threshold".
/// Behaves as +INF under min and comparison, matching the DP border value.
inline constexpr double PRUNED = std::numeric_limits<double>::infinity();

[[nodiscard]] inline bool is_pruned(double v) { return v == PRUNED; }

/// A finite sequence of real-valued samples. Construction rejects empty input
/// and non-finite samples, so every Series held by the library is valid.
class Series {
public:
  explicit Series(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) { throw std::invalid_argument("Series: empty input"); }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!std::isfinite(samples_[i])) {
        throw std::invalid_argument("Series: non-finite sample at index " + std::to_string(i));
      }
    }
  }

  [[nodiscard]] std::size_t length() const { return samples_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return samples_[i]; }
  [[nodiscard]] const double* data() const { return samples_.data(); }
  [[nodiscard]] std::span<const double> view() const { return samples_; }
  [[nodiscard]] const std::vector<double>& samples() const { return samples_; }

  [[nodiscard]] auto begin() const { return samples_.begin(); }
  [[nodiscard]] auto end() const { return samples_.end(); }

  /// Prefix of length n (n >= 1, n <= length).
  [[nodiscard]] Series prefix(std::size_t n) const {
    if (n == 0 || n > samples_.size()) { throw std::invalid_argument("Series::prefix: bad length"); }
    return Series(std::vector<double>(samples_.begin(), samples_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

private:
  std::vector<double> samples_;
};

} // namespace eapdtw
