#include "eapdtw/lower_bounds.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace eapdtw {

Envelope compute_envelope(std::span<const double> series, Band band) {
  const std::size_t l = series.size();
  if (l == 0) { throw std::invalid_argument("compute_envelope: empty series"); }
  const std::size_t w = band.is_unbounded() ? l : std::min<std::size_t>(band.window, l);

  Envelope env;
  env.window = w;
  env.upper.resize(l);
  env.lower.resize(l);

  // Indices of a non-increasing (max) and non-decreasing (min) value sequence.
  std::deque<std::size_t> maxq;
  std::deque<std::size_t> minq;

  // Pre-load the window of position 0: [0, w].
  for (std::size_t k = 0; k < l && k <= w; ++k) {
    while (!maxq.empty() && series[maxq.back()] <= series[k]) { maxq.pop_back(); }
    maxq.push_back(k);
    while (!minq.empty() && series[minq.back()] >= series[k]) { minq.pop_back(); }
    minq.push_back(k);
  }

  for (std::size_t j = 0; j < l; ++j) {
    env.upper[j] = series[maxq.front()];
    env.lower[j] = series[minq.front()];
    // Slide to centre j+1: admit j+1+w, evict anything left of j+1-w.
    const std::size_t incoming = j + 1 + w;
    if (incoming < l) {
      while (!maxq.empty() && series[maxq.back()] <= series[incoming]) { maxq.pop_back(); }
      maxq.push_back(incoming);
      while (!minq.empty() && series[minq.back()] >= series[incoming]) { minq.pop_back(); }
      minq.push_back(incoming);
    }
    if (j + 1 >= w + 1) {
      const std::size_t outgoing = j + 1 - w - 1;
      if (!maxq.empty() && maxq.front() == outgoing) { maxq.pop_front(); }
      if (!minq.empty() && minq.front() == outgoing) { minq.pop_front(); }
    }
  }
  return env;
}

double lb_kim_fl(std::span<const double> q, std::span<const double> c) {
  if (q.size() != c.size()) { throw std::invalid_argument("lb_kim_fl: length mismatch"); }
  if (q.size() < 2) { throw std::invalid_argument("lb_kim_fl: series must have length >= 2"); }
  return squared_cost(q.front(), c.front()) + squared_cost(q.back(), c.back());
}

BoundResult lb_keogh(const Envelope& env, std::span<const double> series, double abandon_above,
                     std::span<const std::size_t> order) {
  const std::size_t l = series.size();
  if (env.upper.size() != env.lower.size()) {
    throw std::invalid_argument("lb_keogh: malformed envelope");
  }
  if (env.length() != l) { throw std::invalid_argument("lb_keogh: length mismatch"); }
  if (!order.empty() && order.size() != l) {
    throw std::invalid_argument("lb_keogh: order/series length mismatch");
  }

  BoundResult res;
  res.contributions.assign(l, 0.0);

  for (std::size_t k = 0; k < l; ++k) {
    const std::size_t j = order.empty() ? k : order[k];
    const double x = series[j];
    double d = 0.0;
    if (x > env.upper[j]) {
      d = squared_cost(x, env.upper[j]);
    } else if (x < env.lower[j]) {
      d = squared_cost(x, env.lower[j]);
    }
    res.total += d;
    res.contributions[j] = d;
    if (res.total > abandon_above) {
      res.abandoned = true;
      break;
    }
  }
  return res;
}

std::vector<double> cumulative_bound(std::span<const double> contributions) {
  std::vector<double> cb(contributions.size(), 0.0);
  if (contributions.empty()) { return cb; }
  if (contributions.back() < 0.0) {
    throw std::invalid_argument("cumulative_bound: negative contribution");
  }
  for (std::size_t k = contributions.size() - 1; k-- > 0;) {
    if (contributions[k] < 0.0) {
      throw std::invalid_argument("cumulative_bound: negative contribution");
    }
    cb[k] = cb[k + 1] + contributions[k + 1];
  }
  return cb;
}

} // namespace eapdtw
