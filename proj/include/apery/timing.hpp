#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

namespace apery {

inline std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Median wall time of `reps` runs of fn (monotonic clock).
template <typename Fn>
std::int64_t median_time_ns(int reps, Fn&& fn) {
  std::vector<std::int64_t> times;
  times.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    auto start = now_ns();
    fn();
    times.push_back(now_ns() - start);
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace apery
