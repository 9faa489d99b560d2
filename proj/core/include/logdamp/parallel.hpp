#pragma once

// Deterministic parallel map: item i always lands in slot i, so sweeps give
// identical output whatever the thread count.

#include <cstddef>
#include <exception>
#include <functional>
#include <type_traits>
#include <vector>

namespace logdamp {

/// Worker count: LOGDAMP_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. The first
/// exception thrown (by lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  std::vector<std::invoke_result_t<Fn&, std::size_t>> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace logdamp
