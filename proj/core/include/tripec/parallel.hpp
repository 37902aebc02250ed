#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace tripec {

// 0 means one worker per hardware thread.
unsigned resolve_threads(unsigned requested);

// Splits [0, count) into contiguous ranges, one per worker, and calls
// fn(worker, begin, end) on each. Worker w always receives the same range for
// a given (count, workers), so per-worker results merged in worker order are
// deterministic. Exceptions from workers are rethrown on the caller's thread.
template <class Fn>
void parallel_ranges(std::uint64_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = 1;
  if (count < workers) workers = static_cast<unsigned>(count == 0 ? 1 : count);
  auto bounds = [&](unsigned w) { return count * w / workers; };
  if (workers == 1) {
    fn(0u, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          fn(w, bounds(w), bounds(w + 1));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Called with (units done, units total); may be invoked from any worker.
using ProgressFn = std::function<void(std::uint64_t, std::uint64_t)>;

}  // namespace tripec
