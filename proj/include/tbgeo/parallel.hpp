// parallel.hpp - deterministic fork-join loop over an index range.
//
// Work item i writes only to slot i of preallocated output, and every input
// derives from (seed, i), so the schedule cannot influence results: serial and
// parallel runs are bitwise identical.  Threads take indices by a fixed stride
// rather than a shared counter to keep even the execution order deterministic
// per thread count.
#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tbgeo {

template <class F>
void parallel_for(int count, int jobs, F&& fn) {
  jobs = std::clamp(jobs, 1, std::max(1, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += jobs) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tbgeo
