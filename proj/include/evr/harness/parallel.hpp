#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace evr::harness {

enum class Execution { serial, parallel };

/// Calls body(i) for i in [0, n). The parallel path splits the range over
/// OpenMP threads; the serial path is the reference it is tested against.
/// Bodies must write only to slot i of their output. The first exception
/// thrown by any body is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace evr::harness
