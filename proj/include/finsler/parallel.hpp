#pragma once

// Index-parallel map over sample indices. Results land in index order, so
// reductions over them are identical for every thread count. The serial
// path is the reference the OpenMP path is tested against.

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <vector>

namespace finsler {

enum class ExecMode { serial, openmp };

/// Thread cap: FINSLER_LAB_THREADS if set to a positive integer, else the
/// OpenMP default.
int thread_limit();

/// The mode used by library sweeps: openmp unless FINSLER_LAB_THREADS=1.
ExecMode default_exec_mode();

namespace detail {
void run_indexed(std::size_t count, const std::function<void(std::size_t)>& body, ExecMode mode);
}

/// out[i] = fn(i). An exception thrown for any index is rethrown after the
/// loop; when several indices throw, the one with the smallest index wins.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn, ExecMode mode = default_exec_mode()) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  detail::run_indexed(
      count,
      [&](std::size_t i) {
        try {
          slots[i].emplace(fn(i));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      },
      mode);
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace finsler
