#include "finsler/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace finsler {

int thread_limit() {
  if (const char* env = std::getenv("FINSLER_LAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

ExecMode default_exec_mode() { return thread_limit() > 1 ? ExecMode::openmp : ExecMode::serial; }

namespace detail {

void run_indexed(std::size_t count, const std::function<void(std::size_t)>& body, ExecMode mode) {
  if (mode == ExecMode::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_limit())
  for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace detail

}  // namespace finsler
