#pragma once

// Deterministic search kernels over index grids.
//
// Checkers sweep (model x formula) grids looking for the first
// counterexample in canonical order. The OpenMP path races candidates
// through an atomic minimum, so the returned index is the smallest
// satisfying one for every schedule and thread count; the serial path is
// the reference implementation and is kept for tests and benchmarks.

#include <atomic>
#include <cstddef>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace trex {

enum class ExecMode { Serial, Parallel };

template <class Pred>
std::optional<std::size_t> first_index_serial(std::size_t n, Pred&& pred) {
  for (std::size_t i = 0; i < n; ++i)
    if (pred(i)) return i;
  return std::nullopt;
}

// Smallest index in [0, n) satisfying pred, or nullopt. pred must be pure.
template <class Pred>
std::optional<std::size_t> first_index(std::size_t n, Pred&& pred,
                                       ExecMode mode = ExecMode::Parallel) {
  constexpr std::size_t kSerialCutoff = 4096;
  if (mode == ExecMode::Serial || n <= kSerialCutoff) return first_index_serial(n, pred);

  std::atomic<std::size_t> best{n};
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 512)
  for (std::ptrdiff_t si = 0; si < count; ++si) {
    const auto i = static_cast<std::size_t>(si);
    if (i >= best.load(std::memory_order_relaxed)) continue;
    if (!pred(i)) continue;
    std::size_t cur = best.load(std::memory_order_relaxed);
    while (i < cur && !best.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
    }
  }
  std::size_t found = best.load();
  if (found == n) return std::nullopt;
  return found;
}

// Number of indices satisfying pred.
template <class Pred>
std::size_t count_indices(std::size_t n, Pred&& pred, ExecMode mode = ExecMode::Parallel) {
  if (mode == ExecMode::Serial || n <= 4096) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (pred(i)) ++c;
    return c;
  }
  long long c = 0;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : c)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    if (pred(static_cast<std::size_t>(i))) ++c;
  return static_cast<std::size_t>(c);
}

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_worker_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace trex
