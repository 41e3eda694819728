#pragma once

// OpenMP helpers whose results do not depend on the thread count or the
// schedule.

#include <cstdint>
#include <vector>

namespace logmeans::parallel {

/// Fixed reduction block length. Partial sums are formed per block in index
/// order and then combined serially in block order, so a reduction gives
/// the same bits with 1 thread or 64.
inline constexpr std::int64_t kReductionBlock = 4096;

/// Sum of term(i) for 0 <= i < count, evaluated in parallel with a
/// schedule-independent summation order.
template <class Term>
double deterministic_sum(std::int64_t count, Term term) {
  if (count <= 0) return 0.0;
  const std::int64_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::int64_t begin = b * kReductionBlock;
    const std::int64_t end = begin + kReductionBlock < count ? begin + kReductionBlock : count;
    double acc = 0.0;
    for (std::int64_t i = begin; i < end; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

/// Number of OpenMP threads a parallel region would use (1 without OpenMP).
int max_threads();

/// Sets the OpenMP thread count for subsequent regions; no-op without OpenMP.
void set_threads(int threads);

}  // namespace logmeans::parallel
