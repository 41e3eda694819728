#pragma once

// One-dimensional logarithmic kernels on the circle T = [-pi, pi).
//
// Conventions:
//   l_n      = sum_{k=0}^{n} 1/(k+1)                 (harmonic weight)
//   D_n(u)   = 1/2 + sum_{k=1}^{n} cos(k u)            (Dirichlet kernel)
//            = sin((n+1/2)u) / (2 sin(u/2))
//   F_n(u)   = (1/l_n) sum_{i=0}^{n} D_{n-i}(u) / (i+1)  (Norlund logarithmic)
//   G_n(u)   = (1/l_n) sum_{i=0}^{n} D_i(u) / (i+1)      (Riesz logarithmic)
//
// With these conventions the partial sums and means are convolutions with
// normalization 1/pi:  S_n f(x) = (1/pi) int_T f(t) D_n(x - t) dt.

#include <cstdint>
#include <shared_mutex>
#include <span>
#include <vector>

namespace logmeans {

/// Kernel index n >= 0.
class KernelOrder {
 public:
  explicit KernelOrder(std::int64_t n);
  std::int64_t value() const { return n_; }

 private:
  std::int64_t n_;
};

/// Table of harmonic weights values[n] = l_n for 0 <= n <= max_order.
///
/// Built with compensated (Neumaier) summation, so each entry is within a
/// couple of ulps of the exact partial harmonic sum.
class LogWeightTable {
 public:
  explicit LogWeightTable(std::int64_t max_order);

  std::int64_t max_order() const {
    return static_cast<std::int64_t>(values_.size()) - 1;
  }
  double operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n)]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// l_n, served from a process-wide table that is extended on demand.
/// Safe to call concurrently.
double log_weight(std::int64_t n);

/// A snapshot of l_0..l_n (extends the shared table if needed).
std::vector<double> log_weights_upto(std::int64_t n);

/// Below this value of |sin(u/2)| the Dirichlet kernel is evaluated as an
/// explicit cosine sum instead of the sine ratio.
inline constexpr double kDirichletSwitchover = 1e-6;

double dirichlet(std::int64_t n, double u);

/// D_n(u) by the explicit cosine sum, regardless of u. O(n).
double dirichlet_cosine_sum(std::int64_t n, double u);

/// F_n(u) via the defining sum. O(n).
double norlund_kernel(std::int64_t n, double u);

/// G_n(u) via the defining sum. O(n).
double riesz_kernel(std::int64_t n, double u);

// OpenMP-parallel tabulation over a set of angles. out.size() == u.size().
void tabulate_norlund(std::int64_t n, std::span<const double> u, std::span<double> out);
void tabulate_riesz(std::int64_t n, std::span<const double> u, std::span<double> out);

}  // namespace logmeans
