#include "logmeans/log_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace logmeans {

namespace {

// Running Neumaier sum of 1/(k+1); appends l_k to `values` for each new k.
struct HarmonicAccumulator {
  std::vector<double> values;
  double sum = 0.0;
  double comp = 0.0;

  void extend_to(std::int64_t n) {
    values.reserve(static_cast<std::size_t>(n + 1));
    for (auto k = static_cast<std::int64_t>(values.size()); k <= n; ++k) {
      const double term = 1.0 / static_cast<double>(k + 1);
      const double t = sum + term;
      if (std::abs(sum) >= std::abs(term)) {
        comp += (sum - t) + term;
      } else {
        comp += (term - t) + sum;
      }
      sum = t;
      values.push_back(sum + comp);
    }
  }
};

struct SharedTable {
  std::shared_mutex mutex;
  HarmonicAccumulator acc;
};

SharedTable& shared_table() {
  static SharedTable table;
  return table;
}

void require_order(std::int64_t n) {
  if (n < 0) {
    throw std::invalid_argument("kernel order must be >= 0, got " + std::to_string(n));
  }
}

// Shared core of F_n and G_n. `reversed` selects the Norlund weighting
// 1/(n-k+1) on D_k; otherwise the Riesz weighting 1/(k+1).
double log_kernel(std::int64_t n, double u, bool reversed) {
  require_order(n);
  const double ln = log_weight(n);
  const double s = std::sin(0.5 * u);
  double acc = 0.0;
  if (std::abs(s) < kDirichletSwitchover) {
    double dk = 0.5;
    for (std::int64_t k = 0; k <= n; ++k) {
      if (k > 0) dk += std::cos(static_cast<double>(k) * u);
      const double w = reversed ? 1.0 / static_cast<double>(n - k + 1)
                                : 1.0 / static_cast<double>(k + 1);
      acc += w * dk;
    }
    return acc / ln;
  }
  for (std::int64_t k = 0; k <= n; ++k) {
    const double w = reversed ? 1.0 / static_cast<double>(n - k + 1)
                              : 1.0 / static_cast<double>(k + 1);
    acc += w * std::sin((static_cast<double>(k) + 0.5) * u);
  }
  return acc / (2.0 * s * ln);
}

}  // namespace

KernelOrder::KernelOrder(std::int64_t n) : n_(n) { require_order(n); }

LogWeightTable::LogWeightTable(std::int64_t max_order) {
  require_order(max_order);
  HarmonicAccumulator acc;
  acc.extend_to(max_order);
  values_ = std::move(acc.values);
}

double log_weight(std::int64_t n) {
  require_order(n);
  auto& table = shared_table();
  {
    std::shared_lock lock(table.mutex);
    if (n < static_cast<std::int64_t>(table.acc.values.size())) {
      return table.acc.values[static_cast<std::size_t>(n)];
    }
  }
  std::unique_lock lock(table.mutex);
  const auto current = static_cast<std::int64_t>(table.acc.values.size());
  table.acc.extend_to(std::max(n, 2 * current));
  return table.acc.values[static_cast<std::size_t>(n)];
}

std::vector<double> log_weights_upto(std::int64_t n) {
  log_weight(n);
  auto& table = shared_table();
  std::shared_lock lock(table.mutex);
  return {table.acc.values.begin(), table.acc.values.begin() + n + 1};
}

double dirichlet_cosine_sum(std::int64_t n, double u) {
  require_order(n);
  double acc = 0.5;
  for (std::int64_t k = 1; k <= n; ++k) acc += std::cos(static_cast<double>(k) * u);
  return acc;
}

double dirichlet(std::int64_t n, double u) {
  require_order(n);
  const double s = std::sin(0.5 * u);
  if (std::abs(s) < kDirichletSwitchover) return dirichlet_cosine_sum(n, u);
  return std::sin((static_cast<double>(n) + 0.5) * u) / (2.0 * s);
}

double norlund_kernel(std::int64_t n, double u) { return log_kernel(n, u, true); }

double riesz_kernel(std::int64_t n, double u) { return log_kernel(n, u, false); }

namespace {

template <class Kernel>
void tabulate(std::int64_t n, std::span<const double> u, std::span<double> out, Kernel kernel) {
  if (u.size() != out.size()) throw std::invalid_argument("tabulate: size mismatch");
  require_order(n);
  log_weight(n);  // populate the shared table before fanning out
  const auto count = static_cast<std::int64_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = kernel(n, u[static_cast<std::size_t>(i)]);
  }
}

}  // namespace

void tabulate_norlund(std::int64_t n, std::span<const double> u, std::span<double> out) {
  tabulate(n, u, out, norlund_kernel);
}

void tabulate_riesz(std::int64_t n, std::span<const double> u, std::span<double> out) {
  tabulate(n, u, out, riesz_kernel);
}

}  // namespace logmeans
