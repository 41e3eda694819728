#include "logmeans/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "logmeans/log_kernels.hpp"
#include "logmeans/parallel.hpp"

namespace logmeans {

SampledField means_of_field(const SampledField& field, const AxisPlan& plan) {
  if (plan.dims() != field.dims()) throw std::invalid_argument("means_of_field: dimension mismatch");
  Index degrees(field.dims());
  for (std::size_t a = 0; a < field.dims(); ++a) {
    degrees[a] = std::min(plan.order(a), (field.resolution()[a] - 1) / 2);
  }
  const auto coeffs = analyze(field, degrees);
  return synthesize(apply_mixed_means(coeffs, plan), field.resolution());
}

ConvergenceReport convergence_experiment(const CoefficientGrid& f, const std::vector<AxisMean>& tags,
                                         const Index& orders, const Index& resolution) {
  if (tags.size() != f.dims()) throw std::invalid_argument("convergence_experiment: dimension mismatch");
  if (orders.empty()) throw std::invalid_argument("convergence_experiment: empty order list");
  for (auto n : orders) {
    if (n < 0) throw std::invalid_argument("convergence_experiment: negative order");
  }
  const Index grid = resolution.empty() ? default_resolution(f.degrees()) : resolution;
  if (grid.size() != f.dims()) throw std::invalid_argument("convergence_experiment: resolution dims");
  for (std::size_t a = 0; a < f.dims(); ++a) {
    if (grid[a] < 2 * f.degree(a) + 1) throw std::invalid_argument("convergence_experiment: grid under-resolved");
  }
  std::int64_t max_order = 0;
  for (auto n : orders) max_order = std::max(max_order, n);
  log_weight(max_order);

  ConvergenceReport report;
  report.plan = AxisPlan::uniform(tags, 0).tag_string();
  report.orders = orders;
  report.errors.assign(orders.size(), 0.0);
  const auto cells = static_cast<std::int64_t>(orders.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto plan = AxisPlan::uniform(tags, orders[static_cast<std::size_t>(c)]);
    const auto means = apply_mixed_means(f, plan);
    // Error coefficients (1 - w(j)) f^(j).
    CoefficientGrid diff(f.degrees());
    auto src = f.data();
    auto m = means.data();
    auto out = diff.data();
    for (std::size_t i = 0; i < diff.size(); ++i) out[i] = src[i] - m[i];
    if (f.real()) diff.set_real(true);
    report.errors[static_cast<std::size_t>(c)] = l1_norm(synthesize(diff, grid));
  }
  const std::size_t k = report.errors.size();
  const std::size_t first = k >= 3 ? k - 3 : 0;
  report.monotone_tail = true;
  for (std::size_t i = first + 1; i < k; ++i) {
    if (report.errors[i] > report.errors[i - 1]) report.monotone_tail = false;
  }
  return report;
}

NormBound norm_bound_ratio(const SampledField& field, const AxisPlan& plan) {
  const double lhs = l1_norm(means_of_field(field, plan));
  const auto b = static_cast<int>(plan.norlund_count());
  auto s = field.samples();
  const bool real = field.real();
  const double integral = parallel::deterministic_sum(
      static_cast<std::int64_t>(s.size()), [&](std::int64_t i) {
        const Complex v = s[static_cast<std::size_t>(i)];
        const double a = real ? std::abs(v.real()) : std::abs(v);
        return a * std::pow(std::log1p(a), b);
      });
  return {lhs, 1.0 + integral * field.cell_volume()};
}

WeakTypeReport weak_type_scan(const SampledField& field, std::int64_t n, std::span<const double> y_grid) {
  if (field.dims() != 1) throw std::invalid_argument("weak_type_scan: the estimate lives on T^1");
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    if (!(y_grid[i] > 0.0)) throw std::invalid_argument("weak_type_scan: levels must be positive");
    if (i > 0 && !(y_grid[i] > y_grid[i - 1])) throw std::invalid_argument("weak_type_scan: levels must increase");
  }
  const auto g = means_of_field(field, AxisPlan({AxisMean::kNorlund}, {n}));
  const double f1 = l1_norm(field);
  const double h = g.cell_volume();
  std::vector<double> magnitude(g.size());
  auto s = g.samples();
  for (std::size_t i = 0; i < s.size(); ++i) magnitude[i] = g.real() ? std::abs(s[i].real()) : std::abs(s[i]);
  std::sort(magnitude.begin(), magnitude.end());

  WeakTypeReport report;
  report.y_grid.assign(y_grid.begin(), y_grid.end());
  report.tail_measures.reserve(y_grid.size());
  for (double y : y_grid) {
    const auto above = magnitude.end() - std::upper_bound(magnitude.begin(), magnitude.end(), y);
    const double mes = static_cast<double>(above) * h;
    report.tail_measures.push_back(mes);
    if (f1 > 0.0) report.constant_estimate = std::max(report.constant_estimate, y * mes / f1);
  }
  return report;
}

std::vector<double> weak_type_levels(double top, std::size_t count) {
  if (!(top > 0.0) || count < 2) throw std::invalid_argument("weak_type_levels: need top > 0 and count >= 2");
  std::vector<double> y(count);
  for (std::size_t i = 0; i < count; ++i) {
    y[i] = top * std::pow(1e-4, 1.0 - static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return y;
}

StrongType strong_type_check(const SampledField& field, std::int64_t n) {
  if (field.dims() != 1) throw std::invalid_argument("strong_type_check: the estimate lives on T^1");
  const auto g = means_of_field(field, AxisPlan({AxisMean::kRiesz}, {n}));
  return {l1_norm(g), l1_norm(field)};
}

GrowthFit growth_fit(std::span<const double> values, std::span<const double> orders) {
  if (values.size() != orders.size()) throw std::invalid_argument("growth_fit: size mismatch");
  if (values.size() < 3) throw std::invalid_argument("growth_fit: need at least 3 points");
  const auto n = static_cast<double>(values.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !(orders[i] > 0.0)) throw std::invalid_argument("growth_fit: values and orders must be positive");
    sx += std::log(orders[i]);
    sy += std::log(values[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dx = std::log(orders[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[i]) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("growth_fit: orders must not all coincide");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

CoefficientGrid random_real_trig(const Index& degrees, std::uint64_t seed) {
  CoefficientGrid grid(degrees);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto data = grid.data();
  for (auto& c : data) c = Complex(dist(rng), dist(rng));
  const std::size_t n = data.size();
  for (std::size_t i = 0; i <= n / 2; ++i) {
    const Complex sym = 0.5 * (data[i] + std::conj(data[n - 1 - i]));
    data[i] = sym;
    data[n - 1 - i] = std::conj(sym);
  }
  grid.set_real(true);
  return grid;
}

CoefficientGrid cosine_grid(std::size_t dims) {
  Index degrees(dims, 0);
  degrees[0] = 1;
  CoefficientGrid grid(degrees);
  Index j(dims, 0);
  j[0] = 1;
  grid.at(j) = 0.5;
  j[0] = -1;
  grid.at(j) = 0.5;
  grid.set_real(true);
  return grid;
}

SampledField normalized_indicator_field(std::int64_t resolution, double height) {
  if (!(height > 0.0)) throw std::invalid_argument("indicator height must be > 0");
  SampledField field(Index{resolution});
  const double width = 1.0 / height;
  std::int64_t count = 0;
  for (std::int64_t k = 0; k < resolution; ++k) {
    const double x = field.point(0, k);
    if (x >= 0.0 && x < width) ++count;
  }
  if (count == 0) throw std::invalid_argument("indicator support falls between grid points; refine the grid");
  const double value = 1.0 / (static_cast<double>(count) * field.spacing(0));
  auto s = field.samples();
  for (std::int64_t k = 0; k < resolution; ++k) {
    const double x = field.point(0, k);
    if (x >= 0.0 && x < width) s[static_cast<std::size_t>(k)] = value;
  }
  return field;
}

SampledField spike_train_field(std::int64_t resolution, int count, int width_cells, std::uint64_t seed) {
  if (count < 1 || width_cells < 1 || width_cells > resolution) {
    throw std::invalid_argument("spike_train_field: bad count or width");
  }
  SampledField field(Index{resolution});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pos(0, resolution - 1);
  auto s = field.samples();
  for (int c = 0; c < count; ++c) {
    const std::int64_t start = pos(rng);
    for (int w = 0; w < width_cells; ++w) s[static_cast<std::size_t>((start + w) % resolution)] += 1.0;
  }
  const double total = l1_norm(field);
  for (auto& v : s) v /= total;
  return field;
}

std::vector<NamedField> stress_corpus(std::int64_t resolution) {
  std::vector<NamedField> corpus;
  corpus.push_back({"constant", SampledField::tabulate(Index{resolution}, [](auto) { return Complex(1.0); })});
  corpus.push_back({"trig", synthesize(random_real_trig(Index{6}, 11), Index{resolution})});
  for (int e : {4, 8, 12}) {
    corpus.push_back({"indicator_2^" + std::to_string(e), normalized_indicator_field(resolution, std::ldexp(1.0, e))});
  }
  corpus.push_back({"spikes_8", spike_train_field(resolution, 8, 4, 21)});
  corpus.push_back({"spikes_64", spike_train_field(resolution, 64, 2, 22)});
  return corpus;
}

}  // namespace logmeans
