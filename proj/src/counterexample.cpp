#include "logmeans/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "logmeans/log_kernels.hpp"

namespace logmeans {

namespace {

constexpr double kPi = std::numbers::pi;

void require_stage(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("construction stage n must be in [1, 30], got " + std::to_string(n));
}

void require_axes(int b, int d) {
  if (b < 1 || d < b) throw std::invalid_argument("need 1 <= b <= d");
}

}  // namespace

double DivergenceGeometry::j_measure() const {
  double total = 0.0;
  for (const auto& c : j_set) total += c.length();
  return total;
}

DivergenceGeometry build_geometry(int n) {
  require_stage(n);
  DivergenceGeometry g;
  g.n = n;
  const double denom = 6.0 * (std::ldexp(1.0, 2 * n) + 0.5);
  g.gamma = kPi / denom;
  const std::int64_t components = std::int64_t{1} << (n - 1);
  g.intervals.reserve(static_cast<std::size_t>(components));
  g.j_set.reserve(static_cast<std::size_t>(components));
  for (std::int64_t m = 1; m <= components; ++m) {
    const double alpha = kPi * static_cast<double>(12 * m + 1) / denom;
    const double beta = kPi * static_cast<double>(12 * m + 5) / denom;
    g.intervals.push_back({alpha, beta});
    g.j_set.push_back({alpha + g.gamma, beta - g.gamma});
  }
  return g;
}

Complex indicator_coeff(double gamma, std::int64_t j) {
  if (!(gamma > 0.0) || !(gamma < 2.0 * kPi)) {
    throw std::invalid_argument("indicator_coeff: gamma must lie in (0, 2 pi)");
  }
  if (j == 0) return {gamma / (2.0 * kPi), 0.0};
  // 1 - e^{-i t} = 2 sin^2(t/2) + i sin t, free of cancellation for small t.
  const double t = static_cast<double>(j) * gamma;
  const double s = std::sin(0.5 * t);
  const Complex numer(2.0 * s * s, std::sin(t));
  return numer / Complex(0.0, 2.0 * kPi * static_cast<double>(j));
}

CoefficientGrid indicator_grid(double gamma, std::int64_t degree, double scale) {
  CoefficientGrid grid(Index{degree});
  auto data = grid.data();
  for (std::int64_t j = -degree; j <= degree; ++j) {
    data[static_cast<std::size_t>(j + degree)] = scale * indicator_coeff(gamma, j);
  }
  grid.set_real(true);
  return grid;
}

double inverse_x_integral(const DivergenceGeometry& geom) {
  double total = 0.0;
  for (const auto& c : geom.j_set) total += std::log(c.hi / c.lo);
  return total;
}

double inverse_x_quadrature(const DivergenceGeometry& geom, int panels) {
  if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("Simpson needs an even panel count");
  double total = 0.0;
  for (const auto& c : geom.j_set) {
    const double h = c.length() / panels;
    double acc = 1.0 / c.lo + 1.0 / c.hi;
    for (int i = 1; i < panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) / (c.lo + i * h);
    total += acc * h / 3.0;
  }
  return total;
}

std::vector<double> lower_bound_x_grid(const DivergenceGeometry& geom, int x_samples) {
  const auto components = static_cast<int>(geom.j_set.size());
  const int per = std::max(2, x_samples / components);
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(per * components));
  for (const auto& c : geom.j_set) {
    for (int i = 0; i < per; ++i) xs.push_back(c.lo + c.length() * i / (per - 1));
  }
  return xs;
}

KernelLowerBound kernel_lower_bound_check(int n, int x_samples, int z_samples) {
  if (x_samples < 2 || z_samples < 2) throw std::invalid_argument("kernel_lower_bound_check: need >= 2 samples per axis");
  const auto geom = build_geometry(n);
  const auto xs = lower_bound_x_grid(geom, x_samples);
  const std::int64_t order = geom.kernel_order();
  log_weight(order);
  const auto nx = static_cast<std::int64_t>(xs.size());
  std::vector<KernelLowerBound> per_x(xs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < nx; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    KernelLowerBound local{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), x, 0.0};
    for (int k = 0; k < z_samples; ++k) {
      const double z = geom.gamma * k / (z_samples - 1);
      const double v = x * norlund_kernel(order, x - z);
      if (v < local.min_product) {
        local.min_product = v;
        local.z_at_min = z;
      }
      local.max_product = std::max(local.max_product, v);
    }
    per_x[static_cast<std::size_t>(i)] = local;
  }
  KernelLowerBound out = per_x.front();
  for (const auto& r : per_x) {
    if (r.min_product < out.min_product) {
      out.min_product = r.min_product;
      out.x_at_min = r.x_at_min;
      out.z_at_min = r.z_at_min;
    }
    out.max_product = std::max(out.max_product, r.max_product);
  }
  return out;
}

LowerBound lower_bound_experiment(int n, int b, int d, std::int64_t grid) {
  require_axes(b, d);
  const auto geom = build_geometry(n);
  const std::int64_t order = geom.kernel_order();
  if (grid < 2 * order + 1) throw std::invalid_argument("lower_bound_experiment: grid too coarse for order 4^n");

  // Norlund factor: 1D means of 1_{[0, gamma]} / (2 gamma).
  const auto f1 = indicator_grid(geom.gamma, order, 1.0 / (2.0 * geom.gamma));
  const auto m1 = apply_mixed_means(f1, AxisPlan({AxisMean::kNorlund}, {order}));
  const double norlund_factor = l1_norm(synthesize(m1, Index{grid}));

  // Riesz factor: 1D means of the constant 1.
  CoefficientGrid one(Index{0});
  one.data()[0] = 1.0;
  one.set_real(true);
  const auto r1 = apply_mixed_means(one, AxisPlan({AxisMean::kRiesz}, {order}));
  const double riesz_factor = l1_norm(synthesize(r1, Index{default_resolution(0)}));

  const double value = std::pow(norlund_factor, b) * std::pow(riesz_factor, d - b);
  return {value, norlund_factor, riesz_factor, (2.0 * kPi / static_cast<double>(grid)) / geom.gamma};
}

double indicator_l1_norm(int n, int b, int d) {
  require_stage(n);
  require_axes(b, d);
  return std::pow(0.5, b) * std::pow(2.0 * kPi, d - b);
}

double indicator_luxemburg_norm(int n, int b, int d, const YoungFunction& q) {
  require_axes(b, d);
  const double gamma = build_geometry(n).gamma;
  const double height = std::pow(2.0 * gamma, -b);
  const double measure = std::pow(gamma, b) * std::pow(2.0 * kPi, d - b);
  return luxemburg_norm_of_indicator(height, measure, q);
}

double operator_bound_rhs(int n, int b, const YoungFunction& q) {
  require_stage(n);
  if (b < 1) throw std::invalid_argument("operator_bound_rhs: b must be >= 1");
  const double u = std::ldexp(1.0, 2 * n * b);
  return u * std::pow(static_cast<double>(n), b) / q(u);
}

DivergenceRow divergence_row(int n, int b, int d, const YoungFunction& q,
                             const DivergenceOptions& options) {
  const auto geom = build_geometry(n);
  DivergenceRow row{};
  row.n = n;
  row.b = b;
  row.gamma = geom.gamma;
  row.j_measure = geom.j_measure();
  row.kernel_min = options.kernel_check ? kernel_lower_bound_check(n, options.x_samples, options.z_samples).min_product
                                : std::numeric_limits<double>::quiet_NaN();
  row.l1_of_means = lower_bound_experiment(n, b, d, options.grid).value;
  row.luxemburg_norm = indicator_luxemburg_norm(n, b, d, q);
  row.ratio = row.l1_of_means / row.luxemburg_norm;
  return row;
}

}  // namespace logmeans
