#include "logmeans/serial_reference.hpp"

#include <cmath>
#include <stdexcept>

#include "logmeans/log_kernels.hpp"

namespace logmeans::serial {

void tabulate_norlund(std::int64_t n, std::span<const double> u, std::span<double> out) {
  if (u.size() != out.size()) throw std::invalid_argument("tabulate: size mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = norlund_kernel(n, u[i]);
}

void tabulate_riesz(std::int64_t n, std::span<const double> u, std::span<double> out) {
  if (u.size() != out.size()) throw std::invalid_argument("tabulate: size mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = riesz_kernel(n, u[i]);
}

SampledField synthesize_direct(const CoefficientGrid& coeffs, const Index& resolution) {
  if (resolution.size() != coeffs.dims()) throw std::invalid_argument("synthesize_direct: dims");
  for (std::size_t a = 0; a < coeffs.dims(); ++a) {
    if (resolution[a] < 2 * coeffs.degree(a) + 1) {
      throw std::invalid_argument("synthesize_direct: grid under-resolved");
    }
  }
  SampledField field(resolution, coeffs.real());
  const std::size_t d = coeffs.dims();
  Index k(d);
  Index j(d);
  auto src = coeffs.data();
  auto dst = field.samples();
  for (std::size_t p = 0; p < field.size(); ++p) {
    field.grid_index(p, k);
    Complex acc{};
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      coeffs.frequency(c, j);
      double phase = 0.0;
      for (std::size_t a = 0; a < d; ++a) phase += static_cast<double>(j[a]) * field.point(a, k[a]);
      acc += src[c] * std::polar(1.0, phase);
    }
    dst[p] = coeffs.real() ? Complex(acc.real(), 0.0) : acc;
  }
  return field;
}

CoefficientGrid analyze_direct(const SampledField& field, const Index& degrees) {
  CoefficientGrid out(degrees);
  const std::size_t d = field.dims();
  if (degrees.size() != d) throw std::invalid_argument("analyze_direct: dims");
  Index k(d);
  Index j(d);
  auto src = field.samples();
  auto dst = out.data();
  const double scale = 1.0 / static_cast<double>(field.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out.frequency(c, j);
    Complex acc{};
    for (std::size_t p = 0; p < field.size(); ++p) {
      field.grid_index(p, k);
      double phase = 0.0;
      for (std::size_t a = 0; a < d; ++a) phase += static_cast<double>(j[a]) * field.point(a, k[a]);
      acc += src[p] * std::polar(1.0, -phase);
    }
    dst[c] = acc * scale;
  }
  return out;
}

CoefficientGrid apply_mixed_means(const CoefficientGrid& coeffs, const AxisPlan& plan,
                                  std::span<const std::size_t> axis_order) {
  if (plan.dims() != coeffs.dims() || axis_order.size() != coeffs.dims()) {
    throw std::invalid_argument("serial::apply_mixed_means: dimension mismatch");
  }
  std::vector<bool> seen(coeffs.dims(), false);
  for (std::size_t a : axis_order) {
    if (a >= seen.size() || seen[a]) throw std::invalid_argument("serial::apply_mixed_means: axis order is not a permutation");
    seen[a] = true;
  }
  CoefficientGrid out = coeffs;
  Index j(coeffs.dims());
  for (std::size_t a : axis_order) {
    const auto w = axis_multiplier(plan.tag(a), plan.order(a));
    auto data = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.frequency(i, j);
      const auto aj = static_cast<std::size_t>(std::abs(j[a]));
      data[i] = aj < w.size() ? data[i] * w[aj] : Complex{};
    }
  }
  return out;
}

double l1_norm(const SampledField& field) {
  double acc = 0.0;
  for (const auto& s : field.samples()) acc += field.real() ? std::abs(s.real()) : std::abs(s);
  return acc * field.cell_volume();
}

}  // namespace logmeans::serial
