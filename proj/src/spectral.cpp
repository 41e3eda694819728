#include "logmeans/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "logmeans/log_kernels.hpp"
#include "logmeans/parallel.hpp"

namespace logmeans {

namespace {

std::size_t product(const Index& extents) {
  std::size_t total = 1;
  for (auto e : extents) total *= static_cast<std::size_t>(e);
  return total;
}

Index grid_extents(const Index& degrees) {
  Index ext(degrees.size());
  for (std::size_t a = 0; a < degrees.size(); ++a) ext[a] = 2 * degrees[a] + 1;
  return ext;
}

void require_same_dims(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(expected) + " vs " + std::to_string(got) + ")");
  }
}

// Row-major decomposition of `flat` into per-axis positions, last axis fastest.
void unravel(std::size_t flat, const Index& extents, std::span<std::int64_t> out) {
  for (std::size_t a = extents.size(); a-- > 0;) {
    const auto e = static_cast<std::size_t>(extents[a]);
    out[a] = static_cast<std::int64_t>(flat % e);
    flat /= e;
  }
}

void require_resolved(const Index& degrees, const Index& resolution, const char* what) {
  require_same_dims(degrees.size(), resolution.size(), what);
  for (std::size_t a = 0; a < degrees.size(); ++a) {
    if (resolution[a] < 2 * degrees[a] + 1) {
      throw std::invalid_argument(std::string(what) + ": grid under-resolved on axis " +
                                  std::to_string(a) + " (G=" + std::to_string(resolution[a]) +
                                  " < 2N+1=" + std::to_string(2 * degrees[a] + 1) + ")");
    }
  }
}

// -- FFT plumbing -----------------------------------------------------------

// One-dimensional out-of-place complex plans, cached per (size, sign). FFTW's
// planner is not thread safe, so creation is serialized; execution through
// fftw_execute_dft on other fftw_malloc'd buffers is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : ptr(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* ptr;
};

// Unnormalized in-place DFT along every axis of a row-major array.
void transform_all_axes(std::vector<Complex>& data, const Index& extents, int sign) {
  const std::size_t total = data.size();
  std::size_t stride = total;
  for (std::size_t a = 0; a < extents.size(); ++a) {
    const auto len = static_cast<std::size_t>(extents[a]);
    stride /= len;
    if (len == 1) continue;
    const std::size_t outer = total / (len * stride);
    const auto pencils = static_cast<std::int64_t>(outer * stride);
    fftw_plan plan = plan_cache().get(static_cast<int>(len), sign);
#pragma omp parallel
    {
      FftwBuffer in(len);
      FftwBuffer out(len);
#pragma omp for schedule(static)
      for (std::int64_t p = 0; p < pencils; ++p) {
        const auto up = static_cast<std::size_t>(p);
        const std::size_t base = (up / stride) * len * stride + up % stride;
        for (std::size_t k = 0; k < len; ++k) {
          const Complex v = data[base + k * stride];
          in.ptr[k][0] = v.real();
          in.ptr[k][1] = v.imag();
        }
        fftw_execute_dft(plan, in.ptr, out.ptr);
        for (std::size_t k = 0; k < len; ++k) {
          data[base + k * stride] = Complex(out.ptr[k][0], out.ptr[k][1]);
        }
      }
    }
  }
}

constexpr std::size_t kMaxDims = 16;

std::int64_t positive_mod(std::int64_t j, std::int64_t g) {
  const std::int64_t r = j % g;
  return r < 0 ? r + g : r;
}

}  // namespace

// -- CoefficientGrid ----------------------------------------------------------

CoefficientGrid::CoefficientGrid(Index degrees, bool real)
    : degrees_(std::move(degrees)), real_(real) {
  if (degrees_.empty()) throw std::invalid_argument("CoefficientGrid: need at least one axis");
  for (auto n : degrees_) {
    if (n < 0) throw std::invalid_argument("CoefficientGrid: negative degree");
  }
  coeffs_.assign(product(grid_extents(degrees_)), Complex{});
}

CoefficientGrid::CoefficientGrid(Index degrees, std::vector<Complex> coeffs, bool real)
    : CoefficientGrid(std::move(degrees), false) {
  if (coeffs.size() != coeffs_.size()) {
    throw std::invalid_argument("CoefficientGrid: expected " + std::to_string(coeffs_.size()) +
                                " coefficients, got " + std::to_string(coeffs.size()));
  }
  coeffs_ = std::move(coeffs);
  set_real(real);
}

std::size_t CoefficientGrid::flat_index(std::span<const std::int64_t> freq) const {
  require_same_dims(dims(), freq.size(), "CoefficientGrid::flat_index");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < dims(); ++a) {
    if (freq[a] < -degrees_[a] || freq[a] > degrees_[a]) {
      throw std::out_of_range("frequency outside the stored box on axis " + std::to_string(a));
    }
    flat = flat * static_cast<std::size_t>(extent(a)) +
           static_cast<std::size_t>(freq[a] + degrees_[a]);
  }
  return flat;
}

void CoefficientGrid::frequency(std::size_t flat, std::span<std::int64_t> freq) const {
  unravel(flat, grid_extents(degrees_), freq);
  for (std::size_t a = 0; a < dims(); ++a) freq[a] -= degrees_[a];
}

Index CoefficientGrid::frequency(std::size_t flat) const {
  Index freq(dims());
  frequency(flat, freq);
  return freq;
}

Complex CoefficientGrid::at(std::initializer_list<std::int64_t> freq) const {
  return at(std::span<const std::int64_t>(freq.begin(), freq.size()));
}

Complex& CoefficientGrid::at(std::initializer_list<std::int64_t> freq) {
  return at(std::span<const std::int64_t>(freq.begin(), freq.size()));
}

bool CoefficientGrid::is_hermitian(double tol) const {
  // Reversing the flat index maps j to -j because every axis is symmetric.
  const std::size_t n = coeffs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(coeffs_[i] - std::conj(coeffs_[n - 1 - i])) > tol) return false;
  }
  return true;
}

void CoefficientGrid::set_real(bool real) {
  if (real) {
    double scale = 0.0;
    for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
    if (!is_hermitian(1e-12 * std::max(scale, 1.0))) {
      throw std::invalid_argument("CoefficientGrid: real flag set but coefficients are not Hermitian");
    }
  }
  real_ = real;
}

// -- AxisPlan -------------------------------------------------------------------

AxisPlan::AxisPlan(std::vector<AxisMean> tags, Index orders)
    : tags_(std::move(tags)), orders_(std::move(orders)) {
  if (tags_.empty()) throw std::invalid_argument("AxisPlan: need at least one axis");
  require_same_dims(tags_.size(), orders_.size(), "AxisPlan");
  for (auto n : orders_) {
    if (n < 0) throw std::invalid_argument("AxisPlan: negative order");
  }
}

AxisPlan AxisPlan::uniform(std::vector<AxisMean> tags, std::int64_t n) {
  Index orders(tags.size(), n);
  return AxisPlan(std::move(tags), std::move(orders));
}

std::vector<AxisMean> AxisPlan::parse_tags(std::string_view tags) {
  std::vector<AxisMean> out;
  for (char c : tags) {
    switch (c) {
      case 'L':
      case 'l':
        out.push_back(AxisMean::kNorlund);
        break;
      case 'R':
      case 'r':
        out.push_back(AxisMean::kRiesz);
        break;
      default:
        throw std::invalid_argument(std::string("axis tag must be L or R, got '") + c + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty axis tag string");
  return out;
}

std::size_t AxisPlan::norlund_count() const {
  return static_cast<std::size_t>(std::count(tags_.begin(), tags_.end(), AxisMean::kNorlund));
}

std::string AxisPlan::tag_string() const {
  std::string s;
  for (auto t : tags_) s.push_back(t == AxisMean::kNorlund ? 'L' : 'R');
  return s;
}

// -- SampledField ---------------------------------------------------------------

SampledField::SampledField(Index resolution, bool real)
    : resolution_(std::move(resolution)), real_(real) {
  if (resolution_.empty()) throw std::invalid_argument("SampledField: need at least one axis");
  for (auto g : resolution_) {
    if (g < 1) throw std::invalid_argument("SampledField: resolution must be >= 1");
  }
  samples_.assign(product(resolution_), Complex{});
}

SampledField::SampledField(Index resolution, std::vector<Complex> samples, bool real)
    : SampledField(std::move(resolution), real) {
  if (samples.size() != samples_.size()) {
    throw std::invalid_argument("SampledField: expected " + std::to_string(samples_.size()) +
                                " samples, got " + std::to_string(samples.size()));
  }
  samples_ = std::move(samples);
  if (real_) {
    for (auto& s : samples_) s = Complex(s.real(), 0.0);
  }
}

SampledField SampledField::tabulate(Index resolution,
                                    const std::function<Complex(std::span<const double>)>& fn,
                                    bool real) {
  SampledField field(std::move(resolution), real);
  const std::size_t d = field.dims();
  Index k(d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < field.size(); ++i) {
    field.grid_index(i, k);
    for (std::size_t a = 0; a < d; ++a) x[a] = field.point(a, k[a]);
    const Complex v = fn(x);
    field.samples_[i] = real ? Complex(v.real(), 0.0) : v;
  }
  return field;
}

double SampledField::spacing(std::size_t axis) const {
  return 2.0 * std::numbers::pi / static_cast<double>(resolution_[axis]);
}

double SampledField::point(std::size_t axis, std::int64_t k) const {
  return -std::numbers::pi + spacing(axis) * static_cast<double>(k);
}

double SampledField::cell_volume() const {
  double v = 1.0;
  for (std::size_t a = 0; a < dims(); ++a) v *= spacing(a);
  return v;
}

void SampledField::grid_index(std::size_t flat, std::span<std::int64_t> k) const {
  unravel(flat, resolution_, k);
}

// -- multipliers and means --------------------------------------------------------

std::vector<double> norlund_multiplier(std::int64_t n) {
  const auto l = log_weights_upto(n);
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (std::int64_t j = 0; j <= n; ++j) {
    w[static_cast<std::size_t>(j)] = l[static_cast<std::size_t>(n - j)] / l[static_cast<std::size_t>(n)];
  }
  return w;
}

std::vector<double> riesz_multiplier(std::int64_t n) {
  const auto l = log_weights_upto(n);
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  w[0] = 1.0;
  for (std::int64_t j = 1; j <= n; ++j) {
    w[static_cast<std::size_t>(j)] = 1.0 - l[static_cast<std::size_t>(j - 1)] / l[static_cast<std::size_t>(n)];
  }
  return w;
}

std::vector<double> axis_multiplier(AxisMean tag, std::int64_t n) {
  return tag == AxisMean::kNorlund ? norlund_multiplier(n) : riesz_multiplier(n);
}

CoefficientGrid partial_sum(const CoefficientGrid& coeffs, std::span<const std::int64_t> cutoff) {
  require_same_dims(coeffs.dims(), cutoff.size(), "partial_sum");
  for (std::size_t a = 0; a < coeffs.dims(); ++a) {
    if (cutoff[a] < 0 || cutoff[a] > coeffs.degree(a)) {
      throw std::invalid_argument("partial_sum: cutoff " + std::to_string(cutoff[a]) +
                                  " outside [0, " + std::to_string(coeffs.degree(a)) +
                                  "] on axis " + std::to_string(a));
    }
  }
  CoefficientGrid out(coeffs.degrees());
  auto src = coeffs.data();
  auto dst = out.data();
  Index freq(coeffs.dims());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs.frequency(i, freq);
    bool keep = true;
    for (std::size_t a = 0; a < coeffs.dims() && keep; ++a) keep = std::abs(freq[a]) <= cutoff[a];
    if (keep) dst[i] = src[i];
  }
  if (coeffs.real()) out.set_real(true);
  return out;
}

namespace {

// Per-axis weights indexed by stored position p = j + N_a.
std::vector<std::vector<double>> positional_weights(const CoefficientGrid& coeffs,
                                                    const AxisPlan& plan) {
  std::vector<std::vector<double>> table(coeffs.dims());
  for (std::size_t a = 0; a < coeffs.dims(); ++a) {
    const auto w = axis_multiplier(plan.tag(a), plan.order(a));
    const std::int64_t N = coeffs.degree(a);
    auto& t = table[a];
    t.assign(static_cast<std::size_t>(2 * N + 1), 0.0);
    for (std::int64_t j = -N; j <= N; ++j) {
      const auto aj = static_cast<std::size_t>(std::abs(j));
      if (aj < w.size()) t[static_cast<std::size_t>(j + N)] = w[aj];
    }
  }
  return table;
}

}  // namespace

CoefficientGrid apply_mixed_means(const CoefficientGrid& coeffs, const AxisPlan& plan) {
  require_same_dims(coeffs.dims(), plan.dims(), "apply_mixed_means");
  if (coeffs.dims() > kMaxDims) throw std::invalid_argument("apply_mixed_means: too many axes");
  const auto weights = positional_weights(coeffs, plan);
  const Index extents = grid_extents(coeffs.degrees());
  const std::size_t d = coeffs.dims();
  CoefficientGrid out(coeffs.degrees());
  auto src = coeffs.data();
  auto dst = out.data();
  const auto total = static_cast<std::int64_t>(coeffs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    auto flat = static_cast<std::size_t>(i);
    // Decompose once, then multiply in axis order 0..d-1.
    std::size_t pos[kMaxDims];
    std::size_t rem = flat;
    for (std::size_t a = d; a-- > 0;) {
      const auto e = static_cast<std::size_t>(extents[a]);
      pos[a] = rem % e;
      rem /= e;
    }
    double w = 1.0;
    for (std::size_t a = 0; a < d; ++a) w *= weights[a][pos[a]];
    dst[flat] = src[flat] * w;
  }
  if (coeffs.real()) out.set_real(true);
  return out;
}

CoefficientGrid apply_axis_multiplier(const CoefficientGrid& coeffs, std::size_t axis,
                                      std::span<const double> weights) {
  if (axis >= coeffs.dims()) throw std::invalid_argument("apply_axis_multiplier: axis out of range");
  const Index extents = grid_extents(coeffs.degrees());
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < coeffs.dims(); ++a) stride *= static_cast<std::size_t>(extents[a]);
  const auto len = static_cast<std::size_t>(extents[axis]);
  const std::int64_t N = coeffs.degree(axis);
  CoefficientGrid out(coeffs.degrees());
  auto src = coeffs.data();
  auto dst = out.data();
  const auto total = static_cast<std::int64_t>(coeffs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto flat = static_cast<std::size_t>(i);
    const auto j = static_cast<std::int64_t>((flat / stride) % len) - N;
    const auto aj = static_cast<std::size_t>(std::abs(j));
    dst[flat] = aj < weights.size() ? src[flat] * weights[aj] : Complex{};
  }
  if (coeffs.real()) out.set_real(true);
  return out;
}

CoefficientGrid brute_force_means(const CoefficientGrid& coeffs, const AxisPlan& plan) {
  require_same_dims(coeffs.dims(), plan.dims(), "brute_force_means");
  const std::size_t d = coeffs.dims();
  Index span_sizes(d);
  double norm = 1.0;
  for (std::size_t a = 0; a < d; ++a) {
    span_sizes[a] = plan.order(a) + 1;
    norm *= log_weight(plan.order(a));
  }
  CoefficientGrid acc(coeffs.degrees());
  auto dst = acc.data();
  Index i(d);
  Index cutoff(d);
  const std::size_t terms = product(span_sizes);
  for (std::size_t t = 0; t < terms; ++t) {
    unravel(t, span_sizes, i);
    double denom = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      const std::int64_t c = plan.tag(a) == AxisMean::kNorlund ? plan.order(a) - i[a] : i[a];
      // S_N with N beyond the stored degree leaves the stored data unchanged.
      cutoff[a] = std::min(c, coeffs.degree(a));
      denom *= static_cast<double>(i[a] + 1);
    }
    const CoefficientGrid s = partial_sum(coeffs, cutoff);
    auto src = s.data();
    for (std::size_t k = 0; k < acc.size(); ++k) dst[k] += src[k] / denom;
  }
  for (auto& c : dst) c /= norm;
  // Frequencies above the plan orders appear in no partial sum.
  if (coeffs.real()) acc.set_real(true);
  return acc;
}

// -- grids ------------------------------------------------------------------------

std::int64_t default_resolution(std::int64_t degree) {
  std::int64_t g = 1;
  while (g < 4 * (degree + 1)) g *= 2;
  return g;
}

Index default_resolution(const Index& degrees) {
  Index r(degrees.size());
  for (std::size_t a = 0; a < degrees.size(); ++a) r[a] = default_resolution(degrees[a]);
  return r;
}

SampledField synthesize(const CoefficientGrid& coeffs, const Index& resolution) {
  require_resolved(coeffs.degrees(), resolution, "synthesize");
  const std::size_t d = coeffs.dims();
  std::vector<Complex> data(product(resolution), Complex{});
  // x_k = -pi + 2 pi k / G, so e^{i j x_k} = (-1)^j e^{2 pi i j k / G}.
  Index freq(d);
  auto src = coeffs.data();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs.frequency(i, freq);
    std::size_t flat = 0;
    std::int64_t parity = 0;
    for (std::size_t a = 0; a < d; ++a) {
      flat = flat * static_cast<std::size_t>(resolution[a]) +
             static_cast<std::size_t>(positive_mod(freq[a], resolution[a]));
      parity += freq[a];
    }
    data[flat] = (parity % 2 == 0) ? src[i] : -src[i];
  }
  transform_all_axes(data, resolution, FFTW_BACKWARD);
  return SampledField(resolution, std::move(data), coeffs.real());
}

CoefficientGrid analyze(const SampledField& field, const Index& degrees) {
  require_resolved(degrees, field.resolution(), "analyze");
  const Index& resolution = field.resolution();
  const std::size_t d = field.dims();
  std::vector<Complex> data(field.samples().begin(), field.samples().end());
  transform_all_axes(data, resolution, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(field.size());
  CoefficientGrid out(degrees);
  auto dst = out.data();
  Index freq(d);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.frequency(i, freq);
    std::size_t flat = 0;
    std::int64_t parity = 0;
    for (std::size_t a = 0; a < d; ++a) {
      flat = flat * static_cast<std::size_t>(resolution[a]) +
             static_cast<std::size_t>(positive_mod(freq[a], resolution[a]));
      parity += freq[a];
    }
    dst[i] = (parity % 2 == 0 ? scale : -scale) * data[flat];
  }
  if (field.real()) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i <= n / 2; ++i) {
      const Complex sym = 0.5 * (dst[i] + std::conj(dst[n - 1 - i]));
      dst[i] = sym;
      dst[n - 1 - i] = std::conj(sym);
    }
    out.set_real(true);
  }
  return out;
}

double l1_norm(const SampledField& field) {
  auto s = field.samples();
  const double sum = field.real()
      ? parallel::deterministic_sum(static_cast<std::int64_t>(s.size()),
                                    [&](std::int64_t i) { return std::abs(s[static_cast<std::size_t>(i)].real()); })
      : parallel::deterministic_sum(static_cast<std::int64_t>(s.size()),
                                    [&](std::int64_t i) { return std::abs(s[static_cast<std::size_t>(i)]); });
  return sum * field.cell_volume();
}

SampledField combine(double a, const SampledField& f, double b, const SampledField& g) {
  if (f.resolution() != g.resolution()) throw std::invalid_argument("combine: resolution mismatch");
  std::vector<Complex> out(f.size());
  auto fs = f.samples();
  auto gs = g.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * fs[i] + b * gs[i];
  return SampledField(f.resolution(), std::move(out), f.real() && g.real());
}

}  // namespace logmeans
