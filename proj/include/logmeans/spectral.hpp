#pragma once

// d-variate trigonometric polynomials on T^d: coefficient grids, sampled
// fields, rectangular partial sums and the mixed logarithmic means.
//
// Flat layouts are row-major with the last axis fastest. A coefficient grid
// with degrees N stores frequencies j_a in [-N_a, N_a]; a sampled field with
// resolution G stores the points x_a = -pi + 2 pi k_a / G_a, 0 <= k_a < G_a.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logmeans {

using Complex = std::complex<double>;
using Index = std::vector<std::int64_t>;

class CoefficientGrid {
 public:
  /// Zero grid.
  explicit CoefficientGrid(Index degrees, bool real = false);
  /// Takes ownership of `coeffs`; throws if its size does not match the
  /// degrees or if `real` is set and the data is not Hermitian.
  CoefficientGrid(Index degrees, std::vector<Complex> coeffs, bool real = false);

  std::size_t dims() const { return degrees_.size(); }
  const Index& degrees() const { return degrees_; }
  std::int64_t degree(std::size_t axis) const { return degrees_[axis]; }
  /// 2 N_a + 1.
  std::int64_t extent(std::size_t axis) const { return 2 * degrees_[axis] + 1; }
  std::size_t size() const { return coeffs_.size(); }
  bool real() const { return real_; }

  std::span<const Complex> data() const { return coeffs_; }
  std::span<Complex> data() { return coeffs_; }

  std::size_t flat_index(std::span<const std::int64_t> freq) const;
  /// Writes the frequency vector of flat position `flat` into `freq`.
  void frequency(std::size_t flat, std::span<std::int64_t> freq) const;
  Index frequency(std::size_t flat) const;

  Complex at(std::span<const std::int64_t> freq) const { return coeffs_[flat_index(freq)]; }
  Complex& at(std::span<const std::int64_t> freq) { return coeffs_[flat_index(freq)]; }
  Complex at(std::initializer_list<std::int64_t> freq) const;
  Complex& at(std::initializer_list<std::int64_t> freq);

  /// coeff(-j) == conj(coeff(j)) within `tol` (absolute).
  bool is_hermitian(double tol) const;
  /// Marks the grid real after checking Hermitian symmetry to 1e-12 relative.
  void set_real(bool real);

 private:
  Index degrees_;
  std::vector<Complex> coeffs_;
  bool real_ = false;
};

enum class AxisMean { kNorlund, kRiesz };

/// Which logarithmic mean acts on each axis, and at which order. The Norlund
/// axes form the set B, the Riesz axes its complement.
class AxisPlan {
 public:
  AxisPlan(std::vector<AxisMean> tags, Index orders);
  /// Same order n on every axis.
  static AxisPlan uniform(std::vector<AxisMean> tags, std::int64_t n);
  /// `tags` is a string over {L, R}: L marks a Norlund axis, R a Riesz one.
  static std::vector<AxisMean> parse_tags(std::string_view tags);

  std::size_t dims() const { return tags_.size(); }
  AxisMean tag(std::size_t axis) const { return tags_[axis]; }
  std::int64_t order(std::size_t axis) const { return orders_[axis]; }
  const std::vector<AxisMean>& tags() const { return tags_; }
  const Index& orders() const { return orders_; }
  /// |B|.
  std::size_t norlund_count() const;
  std::string tag_string() const;

 private:
  std::vector<AxisMean> tags_;
  Index orders_;
};

class SampledField {
 public:
  /// Zero field.
  explicit SampledField(Index resolution, bool real = true);
  SampledField(Index resolution, std::vector<Complex> samples, bool real);

  /// Samples fn at every grid point; fn receives the point coordinates.
  static SampledField tabulate(Index resolution,
                               const std::function<Complex(std::span<const double>)>& fn,
                               bool real = true);

  std::size_t dims() const { return resolution_.size(); }
  const Index& resolution() const { return resolution_; }
  std::size_t size() const { return samples_.size(); }
  bool real() const { return real_; }

  std::span<const Complex> samples() const { return samples_; }
  std::span<Complex> samples() { return samples_; }

  /// 2 pi / G_a.
  double spacing(std::size_t axis) const;
  /// x = -pi + 2 pi k / G_a.
  double point(std::size_t axis, std::int64_t k) const;
  /// prod_a 2 pi / G_a.
  double cell_volume() const;
  /// Writes the grid indices of flat position `flat` into `k`.
  void grid_index(std::size_t flat, std::span<std::int64_t> k) const;

 private:
  Index resolution_;
  std::vector<Complex> samples_;
  bool real_ = true;
};

/// lambda_n(j) = l_{n-j} / l_n for j = 0..n.
std::vector<double> norlund_multiplier(std::int64_t n);
/// r_n(j) = 1 - l_{j-1} / l_n for j = 0..n, with l_{-1} = 0.
std::vector<double> riesz_multiplier(std::int64_t n);
std::vector<double> axis_multiplier(AxisMean tag, std::int64_t n);

/// Zeroes every coefficient with |j_a| > cutoff_a on some axis.
CoefficientGrid partial_sum(const CoefficientGrid& coeffs, std::span<const std::int64_t> cutoff);

/// Mixed means as a coefficient multiplier: the coefficient at j is scaled
/// by prod_{a in B} lambda_{n_a}(|j_a|) * prod_{a not in B} r_{n_a}(|j_a|),
/// and by 0 when |j_a| > n_a. The per-coefficient weight product is always
/// formed in axis order, so the output does not depend on the OpenMP schedule.
CoefficientGrid apply_mixed_means(const CoefficientGrid& coeffs, const AxisPlan& plan);

/// Scales every coefficient by weights[|j_axis|] (0 beyond the end of weights).
CoefficientGrid apply_axis_multiplier(const CoefficientGrid& coeffs, std::size_t axis,
                                      std::span<const double> weights);

/// The defining weighted average of rectangular partial sums, summed
/// literally. Cost O(prod (n_a+1) * size); meant for small orders.
CoefficientGrid brute_force_means(const CoefficientGrid& coeffs, const AxisPlan& plan);

/// Default resolution along an axis: next power of two >= 4 (N + 1).
std::int64_t default_resolution(std::int64_t degree);
Index default_resolution(const Index& degrees);

/// Evaluates the trigonometric polynomial on the grid with a zero-padded FFT.
/// Requires G_a >= 2 N_a + 1. A real grid gives a real field.
SampledField synthesize(const CoefficientGrid& coeffs, const Index& resolution);

/// Rectangle-rule Fourier coefficients for |j_a| <= N_a. Requires
/// G_a >= 2 N_a + 1. A real field gives an exactly Hermitian grid.
CoefficientGrid analyze(const SampledField& field, const Index& degrees);

/// Rectangle-rule approximation of int_{T^d} |f|.
double l1_norm(const SampledField& field);

/// Pointwise a*f + b*g on identical grids.
SampledField combine(double a, const SampledField& f, double b, const SampledField& g);

}  // namespace logmeans
