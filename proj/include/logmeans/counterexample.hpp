#pragma once

// The sharpness construction: for each n, a scale gamma_n, a union J_n of
// short intervals in (0, pi) on which the Norlund kernel of order 4^n is
// bounded below by c/x, and the normalized indicators
//   f_n = 1_{[0, gamma_n]^b} / (2 gamma_n)^b      (constant along Riesz axes)
// whose means have L1 norm growing like n^b while ||f_n||_1 stays fixed.

#include <cstdint>
#include <vector>

#include "logmeans/orlicz.hpp"
#include "logmeans/spectral.hpp"

namespace logmeans {

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

struct DivergenceGeometry {
  int n = 0;
  /// pi / (6 (4^n + 1/2)).
  double gamma = 0.0;
  /// (alpha_mn, beta_mn) for m = 1 .. 2^{n-1}.
  std::vector<Interval> intervals;
  /// [alpha_mn + gamma, beta_mn - gamma]; their union is J_n.
  std::vector<Interval> j_set;

  /// 4^n.
  std::int64_t kernel_order() const { return std::int64_t{1} << (2 * n); }
  /// Sum of the J_n component lengths.
  double j_measure() const;
};

DivergenceGeometry build_geometry(int n);

/// Exact Fourier coefficient of 1_{[0, gamma]}:
/// (1 - e^{-i j gamma}) / (2 pi i j), and gamma / (2 pi) at j = 0.
Complex indicator_coeff(double gamma, std::int64_t j);

/// 1D coefficients of scale * 1_{[0, gamma]} for |j| <= degree (real grid).
CoefficientGrid indicator_grid(double gamma, std::int64_t degree, double scale);

/// int_{J_n} dx / x in closed form.
double inverse_x_integral(const DivergenceGeometry& geom);
/// Same integral by composite Simpson with `panels` (even) panels per component.
double inverse_x_quadrature(const DivergenceGeometry& geom, int panels);

/// x sample points covering J_n: the budget is split evenly across the
/// components, each sampled uniformly with both endpoints (at least 2 each).
std::vector<double> lower_bound_x_grid(const DivergenceGeometry& geom, int x_samples);

struct KernelLowerBound {
  double min_product;  // min x F_{4^n}(x - z)
  double max_product;
  double x_at_min;
  double z_at_min;
};

/// Evaluates x F_{4^n}(x - z) on lower_bound_x_grid x [0, gamma_n] (z_samples
/// points including both ends).
KernelLowerBound kernel_lower_bound_check(int n, int x_samples, int z_samples);

/// Grid used for the one-dimensional L1 norms of the means.
inline constexpr std::int64_t kDivergenceGrid = std::int64_t{1} << 17;

struct LowerBound {
  double value;           // ||(L o R)(f_n)||_{L1(T^d)}
  double norlund_factor;  // 1D L1 norm of the Norlund means of the 1D indicator
  double riesz_factor;    // 1D L1 norm of the Riesz means of the constant 1
  double spacing_to_gamma;
};

/// Norm of the mixed means of f_n at order 4^n with b Norlund axes among d,
/// through the tensor-product factorization: the d-dimensional L1 norm is
/// norlund_factor^b * riesz_factor^(d-b).
LowerBound lower_bound_experiment(int n, int b, int d, std::int64_t grid = kDivergenceGrid);

/// ||f_n||_{L1(T^d)} = (1/2)^b (2 pi)^(d-b).
double indicator_l1_norm(int n, int b, int d);

/// ||f_n||_{L_Q(T^d)}: height (2 gamma)^-b on a set of measure gamma^b (2 pi)^(d-b).
double indicator_luxemburg_norm(int n, int b, int d, const YoungFunction& q);

/// 4^{nb} n^b / Q(4^{nb}).
double operator_bound_rhs(int n, int b, const YoungFunction& q);

struct DivergenceRow {
  int n;
  int b;
  double gamma;
  double j_measure;
  double kernel_min;  // NaN when the kernel check is skipped
  double l1_of_means;
  double luxemburg_norm;
  double ratio;  // l1_of_means / luxemburg_norm
};

struct DivergenceOptions {
  std::int64_t grid = kDivergenceGrid;
  int x_samples = 256;
  int z_samples = 64;
  bool kernel_check = true;
};

DivergenceRow divergence_row(int n, int b, int d, const YoungFunction& q,
                             const DivergenceOptions& options = {});

}  // namespace logmeans
