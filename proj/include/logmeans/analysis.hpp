#pragma once

// Experiment drivers: L1 convergence of the mixed means, the norm bound in
// terms of int |f| log^b(1+|f|), and the one-dimensional weak (1,1) and
// strong (1,1) estimates for the Norlund and Riesz kernels.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "logmeans/spectral.hpp"

namespace logmeans {

/// Means of a sampled field: analyze at degree min(n_a, (G_a - 1) / 2),
/// apply the plan, and synthesize back on the same grid.
SampledField means_of_field(const SampledField& field, const AxisPlan& plan);

struct ConvergenceReport {
  std::string plan;  // axis tags, e.g. "LR"
  Index orders;
  std::vector<double> errors;  // ||means_n(f) - f||_{L1}
  bool monotone_tail = false;  // last three errors nonincreasing
};

/// For each n, applies the plan with order n on every axis and records the
/// L1 error against f on `resolution` (default: default_resolution of f).
/// Orders are independent cells and run in parallel.
ConvergenceReport convergence_experiment(const CoefficientGrid& f, const std::vector<AxisMean>& tags,
                                         const Index& orders, const Index& resolution = {});

struct NormBound {
  double lhs;  // ||means(f)||_{L1}
  double rhs;  // 1 + int |f| log^b(1 + |f|)
};

NormBound norm_bound_ratio(const SampledField& field, const AxisPlan& plan);

struct WeakTypeReport {
  std::vector<double> y_grid;
  std::vector<double> tail_measures;  // mes{ |f * F_n| > y }
  double constant_estimate = 0.0;     // sup_y y mes / ||f||_1 (0 for f = 0)
};

/// f * F_n is the Norlund means of order n on T^1, i.e. (1/pi) int f(t) F_n(x - t) dt.
WeakTypeReport weak_type_scan(const SampledField& field, std::int64_t n, std::span<const double> y_grid);

/// Geometric levels from 1e-4 * top to top, `count` points.
std::vector<double> weak_type_levels(double top, std::size_t count);

struct StrongType {
  double lhs;         // ||f * G_n||_1
  double rhs_factor;  // ||f||_1
};

StrongType strong_type_check(const SampledField& field, std::int64_t n);

struct GrowthFit {
  double slope;
  double intercept;
};

/// Least squares of log(value) against log(order). Needs >= 3 points.
GrowthFit growth_fit(std::span<const double> values, std::span<const double> orders);

// Test-function builders shared by the CLI and the acceptance suite.

/// Real trigonometric polynomial with uniform random coefficients in the
/// unit box, Hermitian-symmetrized.
CoefficientGrid random_real_trig(const Index& degrees, std::uint64_t seed);

/// cos(x_0) on T^d (coefficient 1/2 at +-e_0).
CoefficientGrid cosine_grid(std::size_t dims);

/// h * 1_{[0, 1/h)} on T^1 (L1 norm 1 up to grid rounding of the support).
SampledField normalized_indicator_field(std::int64_t resolution, double height);

/// `count` narrow bumps at seeded random positions, L1-normalized on the grid.
SampledField spike_train_field(std::int64_t resolution, int count, int width_cells, std::uint64_t seed);

struct NamedField {
  std::string name;
  SampledField field;
};

/// Weak/strong stress corpus on T^1: constant, trig polynomial, normalized
/// indicators of height 2^4, 2^8, 2^12 and two spike trains.
std::vector<NamedField> stress_corpus(std::int64_t resolution);

}  // namespace logmeans
