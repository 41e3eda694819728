#pragma once

// Straightforward single-threaded versions of the OpenMP kernels. Tests use
// them as oracles for the parallel paths and the benchmark compares the two.

#include <cstdint>
#include <span>
#include <vector>

#include "logmeans/spectral.hpp"

namespace logmeans::serial {

void tabulate_norlund(std::int64_t n, std::span<const double> u, std::span<double> out);
void tabulate_riesz(std::int64_t n, std::span<const double> u, std::span<double> out);

/// Direct summation sum_j c_j e^{i <j, x>} at every grid point.
/// O(#coefficients * #points).
SampledField synthesize_direct(const CoefficientGrid& coeffs, const Index& resolution);

/// Direct rectangle-rule sums for each stored frequency.
CoefficientGrid analyze_direct(const SampledField& field, const Index& degrees);

/// Multiplies by one axis multiplier at a time, axes in the given order.
CoefficientGrid apply_mixed_means(const CoefficientGrid& coeffs, const AxisPlan& plan,
                                  std::span<const std::size_t> axis_order);

/// Plain left-to-right sum of |f| times the cell volume.
double l1_norm(const SampledField& field);

}  // namespace logmeans::serial
