#pragma once

// Young functions, modular integrals and the Luxemburg norm
//   ||f||_Q = inf { k > 0 : int_{T^d} Q(|f| / k) <= 1 }.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logmeans/spectral.hpp"

namespace logmeans {

enum class YoungFamily {
  kPower,    // u^p, p > 1
  kLlogR,    // u log^r(1+u), integer r >= 1
  kLlogPow,  // u (log(1+u))^s, s > 0
};

class YoungFunction {
 public:
  static YoungFunction power(double p);
  static YoungFunction llog_r(int r);
  static YoungFunction llog_pow(double s);
  /// "power:2", "llog_r:1", "llog_pow:0.5".
  static YoungFunction parse(std::string_view spec);

  YoungFamily family() const { return family_; }
  double parameter() const { return param_; }
  std::string to_string() const;

  /// Q(|u|).
  double operator()(double u) const;

  /// True if Q(u) >= u on a geometric scan of u in [2^8, 2^63]; the
  /// divergence argument for the norm growth needs Q(u) >~ u at large u.
  bool superlinear_at_infinity() const;

 private:
  YoungFunction(YoungFamily family, double param) : family_(family), param_(param) {}

  YoungFamily family_;
  double param_;
};

double young_eval(const YoungFunction& q, double u);

/// Midpoint-convexity check Q((u+v)/2) <= (Q(u)+Q(v))/2 over a fixed
/// geometric grid of pairs in [1e-6, 1e6].
bool sampled_convexity(const YoungFunction& q);

/// Rectangle-rule value of int_{T^d} Q(|f| / k). Throws for k <= 0.
double modular(const SampledField& field, const YoungFunction& q, double k);

/// Relative bisection tolerance on k.
inline constexpr double kLuxemburgTolerance = 1e-10;
inline constexpr int kMaxBracketSteps = 200;

/// Luxemburg norm by bisection on k against modular(k) = 1, starting from a
/// bracket around k0. `modular_at` must be nonincreasing in k.
double luxemburg_bisect(const std::function<double(double)>& modular_at, double k0);

/// ||f||_Q; 0 for the zero field. Bracket seeded at the L1 norm.
double luxemburg_norm(const SampledField& field, const YoungFunction& q);

/// ||c 1_E||_Q for a set E of measure mu, computed from the exact modular
/// mu Q(c/k).
double luxemburg_norm_of_indicator(double height, double measure, const YoungFunction& q);

struct ModularBound {
  double lhs;  // ||f||_Q
  double rhs;  // 1 + int Q(|f|)
};

ModularBound modular_bound_check(const SampledField& field, const YoungFunction& q);

/// u log^b(u) / Q(u) along the grid; u must be increasing and > 1.
std::vector<double> containment_ratio_scan(const YoungFunction& q, int b,
                                           std::span<const double> u_grid);

/// `count` points u_i = first * ratio^i.
std::vector<double> geometric_grid(double first, double ratio, std::size_t count);

}  // namespace logmeans
