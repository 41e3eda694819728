#include "logmeans/orlicz.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "logmeans/parallel.hpp"

namespace logmeans {

YoungFunction YoungFunction::power(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("power Young function needs p > 1");
  return {YoungFamily::kPower, p};
}

YoungFunction YoungFunction::llog_r(int r) {
  if (r < 1) throw std::invalid_argument("llog_r Young function needs integer r >= 1");
  return {YoungFamily::kLlogR, static_cast<double>(r)};
}

YoungFunction YoungFunction::llog_pow(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("llog_pow Young function needs s > 0");
  return {YoungFamily::kLlogPow, s};
}

YoungFunction YoungFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("Young function must look like family:parameter, got '" +
                                std::string(spec) + "'");
  }
  const auto name = spec.substr(0, colon);
  const std::string value(spec.substr(colon + 1));
  std::size_t used = 0;
  double param = 0.0;
  try {
    param = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw std::invalid_argument("bad Young function parameter '" + value + "'");
  }
  if (name == "power") return power(param);
  if (name == "llog_r") {
    if (param != std::floor(param)) throw std::invalid_argument("llog_r needs an integer r");
    return llog_r(static_cast<int>(param));
  }
  if (name == "llog_pow") return llog_pow(param);
  throw std::invalid_argument("unknown Young family '" + std::string(name) +
                              "' (expected power, llog_r or llog_pow)");
}

std::string YoungFunction::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case YoungFamily::kPower:
      os << "power:" << param_;
      break;
    case YoungFamily::kLlogR:
      os << "llog_r:" << static_cast<int>(param_);
      break;
    case YoungFamily::kLlogPow:
      os << "llog_pow:" << param_;
      break;
  }
  return os.str();
}

double YoungFunction::operator()(double u) const {
  const double a = std::abs(u);
  switch (family_) {
    case YoungFamily::kPower:
      return std::pow(a, param_);
    case YoungFamily::kLlogR: {
      const double l = std::log1p(a);
      double p = a;
      for (int i = 0; i < static_cast<int>(param_); ++i) p *= l;
      return p;
    }
    case YoungFamily::kLlogPow:
      return a * std::pow(std::log1p(a), param_);
  }
  return 0.0;
}

bool YoungFunction::superlinear_at_infinity() const {
  for (double u : geometric_grid(256.0, 2.0, 56)) {
    if ((*this)(u) < u) return false;
  }
  return true;
}

double young_eval(const YoungFunction& q, double u) {
  if (u < 0.0) throw std::invalid_argument("young_eval: u must be >= 0");
  return q(u);
}

bool sampled_convexity(const YoungFunction& q) {
  const auto grid = geometric_grid(1e-6, std::pow(10.0, 0.25), 49);
  for (double u : grid) {
    for (double v : grid) {
      const double mid = q(0.5 * (u + v));
      const double chord = 0.5 * (q(u) + q(v));
      if (mid > chord * (1.0 + 1e-12)) return false;
    }
  }
  return true;
}

double modular(const SampledField& field, const YoungFunction& q, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("modular: k must be > 0");
  auto s = field.samples();
  const bool real = field.real();
  const double inv = 1.0 / k;
  const double sum = parallel::deterministic_sum(
      static_cast<std::int64_t>(s.size()), [&](std::int64_t i) {
        const Complex v = s[static_cast<std::size_t>(i)];
        return q((real ? std::abs(v.real()) : std::abs(v)) * inv);
      });
  return sum * field.cell_volume();
}

double luxemburg_bisect(const std::function<double(double)>& modular_at, double k0) {
  if (!(k0 > 0.0) || !std::isfinite(k0)) throw std::invalid_argument("luxemburg: bad initial k");
  // lo violates the constraint (modular > 1), hi satisfies it.
  double lo = k0;
  double hi = k0;
  if (modular_at(k0) > 1.0) {
    int steps = 0;
    do {
      lo = hi;
      hi *= 2.0;
      if (++steps > kMaxBracketSteps) {
        throw std::runtime_error("luxemburg: no bracket after 200 doublings; malformed Young function?");
      }
    } while (modular_at(hi) > 1.0);
  } else {
    int steps = 0;
    do {
      hi = lo;
      lo *= 0.5;
      if (++steps > kMaxBracketSteps) {
        throw std::runtime_error("luxemburg: no bracket after 200 halvings; malformed Young function?");
      }
    } while (modular_at(lo) <= 1.0);
  }
  while (hi - lo > kLuxemburgTolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    if (modular_at(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double luxemburg_norm(const SampledField& field, const YoungFunction& q) {
  const double k0 = l1_norm(field);
  if (k0 == 0.0) return 0.0;
  return luxemburg_bisect([&](double k) { return modular(field, q, k); }, k0);
}

double luxemburg_norm_of_indicator(double height, double measure, const YoungFunction& q) {
  if (height == 0.0 || measure == 0.0) return 0.0;
  if (measure < 0.0) throw std::invalid_argument("indicator measure must be >= 0");
  const double c = std::abs(height);
  return luxemburg_bisect([&](double k) { return measure * q(c / k); }, c * measure);
}

ModularBound modular_bound_check(const SampledField& field, const YoungFunction& q) {
  return {luxemburg_norm(field, q), 1.0 + modular(field, q, 1.0)};
}

std::vector<double> containment_ratio_scan(const YoungFunction& q, int b,
                                           std::span<const double> u_grid) {
  if (b < 1) throw std::invalid_argument("containment_ratio_scan: b must be >= 1");
  std::vector<double> out;
  out.reserve(u_grid.size());
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const double u = u_grid[i];
    if (!(u > 1.0)) throw std::invalid_argument("u grid must lie above 1");
    if (i > 0 && !(u > u_grid[i - 1])) throw std::invalid_argument("u grid must be increasing");
    out.push_back(u * std::pow(std::log(u), b) / q(u));
  }
  return out;
}

std::vector<double> geometric_grid(double first, double ratio, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first * std::pow(ratio, static_cast<double>(i));
  return out;
}

}  // namespace logmeans
