#include <cmath>
#include <numbers>

#include "doctest.h"
#include "logmeans/counterexample.hpp"
#include "logmeans/log_kernels.hpp"
#include "logmeans/spectral.hpp"

using namespace logmeans;
using std::numbers::pi;

TEST_CASE("geometry at n = 1") {
  const auto g = build_geometry(1);
  CHECK(g.gamma == doctest::Approx(pi / 27).epsilon(1e-15));
  CHECK(g.kernel_order() == 4);
  REQUIRE(g.intervals.size() == 1);
  CHECK(g.intervals[0].lo == doctest::Approx(13 * pi / 27).epsilon(1e-15));
  CHECK(g.intervals[0].hi == doctest::Approx(17 * pi / 27).epsilon(1e-15));
  CHECK(g.j_set[0].lo == doctest::Approx(14 * pi / 27).epsilon(1e-15));
  CHECK(g.j_set[0].hi == doctest::Approx(16 * pi / 27).epsilon(1e-15));
  CHECK_THROWS(build_geometry(0));
  CHECK_THROWS(build_geometry(31));
}

TEST_CASE("geometry invariants") {
  for (int n = 1; n <= 10; ++n) {
    const auto g = build_geometry(n);
    CHECK(g.gamma == doctest::Approx(pi / (6.0 * (std::pow(4.0, n) + 0.5))).epsilon(1e-15));
    CHECK(g.kernel_order() == std::int64_t{1} << (2 * n));
    REQUIRE(g.j_set.size() == std::size_t{1} << (n - 1));
    for (std::size_t m = 0; m < g.j_set.size(); ++m) {
      const auto& c = g.j_set[m];
      CHECK(c.lo > 0.0);
      CHECK(c.hi < pi);
      CHECK(c.length() == doctest::Approx(2 * g.gamma).epsilon(1e-12));
      CHECK(g.intervals[m].length() == doctest::Approx(4 * g.gamma).epsilon(1e-12));
      if (m > 0) CHECK(c.lo > g.j_set[m - 1].hi);
    }
    CHECK(g.j_measure() == doctest::Approx(std::ldexp(g.gamma, n)).epsilon(1e-12));
    CHECK(inverse_x_integral(g) == doctest::Approx(inverse_x_quadrature(g, 64)).epsilon(1e-10));
  }
  CHECK_THROWS(inverse_x_quadrature(build_geometry(2), 3));
}

TEST_CASE("indicator coefficients") {
  const double gamma = build_geometry(3).gamma;
  CHECK(indicator_coeff(gamma, 0).real() == doctest::Approx(gamma / (2 * pi)).epsilon(1e-15));
  for (std::int64_t j : {1, -1, 7, -40}) {
    const Complex naive = (1.0 - std::polar(1.0, -j * gamma)) / Complex(0.0, 2 * pi * j);
    CHECK(std::abs(indicator_coeff(gamma, j) - naive) < 1e-15);
    CHECK(std::abs(indicator_coeff(gamma, -j) - std::conj(indicator_coeff(gamma, j))) < 1e-18);
  }
  // Small t keeps full relative accuracy.
  const Complex tiny = indicator_coeff(1e-12, 1);
  CHECK(tiny.real() == doctest::Approx(1e-12 / (2 * pi)).epsilon(1e-9));

  const std::int64_t G = std::int64_t{1} << 16;
  const auto field = SampledField::tabulate({G}, [&](auto x) { return Complex(x[0] >= 0.0 && x[0] <= gamma ? 1.0 : 0.0); });
  const auto c = analyze(field, {32});
  const auto exact = indicator_grid(gamma, 32, 1.0);
  CHECK(exact.real());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c.data()[i] - exact.data()[i]) < 1e-4);
  CHECK_THROWS(indicator_coeff(0.0, 1));
}

TEST_CASE("kernel lower bound is positive at the first two stages") {
  for (int n : {1, 2}) {
    const auto r = kernel_lower_bound_check(n, 256, 64);
    CHECK(r.min_product > 0.0);
    CHECK(r.max_product >= r.min_product);
  }
}

TEST_CASE("the Norlund kernel of order 64 dips below zero inside the lower-bound domain") {
  // Cross-checked at 30 digits: F_64 at x - z with x = alpha_{4,3} + gamma_3, z = gamma_3.
  const double u = 0.39777271324521930;
  CHECK(norlund_kernel(64, u) == doctest::Approx(-0.0274588655573987).epsilon(1e-10));
  const auto g = build_geometry(3);
  CHECK(g.intervals[3].lo == doctest::Approx(u).epsilon(1e-15));
  const auto r = kernel_lower_bound_check(3, 256, 64);
  CHECK(r.min_product < 0.0);
}

TEST_CASE("lower-bound grid covers each component with its endpoints") {
  const auto g = build_geometry(4);
  const auto xs = lower_bound_x_grid(g, 64);
  CHECK(xs.size() == 64);
  CHECK(xs.front() == g.j_set.front().lo);
  CHECK(xs.back() == doctest::Approx(g.j_set.back().hi).epsilon(1e-15));
  CHECK(lower_bound_x_grid(build_geometry(8), 16).size() == 2 * 128);
}

TEST_CASE("factorized lower bound matches the full two-dimensional computation") {
  const int n = 1;
  const auto geom = build_geometry(n);
  const std::int64_t order = geom.kernel_order();
  const auto f1 = indicator_grid(geom.gamma, order, 1.0 / (2.0 * geom.gamma));

  SUBCASE("b = 1, d = 2") {
    const std::int64_t G = 4096;
    CoefficientGrid f({order, 0});
    for (std::int64_t j = -order; j <= order; ++j) f.at({j, 0}) = f1.at({j});
    const auto m = apply_mixed_means(f, AxisPlan(AxisPlan::parse_tags("LR"), {order, order}));
    const double full = l1_norm(synthesize(m, {G, 4}));
    const auto lb = lower_bound_experiment(n, 1, 2, G);
    CHECK(lb.riesz_factor == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(full == doctest::Approx(lb.value).epsilon(1e-12));
  }
  SUBCASE("b = 2, d = 2") {
    const std::int64_t G = 1024;
    CoefficientGrid f({order, order});
    for (std::int64_t a = -order; a <= order; ++a)
      for (std::int64_t b = -order; b <= order; ++b) f.at({a, b}) = f1.at({a}) * f1.at({b});
    const auto m = apply_mixed_means(f, AxisPlan(AxisPlan::parse_tags("LL"), {order, order}));
    const double full = l1_norm(synthesize(m, {G, G}));
    CHECK(full == doctest::Approx(lower_bound_experiment(n, 2, 2, G).value).epsilon(1e-12));
  }
}

TEST_CASE("lower bound values") {
  const auto lb = lower_bound_experiment(1, 1, 1);
  CHECK(lb.norlund_factor == doctest::Approx(0.6175).epsilon(1e-3));
  CHECK(lb.value == lb.norlund_factor);
  CHECK(lb.spacing_to_gamma < 1e-3);
  CHECK(lower_bound_experiment(3, 1, 1).value > lower_bound_experiment(2, 1, 1).value);
  CHECK_THROWS(lower_bound_experiment(1, 0, 1));
  CHECK_THROWS(lower_bound_experiment(1, 2, 1));
  CHECK_THROWS(lower_bound_experiment(4, 1, 1, 256));
}

TEST_CASE("indicator norms") {
  CHECK(indicator_l1_norm(3, 1, 1) == 0.5);
  CHECK(indicator_l1_norm(3, 2, 3) == doctest::Approx(0.25 * 2 * pi).epsilon(1e-15));
  // power:2 gives height * sqrt(measure).
  for (int n : {1, 4}) {
    const double gamma = build_geometry(n).gamma;
    CHECK(indicator_luxemburg_norm(n, 1, 1, YoungFunction::power(2.0)) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(gamma))).epsilon(1e-9));
    CHECK(indicator_luxemburg_norm(n, 2, 3, YoungFunction::power(2.0)) ==
          doctest::Approx(std::sqrt(2 * pi) / (4.0 * gamma)).epsilon(1e-9));
  }
  // The L log L norm of the normalized indicators grows without bound.
  const auto q = YoungFunction::llog_r(1);
  CHECK(indicator_luxemburg_norm(6, 1, 1, q) > indicator_luxemburg_norm(2, 1, 1, q));
  CHECK(operator_bound_rhs(2, 1, YoungFunction::llog_r(1)) == doctest::Approx(2.0 / std::log(17.0)).epsilon(1e-14));
}

TEST_CASE("divergence row") {
  DivergenceOptions opts;
  opts.grid = 4096;
  opts.kernel_check = false;
  const auto q = YoungFunction::llog_r(1);
  const auto row = divergence_row(2, 1, 2, q, opts);
  CHECK(row.n == 2);
  CHECK(std::isnan(row.kernel_min));
  CHECK(row.ratio == doctest::Approx(row.l1_of_means / row.luxemburg_norm));
  CHECK(row.j_measure == doctest::Approx(build_geometry(2).j_measure()));
  opts.kernel_check = true;
  CHECK(divergence_row(1, 1, 1, q, opts).kernel_min > 0.0);
}
