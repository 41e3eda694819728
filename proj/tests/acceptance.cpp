// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "logmeans/analysis.hpp"
#include "logmeans/counterexample.hpp"
#include "logmeans/log_kernels.hpp"
#include "logmeans/orlicz.hpp"
#include "logmeans/spectral.hpp"

using namespace logmeans;
using std::numbers::pi;

namespace {

// Pinned tolerances and thresholds.
constexpr double kOracleTol = 1e-12;
constexpr int kOracleGrids = 120;
constexpr std::int64_t kOracleMaxOrder = 64;
constexpr double kMassTol = 1e-8;
constexpr int kMassPoints = 4096;
constexpr double kConvergenceFraction = 0.05;
constexpr double kKernelBoundSpread = 2.0;
constexpr int kKernelBoundX = 256;
constexpr int kKernelBoundZ = 64;
constexpr double kSlopeB1 = 0.8;
constexpr double kSlopeB2 = 1.6;
constexpr double kSubLogGrowth = 2.0;
constexpr double kBorderlineBand = 2.0;
constexpr double kWeakStrongCap = 10.0;
constexpr std::int64_t kWeakStrongMaxOrder = 1024;
constexpr std::int64_t kWeakStrongGrid = std::int64_t{1} << 14;
constexpr double kLuxemburgTol = 1e-8;
constexpr int kLuxemburgPairs = 100;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

Verdict multiplier_oracle() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int trial = 0; trial < kOracleGrids; ++trial) {
    const std::size_t d = trial < kOracleGrids / 2 ? 1 : 2;
    std::uniform_int_distribution<std::int64_t> order(0, kOracleMaxOrder);
    std::uniform_int_distribution<std::int64_t> degree(0, d == 1 ? 80 : 24);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<AxisMean> tags;
    Index orders, degrees;
    for (std::size_t a = 0; a < d; ++a) {
      tags.push_back(coin(rng) ? AxisMean::kNorlund : AxisMean::kRiesz);
      orders.push_back(order(rng));
      degrees.push_back(degree(rng));
    }
    CoefficientGrid f(degrees);
    for (auto& c : f.data()) c = Complex(normal(rng), normal(rng));
    const AxisPlan plan(tags, orders);
    const auto fast = apply_mixed_means(f, plan);
    const auto slow = brute_force_means(f, plan);
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(fast.data()[i] - slow.data()[i]));
  }
  return {worst <= kOracleTol, "max |closed form - literal average| = " + fmt("%.3g", worst) + " over " +
                                   std::to_string(kOracleGrids) + " grids (tol 1e-12)"};
}

Verdict kernel_mass() {
  std::vector<double> u(kMassPoints), v(kMassPoints);
  for (int k = 0; k < kMassPoints; ++k) u[k] = -pi + 2.0 * pi * k / kMassPoints;
  double worst = 0.0;
  auto mass = [&] {
    double s = 0.0;
    for (double x : v) s += x;
    return s * (2.0 * pi / kMassPoints) / pi;
  };
  for (std::int64_t n : {0, 1, 2, 4, 8, 16, 32, 64, 128, 256}) {
    tabulate_norlund(n, u, v);
    worst = std::max(worst, std::abs(mass() - 1.0));
    tabulate_riesz(n, u, v);
    worst = std::max(worst, std::abs(mass() - 1.0));
  }
  return {worst <= kMassTol, "max |mass - 1| = " + fmt("%.3g", worst) + " (tol 1e-8)"};
}

Verdict convergence() {
  struct Case {
    const char* tags;
    std::int64_t degree;
    std::uint64_t seed;
  };
  const std::vector<Case> corpus = {{"L", 1, 1},  {"L", 3, 2},  {"L", 6, 3},  {"L", 10, 4}, {"LL", 3, 5},
                                    {"LL", 5, 6}, {"LR", 3, 7}, {"LR", 4, 8}, {"RL", 3, 9}, {"RL", 4, 10}};
  const Index orders{8, 16, 32, 64, 128, 256, 512, 1024};
  int passed = 0;
  std::string failing;
  for (const auto& c : corpus) {
    const auto tags = AxisPlan::parse_tags(c.tags);
    const auto f = random_real_trig(Index(tags.size(), c.degree), c.seed);
    const auto r = convergence_experiment(f, tags, orders);
    const double ratio = r.errors.back() / r.errors.front();
    if (ratio < kConvergenceFraction && r.monotone_tail) {
      ++passed;
    } else {
      failing += std::string(failing.empty() ? "" : " ") + c.tags + "/deg" + std::to_string(c.degree) + ":" +
                 fmt("%.3f", ratio);
    }
  }
  std::string detail = std::to_string(passed) + "/10 functions reach error(1024)/error(8) < 0.05 with a monotone tail";
  if (!failing.empty()) detail += "; failing " + failing;
  return {passed == static_cast<int>(corpus.size()), detail};
}

Verdict kernel_bound() {
  std::vector<double> mins;
  std::string detail = "min x F(x-z):";
  for (int n = 1; n <= 4; ++n) {
    mins.push_back(kernel_lower_bound_check(n, kKernelBoundX, kKernelBoundZ).min_product);
    detail += " n=" + std::to_string(n) + " " + fmt("%.4g", mins.back());
  }
  const double lo = *std::min_element(mins.begin(), mins.end());
  const double hi = *std::max_element(mins.begin(), mins.end());
  const bool pass = lo > 0.0 && hi <= kKernelBoundSpread * lo;
  return {pass, detail + " (need all > 0, spread <= 2)"};
}

Verdict low_exponent() {
  std::vector<double> ns, v1, v2;
  for (int n = 1; n <= 5; ++n) {
    ns.push_back(n);
    v1.push_back(lower_bound_experiment(n, 1, 2).value);
    v2.push_back(lower_bound_experiment(n, 2, 2).value);
  }
  const double s1 = growth_fit(v1, ns).slope;
  const double s2 = growth_fit(v2, ns).slope;
  return {s1 >= kSlopeB1 && s2 >= kSlopeB2,
          "log-log slope " + fmt("%.3f", s1) + " for |B|=1 (need >= 0.8), " + fmt("%.3f", s2) +
              " for |B|=2 (need >= 1.6)"};
}

Verdict orlicz_ratio() {
  auto ratio = [](int n, const YoungFunction& q) {
    return lower_bound_experiment(n, 1, 1).value / indicator_luxemburg_norm(n, 1, 1, q);
  };
  const auto sub = YoungFunction::llog_pow(0.5);
  const double growth = ratio(5, sub) / ratio(2, sub);
  const auto border = YoungFunction::llog_r(1);
  double lo = INFINITY, hi = 0.0;
  for (int n = 2; n <= 5; ++n) {
    const double r = ratio(n, border);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const bool sub_ok = growth >= kSubLogGrowth;
  const bool border_ok = hi <= kBorderlineBand * lo;
  return {sub_ok && border_ok, "u log^(1/2)(1+u): ratio(5)/ratio(2) = " + fmt("%.3f", growth) +
                                   " (need >= 2); u log(1+u): band max/min = " + fmt("%.3f", hi / lo) +
                                   " (need <= 2)"};
}

Verdict weak_strong() {
  double weak = 0.0, strong = 0.0;
  for (const auto& item : stress_corpus(kWeakStrongGrid)) {
    const double f1 = l1_norm(item.field);
    for (std::int64_t n = 1; n <= kWeakStrongMaxOrder; ++n) {
      const auto g = means_of_field(item.field, AxisPlan({AxisMean::kNorlund}, {n}));
      double top = 0.0;
      for (const auto& s : g.samples()) top = std::max(top, std::abs(s.real()));
      weak = std::max(weak, weak_type_scan(item.field, n, weak_type_levels(top, 64)).constant_estimate);
      strong = std::max(strong, strong_type_check(item.field, n).lhs / f1);
    }
  }
  return {weak <= kWeakStrongCap && strong <= kWeakStrongCap,
          "sup weak constant " + fmt("%.4f", weak) + ", sup strong ratio " + fmt("%.4f", strong) +
              " over 7 functions, n = 1..1024 (cap 10)"};
}

Verdict luxemburg() {
  double worst = 0.0;
  for (double c : {0.5, 3.0, 1e3}) {
    for (double mu : {1e-4, 0.3, 2 * pi}) {
      const double v = luxemburg_norm_of_indicator(c, mu, YoungFunction::power(2.0));
      worst = std::max(worst, std::abs(v - c * std::sqrt(mu)) / (c * std::sqrt(mu)));
    }
  }
  const std::int64_t G = 256;
  const double mu = 2 * pi / G * 37;
  const auto ind = SampledField::tabulate({G}, [&](auto x) {
    const auto k = std::lround((x[0] + pi) / (2 * pi / G));
    return Complex(k < 37 ? 4.0 : 0.0);
  });
  worst = std::max(worst, std::abs(luxemburg_norm(ind, YoungFunction::power(2.0)) - 4.0 * std::sqrt(mu)) /
                              (4.0 * std::sqrt(mu)));

  std::mt19937_64 rng(77);
  std::lognormal_distribution<double> mag(0.0, 2.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::vector<YoungFunction> qs = {YoungFunction::llog_r(1), YoungFunction::llog_r(2),
                                         YoungFunction::llog_pow(0.5), YoungFunction::power(1.5)};
  double homog = 0.0;
  double triangle = -INFINITY;
  for (int p = 0; p < kLuxemburgPairs; ++p) {
    const auto& q = qs[static_cast<std::size_t>(p) % qs.size()];
    SampledField f({G}), g({G});
    for (auto& s : f.samples()) s = unit(rng) * mag(rng);
    for (auto& s : g.samples()) s = unit(rng) * mag(rng);
    const double t = unit(rng) * std::pow(10.0, 3.0 * unit(rng));
    SampledField tf({G});
    for (std::int64_t k = 0; k < G; ++k) tf.samples()[k] = t * f.samples()[k];
    const double nf = luxemburg_norm(f, q);
    const double ng = luxemburg_norm(g, q);
    homog = std::max(homog, std::abs(luxemburg_norm(tf, q) - std::abs(t) * nf) / (std::abs(t) * nf));
    const double nfg = luxemburg_norm(combine(1.0, f, 1.0, g), q);
    triangle = std::max(triangle, (nfg - (nf + ng)) / (nf + ng));
  }
  const bool pass = worst <= kLuxemburgTol && homog <= kLuxemburgTol && triangle <= kLuxemburgTol;
  return {pass, "indicator rel err " + fmt("%.3g", worst) + ", homogeneity rel err " + fmt("%.3g", homog) +
                    ", worst triangle excess " + fmt("%.3g", triangle) + " (tol 1e-8)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Verdict determinism() {
  namespace fs = std::filesystem;
  const auto root = fs::temp_directory_path() / "logmeans_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::string> configs = {
      "converge --dim 2 --axes LR --function trig:4 --orders 1..1024*2",
      "converge --axes LLR --function trig:2 --orders 1..64*4",
      "weak-strong --orders 1..1024*4",
      "diverge --b 1 --dim 2 --orders 1..4 --young llog_pow:0.5",
      "means-check --axes RL --orders 1..16*2",
      "kernels --orders 1,7,64",
      "orlicz --b 2 --dim 3 --orders 1..6",
  };
  int identical = 0;
  std::string broken;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::vector<std::string> runs;
    for (const char* threads : {"1", "4", "8"}) {
      for (int rep = 0; rep < 2; ++rep) {
        const auto dir = root / ("c" + std::to_string(i) + "_t" + threads + "_r" + std::to_string(rep));
        const std::string cmd = std::string("OMP_NUM_THREADS=") + threads + " " LOGMEANS_CLI_PATH " " +
                                configs[i] + " --out " + dir.string() + " > /dev/null";
        if (std::system(cmd.c_str()) != 0) {
          runs.push_back("<run failed>");
          continue;
        }
        std::string all;
        std::vector<fs::path> csvs;
        for (const auto& e : fs::directory_iterator(dir)) {
          if (e.path().extension() == ".csv") csvs.push_back(e.path());
        }
        std::sort(csvs.begin(), csvs.end());
        for (const auto& p : csvs) all += p.filename().string() + "\n" + slurp(p);
        runs.push_back(all);
      }
    }
    const bool same = runs.front() != "<run failed>" && std::all_of(runs.begin(), runs.end(), [&](const auto& r) { return r == runs.front(); });
    if (same) {
      ++identical;
    } else {
      broken += " [" + configs[i] + "]";
    }
  }
  fs::remove_all(root);
  std::string detail = std::to_string(identical) + "/" + std::to_string(configs.size()) +
                       " configs byte-identical across 6 runs each (1, 4, 8 threads)";
  if (!broken.empty()) detail += "; differing:" + broken;
  return {identical == static_cast<int>(configs.size()), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"multiplier-oracle equivalence", multiplier_oracle},
      {"kernel mass", kernel_mass},
      {"L1 convergence of the mixed means", convergence},
      {"kernel lower bound on J_n", kernel_bound},
      {"norm growth exponent", low_exponent},
      {"Orlicz ratio growth", orlicz_ratio},
      {"weak and strong type constants", weak_strong},
      {"Luxemburg norm analytic cases", luxemburg},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto v = criteria[i].second();
    if (!v.pass) ++failures;
    std::printf("%s [%zu] %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
