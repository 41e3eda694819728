#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "logmeans/analysis.hpp"
#include "logmeans/counterexample.hpp"
#include "logmeans/csv_io.hpp"
#include "logmeans/log_kernels.hpp"
#include "logmeans/orlicz.hpp"
#include "logmeans/parallel.hpp"

namespace logmeans::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(s);
  while (std::getline(is, cell, sep)) out.push_back(trim(cell));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

template <class T>
bool parse_number(const std::string& text, T& value) {
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end && !text.empty();
}

std::int64_t parse_int(const std::string& field, const std::string& text) {
  std::int64_t v = 0;
  if (!parse_number(text, v)) throw ConfigError(field, "'" + text + "' is not an integer");
  return v;
}

std::string join(const Index& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

// Function names understood by `converge` (coefficient grids) and
// `weak-strong` (sampled fields on T^1).
struct FunctionSpec {
  std::string kind;  // cos, const, trig, indicator, spikes, corpus
  double param = 0.0;
};

FunctionSpec parse_function(const std::string& text, bool sampled) {
  const auto colon = text.find(':');
  FunctionSpec spec{text.substr(0, colon), 0.0};
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  const bool wants_arg = spec.kind == "trig" || spec.kind == "indicator" || spec.kind == "spikes";
  const bool known = spec.kind == "const" || spec.kind == "trig" ||
                     (sampled ? spec.kind == "corpus" || spec.kind == "indicator" || spec.kind == "spikes"
                              : spec.kind == "cos");
  if (!known) {
    throw ConfigError("function", "unknown function '" + text + "' (expected " +
                                      (sampled ? "corpus, const, trig:<deg>, indicator:<height>, spikes:<count>"
                                               : "cos, const, trig:<deg>") + ")");
  }
  if (wants_arg != (colon != std::string::npos)) {
    throw ConfigError("function", "'" + spec.kind + "' " + (wants_arg ? "needs" : "takes no") + " parameter");
  }
  if (wants_arg) {
    if (!parse_number(arg, spec.param) || !(spec.param > 0.0)) {
      throw ConfigError("function", "bad parameter '" + arg + "'");
    }
    if (spec.kind != "indicator" && spec.param != std::floor(spec.param)) {
      throw ConfigError("function", "'" + spec.kind + "' needs an integer parameter");
    }
  }
  return spec;
}

Index default_orders(const std::string& experiment) {
  if (experiment == "kernels") return {1, 2, 4, 8, 16, 32};
  if (experiment == "means-check") return parse_orders("1..32");
  if (experiment == "converge") return parse_orders("1..1024*2");
  if (experiment == "weak-strong") return parse_orders("1..1024*4");
  if (experiment == "diverge") return parse_orders("1..5");
  return parse_orders("1..8");
}

std::int64_t default_grid(const RunConfig& c) {
  if (c.experiment == "kernels") return 1024;
  if (c.experiment == "weak-strong") return std::int64_t{1} << 14;
  if (c.experiment == "diverge" || c.experiment == "orlicz") return kDivergenceGrid;
  return 0;
}

}  // namespace

ConfigValues parse_config_text(std::istream& is) {
  ConfigValues values;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected key=value");
    }
    values[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return values;
}

ConfigValues read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config", "cannot read '" + path + "'");
  return parse_config_text(is);
}

Index parse_orders(const std::string& raw) {
  const auto text = trim(raw);
  if (text.empty()) throw ConfigError("orders", "empty order list");
  Index out;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    for (const auto& cell : split(text, ',')) out.push_back(parse_int("orders", cell));
  } else {
    const auto lo = parse_int("orders", trim(text.substr(0, dots)));
    auto rest = text.substr(dots + 2);
    std::int64_t factor = 0;
    if (const auto star = rest.find('*'); star != std::string::npos) {
      factor = parse_int("orders", trim(rest.substr(star + 1)));
      if (factor < 2) throw ConfigError("orders", "geometric factor must be >= 2");
      rest = rest.substr(0, star);
    }
    const auto hi = parse_int("orders", trim(rest));
    if (hi < lo) throw ConfigError("orders", "range end is below its start");
    if (factor && lo < 1) throw ConfigError("orders", "geometric range must start at 1 or more");
    for (std::int64_t n = lo; n <= hi; n = factor ? n * factor : n + 1) out.push_back(n);
  }
  for (auto n : out) {
    if (n < 1) throw ConfigError("orders", "orders must be positive");
  }
  return out;
}

RunConfig resolve(const ConfigValues& raw) {
  ConfigValues values;
  for (const auto& [key, value] : raw) {
    if (key == "version") {
      if (value != LOGMEANS_VERSION) {
        std::cerr << "warning: config written by version " << value << ", running " << LOGMEANS_VERSION << '\n';
      }
      continue;
    }
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw ConfigError(key, "unknown key");
    }
    if (!value.empty() || key == "orders") values[key] = value;
  }
  auto has = [&](const char* k) { return values.count(k) > 0; };

  RunConfig c;
  if (!has("experiment")) throw ConfigError("experiment", "missing (one of kernels, means-check, converge, weak-strong, diverge, orlicz)");
  c.experiment = values["experiment"];
  if (std::find(kExperiments.begin(), kExperiments.end(), c.experiment) == kExperiments.end()) {
    throw ConfigError("experiment", "unknown experiment '" + c.experiment + "'");
  }
  const bool stage_experiment = c.experiment == "diverge" || c.experiment == "orlicz";

  if (has("dim")) {
    const auto d = parse_int("dim", values["dim"]);
    if (d < 1 || d > 16) throw ConfigError("dim", "must be in [1, 16]");
    c.dim = static_cast<int>(d);
  }
  if (has("axes")) {
    std::vector<AxisMean> tags;
    try {
      tags = AxisPlan::parse_tags(values["axes"]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("axes", e.what());
    }
    if (has("dim") && static_cast<int>(tags.size()) != c.dim) {
      throw ConfigError("axes", "has " + std::to_string(tags.size()) + " tags but dim is " + std::to_string(c.dim));
    }
    c.dim = static_cast<int>(tags.size());
    c.axes = AxisPlan::uniform(tags, 0).tag_string();
  } else {
    c.axes = std::string(static_cast<std::size_t>(c.dim), 'L');
  }
  const auto norlund_axes = static_cast<int>(std::count(c.axes.begin(), c.axes.end(), 'L'));
  if (stage_experiment) {
    if (has("b")) c.b = static_cast<int>(parse_int("b", values["b"]));
    if (c.b < 1 || c.b > c.dim) throw ConfigError("b", "need 1 <= b <= dim");
  } else {
    c.b = norlund_axes;
    if (has("b") && parse_int("b", values["b"]) != c.b) {
      throw ConfigError("b", "disagrees with the number of L axes in '" + c.axes + "'");
    }
  }

  c.orders = has("orders") ? parse_orders(values["orders"]) : default_orders(c.experiment);
  if (stage_experiment) {
    for (auto n : c.orders) {
      if (n > 30) throw ConfigError("orders", "construction stages must be <= 30");
    }
  }

  if (has("young")) c.young = values["young"];
  try {
    const auto q = YoungFunction::parse(c.young);
    c.young = q.to_string();
    if (!q.superlinear_at_infinity()) {
      std::cerr << "warning: " << c.young << " is not superlinear at infinity\n";
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("young", e.what());
  }

  if (has("grid")) {
    for (const auto& cell : split(values["grid"], ',')) {
      const auto g = parse_int("grid", cell);
      if (g < 1) throw ConfigError("grid", "resolutions must be positive");
      c.grid.push_back(g);
    }
    if (c.grid.size() == 1) c.grid.assign(static_cast<std::size_t>(c.dim), c.grid[0]);
    if (c.grid.size() != static_cast<std::size_t>(c.dim)) throw ConfigError("grid", "needs 1 or dim values");
  } else if (const auto g = default_grid(c); g > 0) {
    c.grid.assign(static_cast<std::size_t>(c.dim), g);
  }

  if (c.experiment == "weak-strong" && c.dim != 1) throw ConfigError("dim", "weak-strong runs on T^1 only");
  if (c.experiment == "kernels" && c.dim != 1) throw ConfigError("dim", "kernels are tabulated on T^1 only");
  if (c.experiment == "converge" || c.experiment == "weak-strong") {
    c.function = has("function") ? values["function"] : (c.experiment == "converge" ? "cos" : "corpus");
    const auto spec = parse_function(c.function, c.experiment == "weak-strong");
    if (c.experiment == "converge" && spec.kind == "trig" && !c.grid.empty()) {
      for (auto g : c.grid) {
        if (g < 2 * static_cast<std::int64_t>(spec.param) + 1) throw ConfigError("grid", "too coarse for " + c.function);
      }
    }
  }
  if (c.experiment == "diverge") {
    const auto top = *std::max_element(c.orders.begin(), c.orders.end());
    if (top > 12) throw ConfigError("orders", "diverge stages above 12 need kernel orders beyond desk scale");
    if (c.grid[0] < 2 * (std::int64_t{1} << (2 * top)) + 1) throw ConfigError("grid", "too coarse for kernel order 4^n");
  }
  if (has("seed")) {
    if (!parse_number(values["seed"], c.seed)) throw ConfigError("seed", "'" + values["seed"] + "' is not an unsigned integer");
  }
  if (has("cap")) {
    if (!parse_number(values["cap"], c.cap) || !(c.cap > 0.0)) throw ConfigError("cap", "must be a positive number");
  }
  if (has("out")) c.out = values["out"];
  return c;
}

std::string manifest_text(const RunConfig& c) {
  std::ostringstream os;
  os << "# logmeans run manifest; rerun with: logmeans --config <this file>\n";
  os << "version=" << LOGMEANS_VERSION << '\n';
  os << "experiment=" << c.experiment << '\n';
  os << "dim=" << c.dim << '\n';
  os << "axes=" << c.axes << '\n';
  os << "b=" << c.b << '\n';
  os << "orders=" << join(c.orders) << '\n';
  os << "young=" << c.young << '\n';
  os << "grid=" << join(c.grid) << '\n';
  os << "function=" << c.function << '\n';
  os << "seed=" << c.seed << '\n';
  os << "cap=" << format_real(c.cap) << '\n';
  os << "out=" << c.out << '\n';
  return os.str();
}

std::string file_stem(const RunConfig& c) {
  const auto [lo, hi] = std::minmax_element(c.orders.begin(), c.orders.end());
  return c.experiment + "_d" + std::to_string(c.dim) + "_b" + std::to_string(c.b) + "_n" + std::to_string(*lo) +
         "-" + std::to_string(*hi);
}

namespace {

using Output = std::pair<std::string, CsvTable>;

std::vector<Output> run_kernels(const RunConfig& c) {
  const std::int64_t G = c.grid[0];
  std::vector<double> u(static_cast<std::size_t>(G));
  for (std::int64_t k = 0; k < G; ++k) u[static_cast<std::size_t>(k)] = -std::numbers::pi + 2.0 * std::numbers::pi * k / G;
  CsvTable t({"n", "u", "norlund", "riesz"});
  std::vector<double> f(u.size()), g(u.size());
  for (auto n : c.orders) {
    tabulate_norlund(n, u, f);
    tabulate_riesz(n, u, g);
    for (std::size_t k = 0; k < u.size(); ++k) t.row().add(n).add(u[k]).add(f[k]).add(g[k]);
  }
  return {{file_stem(c) + ".csv", std::move(t)}};
}

std::vector<Output> run_means_check(const RunConfig& c) {
  const auto tags = AxisPlan::parse_tags(c.axes);
  CsvTable t({"n", "coefficients", "max_abs_diff"});
  for (auto n : c.orders) {
    const auto f = random_real_trig(Index(tags.size(), n + 2), c.seed + static_cast<std::uint64_t>(n));
    const auto plan = AxisPlan::uniform(tags, n);
    const auto fast = apply_mixed_means(f, plan);
    const auto slow = brute_force_means(f, plan);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(fast.data()[i] - slow.data()[i]));
    t.row().add(n).add(static_cast<std::int64_t>(f.size())).add(worst);
  }
  return {{file_stem(c) + ".csv", std::move(t)}};
}

CoefficientGrid converge_function(const RunConfig& c) {
  const auto spec = parse_function(c.function, false);
  const auto d = static_cast<std::size_t>(c.dim);
  if (spec.kind == "cos") return cosine_grid(d);
  if (spec.kind == "trig") return random_real_trig(Index(d, static_cast<std::int64_t>(spec.param)), c.seed);
  CoefficientGrid one(Index(d, 0));
  one.data()[0] = 1.0;
  one.set_real(true);
  return one;
}

std::vector<Output> run_converge(const RunConfig& c) {
  const auto f = converge_function(c);
  const auto report = convergence_experiment(f, AxisPlan::parse_tags(c.axes), c.orders, c.grid);
  CsvTable t({"n", "error"});
  for (std::size_t i = 0; i < c.orders.size(); ++i) t.row().add(c.orders[i]).add(report.errors[i]);
  return {{file_stem(c) + ".csv", std::move(t)}};
}

std::vector<NamedField> weak_strong_fields(const RunConfig& c) {
  const std::int64_t G = c.grid[0];
  const auto spec = parse_function(c.function, true);
  if (spec.kind == "corpus") return stress_corpus(G);
  if (spec.kind == "const") return {{c.function, SampledField::tabulate(Index{G}, [](auto) { return Complex(1.0); })}};
  if (spec.kind == "trig") {
    return {{c.function, synthesize(random_real_trig(Index{static_cast<std::int64_t>(spec.param)}, c.seed), Index{G})}};
  }
  if (spec.kind == "indicator") return {{c.function, normalized_indicator_field(G, spec.param)}};
  return {{c.function, spike_train_field(G, static_cast<int>(spec.param), 2, c.seed)}};
}

std::vector<Output> run_weak_strong(const RunConfig& c) {
  const auto fields = weak_strong_fields(c);
  CsvTable t({"function", "n", "weak_constant", "strong_ratio", "within_cap"});
  for (const auto& item : fields) {
    const double f1 = l1_norm(item.field);
    for (auto n : c.orders) {
      const auto g = means_of_field(item.field, AxisPlan({AxisMean::kNorlund}, {n}));
      double top = 0.0;
      for (const auto& v : g.samples()) top = std::max(top, std::abs(v.real()));
      const auto levels = weak_type_levels(top > 0.0 ? top : 1.0, 64);
      const double weak = weak_type_scan(item.field, n, levels).constant_estimate;
      const auto strong = strong_type_check(item.field, n);
      const double ratio = f1 > 0.0 ? strong.lhs / strong.rhs_factor : 0.0;
      t.row().add(item.name).add(n).add(weak).add(ratio).add(weak <= c.cap && ratio <= c.cap ? 1 : 0);
    }
  }
  return {{file_stem(c) + ".csv", std::move(t)}};
}

std::vector<Output> run_diverge(const RunConfig& c) {
  const auto q = YoungFunction::parse(c.young);
  DivergenceOptions opts;
  opts.grid = c.grid[0];
  CsvTable t({"n", "b", "gamma", "j_measure", "kernel_min", "l1_of_means", "luxemburg_norm", "ratio"});
  for (auto n : c.orders) {
    const auto r = divergence_row(static_cast<int>(n), c.b, c.dim, q, opts);
    t.row().add(r.n).add(r.b).add(r.gamma).add(r.j_measure).add(r.kernel_min).add(r.l1_of_means).add(r.luxemburg_norm).add(r.ratio);
  }
  return {{file_stem(c) + ".csv", std::move(t)}};
}

std::vector<Output> run_orlicz(const RunConfig& c) {
  const auto q = YoungFunction::parse(c.young);
  CsvTable norms({"n", "gamma", "l1_norm", "luxemburg_norm", "operator_bound_rhs"});
  for (auto n : c.orders) {
    const int s = static_cast<int>(n);
    norms.row()
        .add(n)
        .add(build_geometry(s).gamma)
        .add(indicator_l1_norm(s, c.b, c.dim))
        .add(indicator_luxemburg_norm(s, c.b, c.dim, q))
        .add(operator_bound_rhs(s, c.b, q));
  }
  CsvTable scan({"u", "ratio"});
  const auto u = geometric_grid(2.0, 2.0, 64);
  const auto ratio = containment_ratio_scan(q, c.b, u);
  for (std::size_t i = 0; i < u.size(); ++i) scan.row().add(u[i]).add(ratio[i]);
  const auto stem = file_stem(c);
  const auto suffix = stem.substr(std::string("orlicz").size());
  std::vector<Output> out;
  out.emplace_back("orlicz_norms" + suffix + ".csv", std::move(norms));
  out.emplace_back("orlicz_containment" + suffix + ".csv", std::move(scan));
  return out;
}

}  // namespace

std::vector<std::string> run(const RunConfig& c) {
  std::vector<Output> outputs;
  if (c.experiment == "kernels") outputs = run_kernels(c);
  else if (c.experiment == "means-check") outputs = run_means_check(c);
  else if (c.experiment == "converge") outputs = run_converge(c);
  else if (c.experiment == "weak-strong") outputs = run_weak_strong(c);
  else if (c.experiment == "diverge") outputs = run_diverge(c);
  else outputs = run_orlicz(c);

  namespace fs = std::filesystem;
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory '" + c.out + "'");
  std::vector<std::string> written;
  for (const auto& [name, table] : outputs) {
    const auto path = (dir / name).string();
    table.write_file(path);
    written.push_back(path);
  }
  const auto manifest = (dir / (file_stem(c) + ".manifest")).string();
  std::ofstream os(manifest, std::ios::binary);
  os << manifest_text(c);
  if (!os) throw std::runtime_error("cannot write '" + manifest + "'");
  written.push_back(manifest);
  return written;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Nörlund and Riesz logarithmic means of multiple Fourier series: experiments", "logmeans"};
  app.set_version_flag("--version", std::string(LOGMEANS_VERSION));
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file; flags override it");
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (does not change the output)")->check(CLI::PositiveNumber);

  const std::map<std::string, std::string> help = {
      {"dim", "dimension d"},
      {"axes", "axis tags, L = Norlund, R = Riesz, e.g. LRL"},
      {"b", "number of Norlund axes (diverge, orlicz)"},
      {"orders", "order list: a,b,c | a..b | a..b*k (stages n for diverge and orlicz)"},
      {"young", "Young function: power:<p> | llog_r:<r> | llog_pow:<s>"},
      {"grid", "grid resolution, one value or one per axis"},
      {"function", "test function: cos | const | trig:<deg> | corpus | indicator:<h> | spikes:<count>"},
      {"seed", "random seed"},
      {"cap", "weak/strong constant cap recorded with weak-strong"},
      {"out", "output directory"},
  };
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_opts;
  for (const auto& key : kConfigKeys) {
    if (key == "experiment") continue;
    flag_opts[key] = app.add_option("--" + key, flag_values[key], help.at(key));
  }
  const std::map<std::string, std::string> about = {
      {"kernels", "tabulate the Norlund and Riesz kernels"},
      {"means-check", "closed-form multipliers against the literal average of partial sums"},
      {"converge", "L1 error of the mixed means against the order"},
      {"weak-strong", "weak (1,1) constant of F_n and strong (1,1) ratio of G_n on T^1"},
      {"diverge", "norm growth of the means on the normalized indicators"},
      {"orlicz", "Luxemburg norms of the indicators and the containment scan"},
  };
  for (const auto& name : kExperiments) app.add_subcommand(name, about.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    ConfigValues values;
    if (!config_path.empty()) values = read_config_file(config_path);
    for (const auto& [key, opt] : flag_opts) {
      if (opt->count() > 0) values[key] = flag_values[key];
    }
    for (auto* sub : app.get_subcommands()) values["experiment"] = sub->get_name();
    const auto config = resolve(values);
    if (threads > 0) parallel::set_threads(threads);
    for (const auto& path : run(config)) std::cout << path << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace logmeans::cli
