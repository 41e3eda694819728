#pragma once

// Experiment runner behind the `logmeans` command.
//
// A run is described by a flat key=value config (see kConfigKeys); command
// line flags override file values. Every run writes one or more CSV files
// and a manifest next to them. The manifest is itself a config file, so
//   logmeans --config <manifest>
// repeats the run.

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "logmeans/spectral.hpp"

namespace logmeans::cli {

inline const std::vector<std::string> kExperiments = {"kernels", "means-check", "converge",
                                                      "weak-strong", "diverge", "orlicz"};

/// Accepted config keys, in manifest order.
inline const std::vector<std::string> kConfigKeys = {"experiment", "dim",  "axes", "b",   "orders", "young",
                                                     "grid",       "function", "seed", "cap", "out"};

/// Validation failure tied to one config field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument("invalid config field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

using ConfigValues = std::map<std::string, std::string>;

struct RunConfig {
  std::string experiment;
  int dim = 1;
  std::string axes;  // one of L/R per axis
  int b = 1;         // |B|: Norlund axis count (from axes, or given for diverge/orlicz)
  Index orders;
  std::string young = "llog_r:1";
  Index grid;  // per-axis resolution; empty means the experiment default
  std::string function;
  std::uint64_t seed = 1;
  double cap = 10.0;
  std::string out = ".";
};

/// Parses "key=value" lines. Blank lines and lines starting with '#' are
/// skipped; whitespace around keys and values is trimmed.
ConfigValues parse_config_text(std::istream& is);
ConfigValues read_config_file(const std::string& path);

/// "a,b,c", "a..b" (step 1) or "a..b*k" (geometric, factor k >= 2).
Index parse_orders(const std::string& text);

/// Validates and fills defaults. Throws ConfigError naming the field.
RunConfig resolve(const ConfigValues& values);

/// The config as key=value text, with the library version.
std::string manifest_text(const RunConfig& config);

/// Common file stem: <experiment>_d<d>_b<b>_n<lo>-<hi>.
std::string file_stem(const RunConfig& config);

/// Runs the experiment and returns the paths written (CSV files, then the
/// manifest). Throws std::runtime_error if the output directory is unusable.
std::vector<std::string> run(const RunConfig& config);

/// Command-line front end; returns the process exit status.
int main_entry(int argc, char** argv);

}  // namespace logmeans::cli
