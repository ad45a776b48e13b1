#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cogrowth {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a CLI run depends on. Fields a subcommand does not use keep
/// their defaults, so a config always serializes the same way.
struct RunConfig {
  std::string subcommand;
  std::string group;
  std::string output = "-";

  // series / table3
  int max_len = 16;
  std::vector<std::string> groups;

  // bound / lemma5
  std::uint64_t vertices = 1'000'000;
  std::string kind = "H";
  std::uint64_t first_checkpoint = 100;
  int per_decade = 50;
  double tolerance = 1e-10;
  std::uint64_t max_iterations = 100'000;
  std::string summary;

  // extrapolate
  std::string input;
  std::string form = "ladder";
  std::string x_column = "N";
  std::string y_column = "alpha_N_rayleigh";
  double delta_lo = 0.1;
  double delta_hi = 12.0;
  double delta_step = 0.05;
  double band_fraction = 0.05;
  std::vector<double> escape_deltas{0.0, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75};
  std::string grid_output;

  // flatperm / escape
  std::uint64_t tours = 100'000;
  std::uint64_t seed = 1;
  int workers = 1;
  double prune_below = 0.5;
  double enrich_above = 2.0;
  int copies = 2;
  std::string resume;
  std::string save;
  std::uint64_t words = 1024;
  std::uint64_t length = 16384;

  // metric-check
  int radius = 8;

  // budgets
  std::uint64_t max_vertices = 10'000'000;
  std::uint64_t max_key_bytes = std::uint64_t{4} << 30;

  /// Key-sorted JSON; from_json(to_json()) reproduces the config exactly.
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  std::string canonical() const { return to_json().dump(); }

  /// Range checks; throws ConfigError.
  void validate() const;
  /// Delta grid lo, lo+step, ..., up to hi.
  std::vector<double> delta_grid() const;
};

}  // namespace cogrowth
