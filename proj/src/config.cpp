#include "cogrowth/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cogrowth {

namespace {

// One list of (name, member) pairs drives both directions of the JSON
// mapping, so the two cannot drift apart.
template <class Config, class F>
void each_field(Config& c, F&& f) {
  f("subcommand", c.subcommand);
  f("group", c.group);
  f("output", c.output);
  f("max_len", c.max_len);
  f("groups", c.groups);
  f("vertices", c.vertices);
  f("kind", c.kind);
  f("first_checkpoint", c.first_checkpoint);
  f("per_decade", c.per_decade);
  f("tolerance", c.tolerance);
  f("max_iterations", c.max_iterations);
  f("summary", c.summary);
  f("input", c.input);
  f("form", c.form);
  f("x_column", c.x_column);
  f("y_column", c.y_column);
  f("delta_lo", c.delta_lo);
  f("delta_hi", c.delta_hi);
  f("delta_step", c.delta_step);
  f("band_fraction", c.band_fraction);
  f("escape_deltas", c.escape_deltas);
  f("grid_output", c.grid_output);
  f("tours", c.tours);
  f("seed", c.seed);
  f("workers", c.workers);
  f("prune_below", c.prune_below);
  f("enrich_above", c.enrich_above);
  f("copies", c.copies);
  f("resume", c.resume);
  f("save", c.save);
  f("words", c.words);
  f("length", c.length);
  f("radius", c.radius);
  f("max_vertices", c.max_vertices);
  f("max_key_bytes", c.max_key_bytes);
}

const std::set<std::string> kSubcommands{"series", "table3",  "bound",  "lemma5",
                                         "extrapolate", "flatperm", "escape", "metric-check"};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("config: " + what);
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  each_field(*this, [&j](const char* name, const auto& value) { j[name] = value; });
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig c;
  std::set<std::string> known;
  each_field(c, [&](const char* name, auto& value) {
    known.insert(name);
    const auto it = j.find(name);
    if (it == j.end()) return;
    try {
      it->get_to(value);
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(std::string("config: field '") + name + "' has the wrong type");
    }
  });
  for (const auto& item : j.items())
    if (!known.contains(item.key())) throw ConfigError("config: unknown field '" + item.key() + "'");
  return c;
}

void RunConfig::validate() const {
  require(kSubcommands.contains(subcommand), "unknown subcommand '" + subcommand + "'");
  require(max_len >= 0 && max_len <= 4096, "max_len must lie in [0, 4096]");
  require(vertices >= 1, "vertices must be positive");
  require(kind == "G" || kind == "H", "kind must be G or H");
  require(first_checkpoint >= 1 && per_decade >= 1, "checkpoint grid needs first >= 1 and per_decade >= 1");
  require(tolerance > 0.0 && max_iterations >= 1, "tolerance and max_iterations must be positive");
  require(form == "ladder" || form == "escape", "form must be ladder or escape");
  require(delta_lo > 0.0 && delta_hi >= delta_lo && delta_step > 0.0, "delta grid needs 0 < lo <= hi, step > 0");
  require(band_fraction > 0.0 && band_fraction < 1.0, "band_fraction must lie in (0, 1)");
  require(std::all_of(escape_deltas.begin(), escape_deltas.end(), [](double d) { return d >= 0.0 && d < 1.0; }),
          "escape deltas must lie in [0, 1)");
  require(tours >= 1 && workers >= 1, "tours and workers must be positive");
  require(copies >= 2 && prune_below > 0.0 && enrich_above > prune_below,
          "need copies >= 2 and 0 < prune_below < enrich_above");
  require(words >= 2 && length >= 1, "escape needs words >= 2 and length >= 1");
  require(radius >= 0, "radius must be nonnegative");
  require(max_vertices >= 1 && max_key_bytes >= 1, "budgets must be positive");
}

std::vector<double> RunConfig::delta_grid() const {
  std::vector<double> grid;
  // Index-based steps avoid accumulating rounding error.
  const auto steps = static_cast<long>(std::floor((delta_hi - delta_lo) / delta_step + 1e-9));
  for (long i = 0; i <= steps; ++i) grid.push_back(delta_lo + static_cast<double>(i) * delta_step);
  return grid;
}

}  // namespace cogrowth
