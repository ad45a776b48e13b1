// cogrowth: one subcommand per experiment. Every output starts with a
// provenance header (version, canonical config, seed).

#include <algorithm>
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>

#include "cogrowth/cayley.hpp"
#include "cogrowth/config.hpp"
#include "cogrowth/extrapolate.hpp"
#include "cogrowth/flatperm.hpp"
#include "cogrowth/metric.hpp"
#include "cogrowth/series.hpp"
#include "cogrowth/spectral.hpp"

#ifndef COGROWTH_VERSION
#define COGROWTH_VERSION "unknown"
#endif

namespace {

using namespace cogrowth;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitNonConvergence = 4;

const std::vector<std::string> kTable3Groups{"thompson", "bs:1:2", "bs:1:3", "bs:2:2", "bs:2:3", "bs:3:5", "zwrz"};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

nlohmann::ordered_json provenance(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["version"] = COGROWTH_VERSION;
  j["config"] = cfg.to_json();
  j["seed"] = cfg.seed;
  return j;
}

void csv_header(const RunConfig& cfg, std::ostream& out) {
  out << "# cogrowth " << COGROWTH_VERSION << '\n';
  out << "# config " << cfg.canonical() << '\n';
  out << "# seed " << cfg.seed << '\n';
}

BuildLimits limits(const RunConfig& cfg) { return {cfg.max_vertices, cfg.max_key_bytes}; }

PowerOptions power_options(const RunConfig& cfg) {
  PowerOptions o;
  o.tol = cfg.tolerance;
  o.max_iterations = cfg.max_iterations;
  return o;
}

// ------------------------------------------------------------------ series

int cmd_series(const RunConfig& cfg) {
  const Group g(GroupId::parse(cfg.group));
  const auto c = count_cogrowth(g, cfg.max_len, cfg.max_vertices);
  const auto r = count_returns(g, cfg.max_len, cfg.max_vertices);
  Output out(cfg.output);
  csv_header(cfg, out.stream());
  out.stream() << "n,cogrowth,returns\n";
  for (std::size_t n = 0; n < c.size(); ++n) out.stream() << n << ',' << c.coefficients[n] << ',' << r.coefficients[n] << '\n';
  return 0;
}

int cmd_table3(const RunConfig& cfg) {
  std::vector<Series> columns;
  for (const auto& name : cfg.groups.empty() ? kTable3Groups : cfg.groups)
    columns.push_back(count_cogrowth(Group(GroupId::parse(name)), cfg.max_len, cfg.max_vertices));
  Output out(cfg.output);
  csv_header(cfg, out.stream());
  write_series_table(columns, out.stream());
  return 0;
}

// ------------------------------------------------------------------ bounds

int cmd_bound(const RunConfig& cfg) {
  const Group g(GroupId::parse(cfg.group));
  if (cfg.vertices > cfg.max_vertices)
    throw BudgetExceeded("bound: " + std::to_string(cfg.vertices) + " vertices exceed the budget of " +
                         std::to_string(cfg.max_vertices));
  const bool reduced = cfg.kind == "H";
  const auto graph = reduced ? build_H(g, cfg.vertices, limits(cfg)) : build_G(g, cfg.vertices, limits(cfg));
  const int period = classify_period(g.id());
  const auto checkpoints =
      geometric_checkpoints(std::min<std::size_t>(cfg.first_checkpoint, graph.size()), graph.size(), cfg.per_decade);
  const auto ladder = eigen_ladder(graph, checkpoints, period, power_options(cfg));

  Output out(cfg.output);
  csv_header(cfg, out.stream());
  write_ladder_csv(ladder, out.stream());

  // Small prefixes can have a defective dominant eigenvalue, where the power
  // method stalls; those rows keep their certified value and are only counted.
  const auto& last = ladder.back();
  const bool converged = last.converged;
  const auto flagged = std::count_if(ladder.begin(), ladder.end(), [](const LadderPoint& p) { return !p.converged; });
  nlohmann::ordered_json s;
  s["provenance"] = provenance(cfg);
  s["group"] = g.id().to_string();
  s["kind"] = cfg.kind;
  s["quantity"] = reduced ? "alpha" : "rho";
  s["vertices"] = graph.size();
  s["covered_radius"] = graph.covered_radius;
  s["period"] = period;
  s["certified"] = last.certified;
  s["rayleigh"] = last.rayleigh;
  s["converged"] = converged;
  s["unconverged_checkpoints"] = flagged;
  if (reduced) {
    const int k = g.alphabet().generators();
    // With no cogrowth signal the free-group value 2 sqrt(2k-1) still holds.
    s["rho_lower"] = last.certified > 0.0 ? transfer_rho(last.certified, k) : 2.0 * std::sqrt(2.0 * k - 1.0);
  }
  if (cfg.summary.empty()) {
    std::cerr << s.dump(2) << '\n';
  } else {
    Output summary(cfg.summary);
    summary.stream() << s.dump(2) << '\n';
  }
  return converged ? 0 : kExitNonConvergence;
}

int cmd_lemma5(const RunConfig& cfg) {
  const Group g(GroupId::parse(cfg.group));
  const auto graph_g = build_G(g, cfg.vertices, limits(cfg));
  const auto graph_h = build_H_over_G(graph_g);
  const int period = classify_period(g.id());
  const auto rho = dominant_eigenvalue(graph_g, period, power_options(cfg));
  const auto alpha = dominant_eigenvalue(graph_h, period, power_options(cfg));
  const double q = 2.0 * g.alphabet().generators() - 1.0;
  const bool applies = alpha.value >= std::sqrt(q);
  const double bound = applies ? (alpha.value * alpha.value + q) / alpha.value : 0.0;
  const bool holds = !applies || rho.value <= bound + 1e-9;

  nlohmann::ordered_json s;
  s["provenance"] = provenance(cfg);
  s["group"] = g.id().to_string();
  s["vertices"] = graph_g.size();
  s["reduced_states"] = graph_h.size();
  s["rho_N"] = rho.value;
  s["alpha_N"] = alpha.value;
  s["applies"] = applies;
  s["bound"] = bound;
  s["holds"] = holds;
  Output out(cfg.output);
  out.stream() << s.dump(2) << '\n';
  if (!rho.converged || !alpha.converged) return kExitNonConvergence;
  return holds ? 0 : kExitFailure;
}

// ------------------------------------------------------------- extrapolate

std::vector<Point> read_input(const RunConfig& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw ConfigError("cannot open input '" + cfg.input + "'");
  return read_points_csv(in, cfg.x_column, cfg.y_column);
}

int cmd_extrapolate(const RunConfig& cfg) {
  const auto points = read_input(cfg);
  nlohmann::ordered_json j;
  j["provenance"] = provenance(cfg);
  if (cfg.form == "ladder") {
    const auto grid = cfg.delta_grid();
    const auto fit = scan_delta(points, grid, cfg.band_fraction);
    j["fit"] = fit_to_json(fit, digest(points));
    if (!cfg.grid_output.empty()) {
      Output grid_out(cfg.grid_output);
      write_grid_csv(fit, grid_out.stream());
    }
  } else {
    j["input_digest"] = digest(points);
    j["fits"] = nlohmann::ordered_json::array();
    for (double delta : cfg.escape_deltas) {
      const auto f = fit_escape(points, delta);
      j["fits"].push_back({{"delta", delta}, {"A", f.a}, {"b", f.b}, {"r_squared", f.r_squared}});
    }
  }
  Output out(cfg.output);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- sampling

int cmd_flatperm(const RunConfig& cfg) {
  const Group g(GroupId::parse(cfg.group));
  FlatPermOptions o;
  o.max_len = cfg.max_len;
  o.tours = cfg.tours;
  o.seed = cfg.seed;
  o.workers = cfg.workers;
  o.prune_below = cfg.prune_below;
  o.enrich_above = cfg.enrich_above;
  o.copies = cfg.copies;
  std::unique_ptr<HistogramEstimate> resume;
  if (!cfg.resume.empty()) {
    std::ifstream in(cfg.resume);
    if (!in) throw ConfigError("cannot open resume file '" + cfg.resume + "'");
    resume = std::make_unique<HistogramEstimate>(load_histogram(in));
  }
  const auto h = run_flatperm(g, o, resume.get());
  Output out(cfg.output);
  csv_header(cfg, out.stream());
  write_histogram_csv(h, out.stream());
  if (!cfg.save.empty()) {
    Output save(cfg.save);
    save_histogram(h, save.stream());
  }
  return 0;
}

int cmd_escape(const RunConfig& cfg) {
  const Group g(GroupId::parse(cfg.group));
  const auto points = run_simple_sampling(g, cfg.words, cfg.length, cfg.seed);
  Output out(cfg.output);
  csv_header(cfg, out.stream());
  write_escape_csv(points, out.stream());

  // Fit <l> = A n + b n^delta on the upper half of the doubling grid.
  std::vector<Point> tail;
  for (const auto& p : points)
    if (p.n * p.n >= cfg.length) tail.push_back({static_cast<double>(p.n), p.mean});
  if (tail.size() >= 3) {
    out.stream() << "# fit n>=" << static_cast<std::size_t>(tail.front().x) << ": delta,A,b\n";
    for (double delta : cfg.escape_deltas) {
      const auto f = fit_escape(tail, delta);
      out.stream() << "# " << delta << ',' << f.a << ',' << f.b << '\n';
    }
  }
  return 0;
}

// ------------------------------------------------------------------ metric

int cmd_metric_check(const RunConfig& cfg) {
  const Group g(GroupId::parse(cfg.group));
  if (!g.has_metric()) throw MetricUnavailable("metric-check: no word metric for " + cfg.group);
  const auto table = bfs_oracle(g, static_cast<std::uint32_t>(cfg.radius), cfg.max_vertices);
  const auto mismatches = check_metric_against_oracle(g, table);
  Output out(cfg.output);
  csv_header(cfg, out.stream());
  out.stream() << "radius,sphere_size\n";
  const auto spheres = table.sphere_sizes();
  for (std::size_t r = 0; r < spheres.size(); ++r) out.stream() << r << ',' << spheres[r] << '\n';
  out.stream() << "# mismatches " << mismatches.size() << '\n';
  for (const auto& m : mismatches)
    out.stream() << "# " << to_string(m.witness, g.alphabet()) << " bfs=" << m.bfs_distance
                 << " metric=" << m.metric_value << '\n';
  return mismatches.empty() ? 0 : kExitFailure;
}

int run(RunConfig cfg) {
  cfg.validate();
  if (cfg.subcommand == "series") return cmd_series(cfg);
  if (cfg.subcommand == "table3") return cmd_table3(cfg);
  if (cfg.subcommand == "bound") return cmd_bound(cfg);
  if (cfg.subcommand == "lemma5") return cmd_lemma5(cfg);
  if (cfg.subcommand == "extrapolate") return cmd_extrapolate(cfg);
  if (cfg.subcommand == "flatperm") return cmd_flatperm(cfg);
  if (cfg.subcommand == "escape") return cmd_escape(cfg);
  return cmd_metric_check(cfg);
}

// Integer flags accept 1e6-style values.
CLI::Option* add_count(CLI::App* app, const std::string& name, std::uint64_t& target, const std::string& help) {
  return app->add_option_function<double>(
      name,
      [&target, name](double v) {
        if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19) throw ConfigError(name + " must be a whole number");
        target = static_cast<std::uint64_t>(v);
      },
      help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cogrowth, return and escape-rate experiments on finitely generated groups"};
  app.set_version_flag("--version", COGROWTH_VERSION);
  app.require_subcommand(1);
  RunConfig cfg;
  bool print_config = false;
  app.add_flag("--print-config", print_config, "Print the canonical config JSON instead of running");
  std::string replay_path;

  auto common = [&](CLI::App* sub, bool needs_group) {
    if (needs_group) sub->add_option("group", cfg.group, "f2, z2, bs:P:Q, thompson, zwrz, zwrf2, zwrzwrz")->required();
    sub->add_option("-o,--output", cfg.output, "Output path ('-' for stdout)");
    add_count(sub, "--max-vertices", cfg.max_vertices, "Vertex budget");
    add_count(sub, "--max-key-bytes", cfg.max_key_bytes, "Key-table budget in bytes");
  };

  auto* series = app.add_subcommand("series", "Exact cogrowth and return series");
  common(series, true);
  series->add_option("--max-len", cfg.max_len, "Largest length n");

  auto* table3 = app.add_subcommand("table3", "Cogrowth series of several groups side by side");
  common(table3, false);
  table3->add_option("--max-len", cfg.max_len, "Largest length n");
  table3->add_option("--groups", cfg.groups, "Groups (default: the seven table groups)");

  auto* bound = app.add_subcommand("bound", "Eigenvalue ladder with certified lower bounds");
  common(bound, true);
  add_count(bound, "--vertices", cfg.vertices, "Graph size N");
  bound->add_option("--kind", cfg.kind, "G (Cayley ball) or H (reduced paths)");
  add_count(bound, "--from", cfg.first_checkpoint, "Smallest ladder checkpoint");
  bound->add_option("--per-decade", cfg.per_decade, "Checkpoints per factor of 10");
  bound->add_option("--tol", cfg.tolerance, "Residual tolerance");
  add_count(bound, "--max-iterations", cfg.max_iterations, "Power-iteration cap");
  bound->add_option("--summary", cfg.summary, "JSON summary path (default: stderr)");

  auto* lemma5 = app.add_subcommand("lemma5", "Compare rho_N with (alpha_N^2+3)/alpha_N on one vertex set");
  common(lemma5, true);
  add_count(lemma5, "--vertices", cfg.vertices, "Graph size N");
  lemma5->add_option("--tol", cfg.tolerance, "Residual tolerance");

  auto* extrapolate = app.add_subcommand("extrapolate", "Fit a ladder or escape data");
  extrapolate->add_option("-o,--output", cfg.output, "Output path");
  extrapolate->add_option("input", cfg.input, "CSV input")->required();
  extrapolate->add_option("--form", cfg.form, "ladder or escape");
  extrapolate->add_option("--x", cfg.x_column, "x column");
  extrapolate->add_option("--y", cfg.y_column, "y column");
  extrapolate->add_option("--delta-lo", cfg.delta_lo, "Smallest delta on the grid");
  extrapolate->add_option("--delta-hi", cfg.delta_hi, "Largest delta on the grid");
  extrapolate->add_option("--delta-step", cfg.delta_step, "Grid spacing");
  extrapolate->add_option("--band", cfg.band_fraction, "R^2 band fraction");
  extrapolate->add_option("--escape-deltas", cfg.escape_deltas, "Exponents for <l> ~ A n + b n^delta");
  extrapolate->add_option("--grid", cfg.grid_output, "Write the (delta, R^2, alpha_inf) grid here");

  auto* flatperm = app.add_subcommand("flatperm", "Flat-histogram estimate of c_{n,l}");
  common(flatperm, true);
  flatperm->add_option("--max-len", cfg.max_len, "Largest word length");
  add_count(flatperm, "--tours", cfg.tours, "Number of tours");
  add_count(flatperm, "--seed", cfg.seed, "RNG seed");
  flatperm->add_option("--workers", cfg.workers, "Parallel workers");
  flatperm->add_option("--prune-below", cfg.prune_below, "Prune when weight ratio falls below this");
  flatperm->add_option("--enrich-above", cfg.enrich_above, "Enrich when weight ratio exceeds this");
  flatperm->add_option("--copies", cfg.copies, "Copies made on enrichment");
  flatperm->add_option("--resume", cfg.resume, "Histogram file to continue from");
  flatperm->add_option("--save", cfg.save, "Write a resumable histogram file");

  auto* escape = app.add_subcommand("escape", "Mean geodesic length of random words");
  common(escape, true);
  add_count(escape, "--words", cfg.words, "Number of words");
  add_count(escape, "--len", cfg.length, "Word length");
  add_count(escape, "--seed", cfg.seed, "RNG seed");
  escape->add_option("--escape-deltas", cfg.escape_deltas, "Exponents for <l> ~ A n + b n^delta");

  auto* metric = app.add_subcommand("metric-check", "Compare the word metric with breadth-first search");
  common(metric, true);
  metric->add_option("--radius", cfg.radius, "Ball radius");

  auto* replay = app.add_subcommand("replay", "Run a saved config JSON");
  replay->add_option("config", replay_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (replay->parsed()) {
      std::ifstream in(replay_path);
      if (!in) throw ConfigError("cannot open config '" + replay_path + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
      cfg = RunConfig::from_json(j);
    } else {
      cfg.subcommand = app.get_subcommands().front()->get_name();
    }
    if (print_config) {
      cfg.validate();
      std::cout << cfg.to_json().dump(2) << '\n';
      return 0;
    }
    return run(cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {  // includes ConfigError, DegenerateFit
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const MetricUnavailable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
