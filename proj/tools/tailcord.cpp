// Command-line front end: simulate, limit-surface, finite-oracle, validate,
// ksweep and gaussian. Every subcommand writes into --output-dir.

#include <CLI11.hpp>

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tailcord/errors.hpp"
#include "tailcord/experiment.hpp"

namespace {

using namespace tailcord;

struct Overrides {
  std::string config_path;
  std::optional<std::string> family;
  std::optional<double> theta, nu, gamma, rho;
  std::optional<std::size_t> n, replicates, tail_samples;
  std::vector<std::size_t> k_list;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<unsigned> threads;
  std::optional<std::string> surface;
  std::vector<double> grid;
  std::optional<std::size_t> steps;
  std::optional<double> abs_tol, rel_tol, threshold_u;
  std::vector<double> y_grid, n_list;
};

void add_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config_path, "JSON config file");
  cmd.add_option("--family", o.family, "survival-clayton | logistic | gaussian");
  cmd.add_option("--theta", o.theta);
  cmd.add_option("--nu", o.nu);
  cmd.add_option("--gamma", o.gamma);
  cmd.add_option("--rho", o.rho);
  cmd.add_option("-n,--n", o.n, "sample size");
  cmd.add_option("-R,--replicates", o.replicates);
  cmd.add_option("-k,--k", o.k_list, "one or more k values")->delimiter(',');
  cmd.add_option("--seed", o.seed);
  cmd.add_option("-o,--output-dir", o.output_dir);
  cmd.add_option("--threads", o.threads, "worker threads (env TAILCORD_THREADS)");
  cmd.add_option("--surface", o.surface, "limit | oracle | self");
  cmd.add_option("--grid", o.grid, "v1_min,v1_max,v2_min,v2_max")->delimiter(',')->expected(4);
  cmd.add_option("--steps", o.steps, "grid points per axis");
  cmd.add_option("--abs-tol", o.abs_tol);
  cmd.add_option("--rel-tol", o.rel_tol);
  cmd.add_option("--threshold-u", o.threshold_u);
  cmd.add_option("--y", o.y_grid, "y values for the Gaussian tail check")->delimiter(',');
  cmd.add_option("--n-list", o.n_list, "n values for the norming table")->delimiter(',');
  cmd.add_option("--tail-samples", o.tail_samples);
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  if (o.family || o.theta || o.nu || o.gamma || o.rho) {
    const Family family = o.family ? family_from_string(*o.family) : c.model.family();
    auto keep = [&](std::optional<double> flag, std::optional<double> current) {
      return flag ? flag : (o.family ? std::nullopt : current);
    };
    std::optional<double> nu = keep(o.nu, c.model.nu());
    if (family == Family::SurvivalClaytonPareto && !nu) nu = 1.0;
    c.model = ModelSpec::from_parameters(family, keep(o.theta, c.model.theta()), nu,
                                         keep(o.gamma, c.model.gamma()),
                                         keep(o.rho, c.model.rho()));
  }
  if (o.n) c.n = *o.n;
  if (o.replicates) c.replicates = *o.replicates;
  if (!o.k_list.empty()) c.k_list = o.k_list;
  if (o.seed) c.seed = *o.seed;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.threads) {
    c.threads = *o.threads;
  } else if (const char* env = std::getenv("TAILCORD_THREADS")) {
    c.threads = static_cast<unsigned>(std::stoul(env));
  }
  if (o.surface) c.surface = surface_source_from_string(*o.surface);
  if (!o.grid.empty()) {
    c.grid = GridSpec{o.grid[0], o.grid[1], o.grid[2], o.grid[3], o.steps.value_or(5)};
  } else if (o.steps && c.grid) {
    c.grid->steps = *o.steps;
  }
  if (o.abs_tol) c.quad.abs_tol = *o.abs_tol;
  if (o.rel_tol) c.quad.rel_tol = *o.rel_tol;
  if (o.threshold_u) c.threshold_u = *o.threshold_u;
  if (!o.y_grid.empty()) c.y_grid = o.y_grid;
  if (!o.n_list.empty()) c.n_list = o.n_list;
  if (o.tail_samples) c.tail_samples = *o.tail_samples;
  c.validate();
  return c;
}

std::ofstream open_output(const ExperimentConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.output_dir);
  const auto path = c.output_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::string& name) {
  out.flush();
  if (!out) throw Error("write failed: " + name);
}

int cmd_simulate(const ExperimentConfig& c) {
  const auto records = simulate(c);
  auto out = open_output(c, "replicates.csv");
  write_replicates_csv(out, records);
  finish(out, "replicates.csv");
  std::cout << "wrote " << records.size() << " replicates to "
            << (c.output_dir / "replicates.csv").string() << '\n';
  return 0;
}

int cmd_surface(const ExperimentConfig& c, bool oracle) {
  const std::size_t k = c.k_list.front();
  std::vector<Point2> grid = config_grid(c, k);
  LimitSurface surface;
  if (oracle) {
    // Grid axes are on the rescaled scale; the oracle works on the raw one.
    const double scale =
        c.model.family() == Family::GaussianBivariate ? 1.0 : static_cast<double>(c.n);
    std::vector<Point2> raw;
    for (const auto& [a, b] : grid) raw.emplace_back(a * scale, b * scale);
    surface = finite_sample_surface(c.model, c.n, k, raw, c.quad, c.threads);
    surface.grid = grid;
  } else {
    surface = limit_surface(c.model, k, grid, c.quad, c.threads);
  }
  const std::string name = oracle ? "oracle_cdf.csv" : "limit_cdf.csv";
  auto out = open_output(c, name);
  write_surface_csv(out, surface);
  finish(out, name);
  std::cout << "wrote " << surface.grid.size() << " points to " << (c.output_dir / name).string()
            << "; quadrature failures: " << surface.failures() << '\n';
  return surface.failures() == 0 ? 0 : 3;
}

int cmd_validate(const ExperimentConfig& c) {
  const auto records = simulate(c);
  const std::size_t k = c.k_list.front();
  const ValidationReport report = validate_experiment(c, records, k);
  auto json_out = open_output(c, "report.json");
  json_out << report_to_json(report).dump(2) << '\n';
  finish(json_out, "report.json");
  auto csv_out = open_output(c, "errors.csv");
  write_errors_csv(csv_out, report);
  finish(csv_out, "errors.csv");
  std::cout << "max_abs_error " << format_double(report.max_abs_error) << '\n'
            << "mean_abs_error " << format_double(report.mean_abs_error) << '\n';
  return 0;
}

int cmd_ksweep(const ExperimentConfig& c) {
  const auto records = simulate(c);
  const auto rows = ksweep(c, records);
  auto out = open_output(c, "ksweep.csv");
  write_ksweep_csv(out, rows);
  finish(out, "ksweep.csv");
  write_ksweep_csv(std::cout, rows);
  return 0;
}

int cmd_gaussian(const ExperimentConfig& c) {
  if (c.model.family() != Family::GaussianBivariate) {
    throw ValidationError("gaussian: model must be the Gaussian family (--family gaussian --rho R)");
  }
  const double rho = *c.model.rho();
  std::vector<NormingConstants> rows;
  for (double n : c.n_list) rows.push_back(norming_constants(n, rho));
  auto table = open_output(c, "norming.csv");
  write_norming_csv(table, rows);
  finish(table, "norming.csv");
  if (c.y_grid.empty()) return 0;
  const GaussianTailReport report =
      validate_gaussian_limit(rho, c.threshold_u, c.y_grid, c.tail_samples, {c.seed, 0});
  auto tail = open_output(c, "gauss_tail.csv");
  write_gauss_tail_csv(tail, report);
  finish(tail, "gauss_tail.csv");
  write_gauss_tail_csv(std::cout, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concomitant maxima under bivariate extremal dependence"};
  app.require_subcommand(1);
  Overrides o;
  struct Command {
    const char* name;
    const char* help;
  };
  const std::vector<Command> commands{
      {"simulate", "simulate replicates and write replicates.csv"},
      {"limit-surface", "evaluate the joint limit cdf and write limit_cdf.csv"},
      {"finite-oracle", "evaluate the exact finite-sample cdf and write oracle_cdf.csv"},
      {"validate", "compare the empirical cdf with theory; write report.json and errors.csv"},
      {"ksweep", "summaries across k; write ksweep.csv"},
      {"gaussian", "norming constants and the Gaussian tail check"}};
  for (const Command& c : commands) add_options(*app.add_subcommand(c.name, c.help), o);

  CLI11_PARSE(app, argc, argv);
  try {
    const ExperimentConfig config = resolve(o);
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "simulate") return cmd_simulate(config);
    if (name == "limit-surface") return cmd_surface(config, false);
    if (name == "finite-oracle") return cmd_surface(config, true);
    if (name == "validate") return cmd_validate(config);
    if (name == "ksweep") return cmd_ksweep(config);
    return cmd_gaussian(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
