#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailcord/asymptotics.hpp"
#include "tailcord/concomitants.hpp"
#include "tailcord/empirics.hpp"
#include "tailcord/gaussian_norming.hpp"
#include "tailcord/models.hpp"

namespace tailcord {

struct GridSpec {
  double v1_min = 0.0;
  double v1_max = 0.0;
  double v2_min = 0.0;
  double v2_max = 0.0;
  std::size_t steps = 0;
};

/// What validate compares the empirical cdf with.
enum class SurfaceSource { Limit, Oracle, Self };

struct ExperimentConfig {
  ModelSpec model = ModelSpec::survival_clayton(2.0);
  std::size_t n = 10000;
  std::size_t replicates = 1000;
  std::vector<std::size_t> k_list{10};
  std::uint64_t seed = 20240601;
  std::optional<GridSpec> grid;  // empty means the sample points
  QuadratureConfig quad;
  std::filesystem::path output_dir = ".";
  unsigned threads = 1;
  SurfaceSource surface = SurfaceSource::Limit;

  // gaussian subcommand
  double threshold_u = 20.0;
  std::vector<double> y_grid;
  std::vector<double> n_list{1e3, 1e4, 1e5, 1e6};
  std::size_t tail_samples = 1000000;

  void validate() const;
};

/// Reads a flat JSON object. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

SurfaceSource surface_source_from_string(std::string_view name);
std::string_view to_string(SurfaceSource source);

// Writers. Column order is fixed.
void write_replicates_csv(std::ostream& out, const std::vector<ReplicateRecord>& records);
void write_surface_csv(std::ostream& out, const LimitSurface& surface);
void write_errors_csv(std::ostream& out, const ValidationReport& report);
void write_norming_csv(std::ostream& out, const std::vector<NormingConstants>& rows);
void write_gauss_tail_csv(std::ostream& out, const GaussianTailReport& report);
nlohmann::json report_to_json(const ValidationReport& report);

struct KSweepRow {
  std::size_t k = 0;
  double v1_median = 0.0;
  double v2_median = 0.0;
  double v2_q90 = 0.0;
  double max_abs_error = 0.0;
};
void write_ksweep_csv(std::ostream& out, const std::vector<KSweepRow>& rows);

/// Replicates for the config (raw working scale).
std::vector<ReplicateRecord> simulate(const ExperimentConfig& config);

/// Theory at rescaled points, from the configured surface source.
SurfaceProvider make_provider(const ExperimentConfig& config, std::size_t k,
                              const std::vector<ReplicateRecord>* records = nullptr);

/// Grid per config: rectangular, or the rescaled sample points for k.
std::vector<Point2> config_grid(const ExperimentConfig& config, std::size_t k);

ValidationReport validate_experiment(const ExperimentConfig& config,
                                     const std::vector<ReplicateRecord>& records, std::size_t k);

std::vector<KSweepRow> ksweep(const ExperimentConfig& config,
                              const std::vector<ReplicateRecord>& records);

}  // namespace tailcord
