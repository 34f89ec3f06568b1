#include "tailcord/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>

#include "tailcord/errors.hpp"

namespace tailcord {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys{
    "family", "theta",       "nu",     "gamma",  "rho",       "n",
    "replicates", "k_list",  "seed",   "grid",   "quad",      "output_dir",
    "threads", "surface",    "threshold_u", "y_grid", "n_list", "tail_samples"};

std::optional<double> optional_number(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  return doc[key].get<double>();
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

double quantile_of(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double rescale_factor(const ExperimentConfig& config) {
  return config.model.family() == Family::GaussianBivariate ? 1.0
                                                            : static_cast<double>(config.n);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n < 2) throw ValidationError("config: n must be >= 2");
  if (replicates < 1) throw ValidationError("config: replicates must be >= 1");
  if (k_list.empty()) throw ValidationError("config: k_list is empty");
  for (std::size_t k : k_list) {
    if (k < 1 || k + 1 > n) {
      throw ValidationError("config: k=" + std::to_string(k) + " outside [1, n-1]");
    }
  }
  if (grid) {
    if (grid->steps < 1 || grid->v1_max < grid->v1_min || grid->v2_max < grid->v2_min) {
      throw ValidationError("config: invalid grid");
    }
  }
  if (tail_samples < 1) throw ValidationError("config: tail_samples must be >= 1");
  quad.validate();
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  for (const auto& item : doc.items()) {
    if (!kKnownKeys.contains(item.key())) throw ValidationError("config: unknown key " + item.key());
  }
  ExperimentConfig c;
  try {
    if (doc.contains("family")) {
      c.model = ModelSpec::from_parameters(family_from_string(doc["family"].get<std::string>()),
                                           optional_number(doc, "theta"),
                                           optional_number(doc, "nu"),
                                           optional_number(doc, "gamma"),
                                           optional_number(doc, "rho"));
    }
    if (doc.contains("n")) c.n = doc["n"].get<std::size_t>();
    if (doc.contains("replicates")) c.replicates = doc["replicates"].get<std::size_t>();
    if (doc.contains("k_list")) c.k_list = doc["k_list"].get<std::vector<std::size_t>>();
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("grid")) {
      const json& g = doc["grid"];
      if (g.is_string()) {
        if (g.get<std::string>() != "sample-points") {
          throw ValidationError("config: grid must be \"sample-points\" or an object");
        }
        c.grid.reset();
      } else {
        c.grid = GridSpec{g.at("v1_min").get<double>(), g.at("v1_max").get<double>(),
                          g.at("v2_min").get<double>(), g.at("v2_max").get<double>(),
                          g.at("steps").get<std::size_t>()};
      }
    }
    if (doc.contains("quad")) {
      const json& q = doc["quad"];
      if (q.contains("abs_tol")) c.quad.abs_tol = q["abs_tol"].get<double>();
      if (q.contains("rel_tol")) c.quad.rel_tol = q["rel_tol"].get<double>();
      if (q.contains("max_subdivisions")) {
        c.quad.max_subdivisions = q["max_subdivisions"].get<std::size_t>();
      }
      if (q.contains("substitution")) {
        const auto s = q["substitution"].get<std::string>();
        if (s == "rational") {
          c.quad.substitution = Substitution::RationalT;
        } else if (s == "reciprocal") {
          c.quad.substitution = Substitution::ReciprocalU;
        } else {
          throw ValidationError("config: substitution must be rational or reciprocal");
        }
      }
    }
    if (doc.contains("output_dir")) c.output_dir = doc["output_dir"].get<std::string>();
    if (doc.contains("threads")) c.threads = doc["threads"].get<unsigned>();
    if (doc.contains("surface")) {
      c.surface = surface_source_from_string(doc["surface"].get<std::string>());
    }
    if (doc.contains("threshold_u")) c.threshold_u = doc["threshold_u"].get<double>();
    if (doc.contains("y_grid")) c.y_grid = doc["y_grid"].get<std::vector<double>>();
    if (doc.contains("n_list")) c.n_list = doc["n_list"].get<std::vector<double>>();
    if (doc.contains("tail_samples")) c.tail_samples = doc["tail_samples"].get<std::size_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path.string());
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

SurfaceSource surface_source_from_string(std::string_view name) {
  if (name == "limit") return SurfaceSource::Limit;
  if (name == "oracle") return SurfaceSource::Oracle;
  if (name == "self") return SurfaceSource::Self;
  throw ValidationError("unknown surface source: " + std::string(name));
}

std::string_view to_string(SurfaceSource source) {
  switch (source) {
    case SurfaceSource::Limit: return "limit";
    case SurfaceSource::Oracle: return "oracle";
    case SurfaceSource::Self: return "self";
  }
  return "limit";
}

void write_replicates_csv(std::ostream& out, const std::vector<ReplicateRecord>& records) {
  out << "replicate,k,v1,v2\n";
  for (const ReplicateRecord& r : records) {
    for (const ConcomitantSplit& s : r.splits) {
      out << r.replicate_index << ',' << s.k << ',' << format_double(s.v1) << ','
          << format_double(s.v2) << '\n';
    }
  }
}

void write_surface_csv(std::ostream& out, const LimitSurface& surface) {
  out << "v1,v2,cdf,quad_error\n";
  for (std::size_t i = 0; i < surface.grid.size(); ++i) {
    out << format_double(surface.grid[i].first) << ',' << format_double(surface.grid[i].second)
        << ',' << format_double(surface.values[i]) << ',' << format_double(surface.errors[i])
        << '\n';
  }
}

void write_errors_csv(std::ostream& out, const ValidationReport& report) {
  out << "v1,v2,empirical,theoretical,abs_error\n";
  for (const PointError& p : report.point_errors) {
    out << format_double(p.v1) << ',' << format_double(p.v2) << ',' << format_double(p.empirical)
        << ',' << format_double(p.theoretical) << ',' << format_double(p.abs_error) << '\n';
  }
}

void write_norming_csv(std::ostream& out, const std::vector<NormingConstants>& rows) {
  out << "n,rho,a_n,b_n,a_tilde_n,b_tilde_n,a_tilde_nE,b_tilde_nE\n";
  for (const NormingConstants& c : rows) {
    out << format_double(c.n) << ',' << format_double(c.rho) << ',' << format_double(c.a_n) << ','
        << format_double(c.b_n) << ',' << format_double(c.a_tilde_n) << ','
        << format_double(c.b_tilde_n) << ',' << format_double(c.a_tilde_nE) << ','
        << format_double(c.b_tilde_nE) << '\n';
  }
}

void write_gauss_tail_csv(std::ostream& out, const GaussianTailReport& report) {
  out << "y,empirical,limit,mills,rel_gap\n";
  for (const GaussianTailPoint& p : report.points) {
    out << format_double(p.y) << ',' << format_double(p.empirical) << ','
        << format_double(p.limit) << ',' << format_double(p.mills) << ','
        << format_double(p.rel_gap) << '\n';
  }
}

void write_ksweep_csv(std::ostream& out, const std::vector<KSweepRow>& rows) {
  out << "k,v1_median,v2_median,v2_q90,max_abs_error\n";
  for (const KSweepRow& r : rows) {
    out << r.k << ',' << format_double(r.v1_median) << ',' << format_double(r.v2_median) << ','
        << format_double(r.v2_q90) << ',' << format_double(r.max_abs_error) << '\n';
  }
}

json report_to_json(const ValidationReport& report) {
  json model{{"family", std::string(to_string(report.model.family()))}};
  if (report.model.theta()) model["theta"] = *report.model.theta();
  if (report.model.nu()) model["nu"] = *report.model.nu();
  if (report.model.gamma()) model["gamma"] = *report.model.gamma();
  if (report.model.rho()) model["rho"] = *report.model.rho();

  auto curve = [](const std::vector<std::pair<double, double>>& c) {
    json arr = json::array();
    for (const auto& [v, e] : c) arr.push_back({v, e});
    return arr;
  };
  json points = json::array();
  for (const PointError& p : report.point_errors) {
    points.push_back({p.v1, p.v2, p.empirical, p.theoretical, p.abs_error});
  }
  return json{{"model", model},
              {"n", report.n},
              {"k", report.k},
              {"replicate_count", report.replicate_count},
              {"seed", report.seed},
              {"max_abs_error", report.max_abs_error},
              {"mean_abs_error", report.mean_abs_error},
              {"quartiles", report.quartiles},
              {"marginal_l1_v1", curve(report.marginal_l1_v1)},
              {"marginal_l1_v2", curve(report.marginal_l1_v2)},
              {"point_errors", points}};
}

std::vector<ReplicateRecord> simulate(const ExperimentConfig& config) {
  config.validate();
  ReplicateOptions opts;
  opts.n = config.n;
  opts.k_list = config.k_list;
  opts.replicate_count = config.replicates;
  opts.master_seed = config.seed;
  opts.parallelism_hint = config.threads;
  return run_replicates(config.model, opts);
}

SurfaceProvider make_provider(const ExperimentConfig& config, std::size_t k,
                              const std::vector<ReplicateRecord>* records) {
  switch (config.surface) {
    case SurfaceSource::Limit:
      return [config, k](const std::vector<Point2>& pts) {
        return limit_surface(config.model, k, pts, config.quad, config.threads).values;
      };
    case SurfaceSource::Oracle:
      return [config, k](const std::vector<Point2>& pts) {
        const double scale = rescale_factor(config);
        std::vector<Point2> raw;
        raw.reserve(pts.size());
        for (const auto& [a, b] : pts) raw.emplace_back(a * scale, b * scale);
        return finite_sample_surface(config.model, config.n, k, raw, config.quad, config.threads)
            .values;
      };
    case SurfaceSource::Self: {
      if (records == nullptr) throw ValidationError("self surface needs simulated records");
      auto points = std::make_shared<const std::vector<Point2>>(rescaled_splits(*records, k));
      return [points](const std::vector<Point2>& pts) { return ecdf_bivariate(*points, pts); };
    }
  }
  throw ValidationError("unknown surface source");
}

std::vector<Point2> config_grid(const ExperimentConfig& config, std::size_t k) {
  if (config.grid) {
    const GridSpec& g = *config.grid;
    return rectangular_grid(g.v1_min, g.v1_max, g.v2_min, g.v2_max, g.steps);
  }
  return rescaled_splits(simulate(config), k);
}

ValidationReport validate_experiment(const ExperimentConfig& config,
                                     const std::vector<ReplicateRecord>& records, std::size_t k) {
  return validate_against_limit(records, make_provider(config, k, &records), k);
}

std::vector<KSweepRow> ksweep(const ExperimentConfig& config,
                              const std::vector<ReplicateRecord>& records) {
  std::vector<KSweepRow> rows;
  for (std::size_t k : config.k_list) {
    const std::vector<Point2> pts = rescaled_splits(records, k);
    std::vector<double> v1s;
    std::vector<double> v2s;
    for (const auto& [a, b] : pts) {
      v1s.push_back(a);
      v2s.push_back(b);
    }
    KSweepRow row;
    row.k = k;
    row.v1_median = median_of(v1s);
    row.v2_median = median_of(v2s);
    row.v2_q90 = quantile_of(v2s, 0.9);
    row.max_abs_error = validate_experiment(config, records, k).max_abs_error;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tailcord
