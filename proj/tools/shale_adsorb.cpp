// shale-adsorb: command-line driver for the adsorbed-gas estimation pipeline.
//
// Stages: clean -> outliers -> fit -> validate, plus model comparison,
// reservoir estimation and heat-flow interpolation. Data goes to files in
// --output-dir; diagnostics go to stderr, filtered by SHALE_ADSORB_LOG
// (error, warn, info, debug; default info).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shale/io.hpp"

namespace fs = std::filesystem;

namespace {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
  static const Level level = [] {
    const char* env = std::getenv("SHALE_ADSORB_LOG");
    const std::string v = env ? env : "";
    if (v == "error" || v == "quiet") return Level::Error;
    if (v == "warn") return Level::Warn;
    if (v == "debug") return Level::Debug;
    return Level::Info;
  }();
  return level;
}

void log(Level level, const std::string& msg) {
  if (level > log_level()) return;
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << msg << '\n';
}

struct Options {
  std::string input;
  std::string output_dir = ".";
  std::string kind = "pl";
  std::string model;
  std::size_t k = shale::kDefaultNeighbors;
  double threshold = shale::kDefaultOutlierThreshold;
  std::uint64_t seed = 20190101;
  double ci_level = shale::kDefaultCiLevel;
  std::string scenario = "overall";
  std::optional<double> test_fraction;
  std::size_t reps = 5;
  bool invtemp_kelvin = false;
  bool skip_preprocess = false;
  // estimate
  bool paper_coefficients = false;
  std::string pl_model_path;
  std::string vl_model_path;
  // idw
  double idw_power = shale::kDefaultIdwPower;
  double min_depth = shale::kShallowSectionCutoffM;
  std::optional<std::size_t> nearest;
  std::vector<double> query;
  std::vector<double> bbox;
  double step = 0.5;
};

class StageError : public shale::Error {
 public:
  using shale::Error::Error;
};

template <typename F>
auto stage(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const shale::IoError&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("stage " + name + ": " + e.what());
  }
}

fs::path output_path(const Options& o, const std::string& file) {
  fs::create_directories(o.output_dir);
  return fs::path(o.output_dir) / file;
}

void write_to(const Options& o, const std::string& file,
              const std::function<void(std::ostream&)>& body) {
  const auto path = output_path(o, file);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw shale::IoError("cannot write '" + path.string() + "'");
  body(out);
  if (!out) throw shale::IoError("write to '" + path.string() + "' failed");
  log(Level::Debug, "wrote " + path.string());
}

std::vector<shale::SampleRecord> load_samples(const Options& o) {
  const auto text = shale::io::read_file(o.input);
  return stage("parse", [&] { return shale::io::parse_samples(text); });
}

shale::ModelSpec model_spec(const Options& o, shale::DatasetKind kind) {
  shale::ModelSpec spec =
      o.model.empty() ? shale::proposed_spec(kind) : shale::ModelSpec{shale::parse_model_kind(o.model)};
  if (o.invtemp_kelvin) spec.invtemp_unit = shale::TemperatureUnit::Kelvin;
  if (spec.dependent() != kind) {
    throw shale::DomainError("model " + o.model + " does not predict " +
                             std::string(shale::to_string(kind)));
  }
  return spec;
}

std::vector<shale::SampleRecord> run_clean(const Options& o,
                                           std::span<const shale::SampleRecord> records,
                                           shale::DatasetKind kind) {
  const auto outcome = stage("clean", [&] { return shale::clean(records, kind); });
  write_to(o, "cleaned.csv", [&](std::ostream& out) { shale::io::write_samples(out, outcome.kept); });
  write_to(o, "rejections.csv",
           [&](std::ostream& out) { shale::io::write_rejections(out, outcome.rejected); });
  log(Level::Info, "clean: kept " + std::to_string(outcome.kept.size()) + ", rejected " +
                       std::to_string(outcome.rejected.size()));
  return outcome.kept;
}

std::vector<shale::SampleRecord> run_outliers(const Options& o,
                                              std::span<const shale::SampleRecord> records,
                                              shale::DatasetKind kind) {
  const auto report =
      stage("outliers", [&] { return shale::detect_outliers(records, kind, o.k, o.threshold); });
  write_to(o, "outliers.csv",
           [&](std::ostream& out) { shale::io::write_outlier_report(out, records, report); });
  auto kept = shale::without_flagged(records, report);
  write_to(o, "inliers.csv", [&](std::ostream& out) { shale::io::write_samples(out, kept); });
  log(Level::Info, "outliers: flagged " + std::to_string(report.flagged_count()) + " of " +
                       std::to_string(records.size()));
  return kept;
}

shale::FittedModel run_fit(const Options& o, std::span<const shale::SampleRecord> records,
                           const shale::ModelSpec& spec) {
  auto model = stage("fit", [&] { return shale::fit(records, spec); });
  write_to(o, "model_" + std::string(shale::to_string(spec.kind)) + ".txt",
           [&](std::ostream& out) { shale::io::write_model(out, model); });
  std::ostringstream msg;
  msg << "fit " << shale::to_string(spec.kind) << " on " << model.n_fit << " records:";
  const auto names = spec.coefficient_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    msg << ' ' << names[i] << '=' << shale::io::format_double(model.coefficients[static_cast<Eigen::Index>(i)]);
  }
  log(Level::Info, msg.str());
  return model;
}

void run_validate(const Options& o, std::span<const shale::SampleRecord> records,
                  const shale::ModelSpec& spec) {
  const auto report = stage("validate", [&] { return shale::loo_cv(records, spec, o.ci_level); });
  write_to(o, "loo.csv", [&](std::ostream& out) { shale::io::write_loo(out, report); });
  write_to(o, "qq.csv", [&](std::ostream& out) { shale::io::write_qq(out, report.qq_pairs); });
  write_to(o, "validation_summary.csv",
           [&](std::ostream& out) { shale::io::write_validation_summary(out, spec, report); });
  log(Level::Info, "validate: mean relative error " + shale::io::format_2dp(report.mean_error) +
                       " +- " + shale::io::format_2dp(report.ci_half_width) + " % (" +
                       shale::io::format_2dp(report.ci_level * 100.0) + "% CI, n = " +
                       std::to_string(report.n) + ")");
}

int cmd_clean(const Options& o) {
  const auto records = load_samples(o);
  run_clean(o, records, shale::parse_dataset_kind(o.kind));
  return 0;
}

int cmd_outliers(const Options& o) {
  const auto records = load_samples(o);
  run_outliers(o, records, shale::parse_dataset_kind(o.kind));
  return 0;
}

int cmd_fit(const Options& o) {
  const auto kind = shale::parse_dataset_kind(o.kind);
  const auto records = load_samples(o);
  run_fit(o, records, model_spec(o, kind));
  return 0;
}

int cmd_validate(const Options& o) {
  const auto kind = shale::parse_dataset_kind(o.kind);
  const auto records = load_samples(o);
  run_validate(o, records, model_spec(o, kind));
  return 0;
}

int cmd_pipeline(const Options& o) {
  const auto kind = shale::parse_dataset_kind(o.kind);
  const auto spec = model_spec(o, kind);
  const auto records = load_samples(o);
  const auto cleaned = run_clean(o, records, kind);
  const auto inliers = run_outliers(o, cleaned, kind);
  run_fit(o, inliers, spec);
  run_validate(o, inliers, spec);
  return 0;
}

int cmd_compare(const Options& o) {
  const auto kind = shale::parse_dataset_kind(o.kind);
  const auto scenario = shale::parse_scenario(o.scenario);
  auto records = load_samples(o);
  if (!o.skip_preprocess) {
    records = stage("clean", [&] { return shale::clean(records, kind).kept; });
    records = stage("outliers", [&] {
      const auto report = shale::detect_outliers(records, kind, o.k, o.threshold);
      return shale::without_flagged(records, report);
    });
  }
  const double fraction = o.test_fraction.value_or(kind == shale::DatasetKind::Pl ? 0.2 : 0.1);
  const auto specs = shale::comparison_specs(
      kind, o.invtemp_kelvin ? shale::TemperatureUnit::Kelvin : shale::TemperatureUnit::Celsius);
  const auto table = stage("compare", [&] {
    return shale::compare_models(records, specs, scenario, fraction, o.reps, o.seed);
  });
  write_to(o, "comparison_" + o.scenario + ".csv",
           [&](std::ostream& out) { shale::io::write_comparison(out, table); });
  for (const auto& s : specs) {
    log(Level::Info, "compare " + o.scenario + ": " + std::string(shale::to_string(s.kind)) +
                         " average " + shale::io::format_2dp(table.average(s.kind)) + " %");
  }
  return 0;
}

int cmd_estimate(const Options& o) {
  shale::FittedModel pl_model, vl_model;
  if (o.paper_coefficients) {
    pl_model = shale::published_pl_model();
    vl_model = shale::published_vl_model();
  } else {
    if (o.pl_model_path.empty() || o.vl_model_path.empty()) {
      throw shale::DomainError("estimate needs --pl-model and --vl-model, or --paper-coefficients");
    }
    pl_model = stage("load model", [&] { return shale::io::parse_model(shale::io::read_file(o.pl_model_path)); });
    vl_model = stage("load model", [&] { return shale::io::parse_model(shale::io::read_file(o.vl_model_path)); });
  }
  const auto text = shale::io::read_file(o.input);
  const auto specs = stage("parse", [&] { return shale::io::parse_reservoirs(text); });
  const auto estimates =
      stage("estimate", [&] { return shale::estimate_reservoirs(specs, pl_model, vl_model); });
  write_to(o, "estimates.csv",
           [&](std::ostream& out) { shale::io::write_estimates(out, estimates); });
  for (const auto& e : estimates) {
    log(Level::Info, e.name + ": T " + shale::io::format_2dp(e.temp) + " C, P " +
                         shale::io::format_2dp(e.pressure) + " MPa, adsorbed " +
                         shale::io::format_2dp(e.adsorbed) + " m3/t");
    for (const auto& w : e.warnings) log(Level::Warn, e.name + ": " + w + " (extrapolation)");
  }
  return 0;
}

int cmd_idw(const Options& o) {
  const auto text = shale::io::read_file(o.input);
  const auto points = stage("parse", [&] { return shale::io::parse_heatflow(text); });
  const auto samples = shale::filter_heatflow(points, o.min_depth);
  log(Level::Info, "idw: " + std::to_string(samples.size()) + " of " +
                       std::to_string(points.size()) + " samples at or below " +
                       shale::io::format_double(o.min_depth) + " m");
  const shale::IdwOptions opts{o.idw_power, o.nearest};
  std::vector<shale::GridCell> cells;
  if (!o.query.empty()) {
    if (o.query.size() % 2 != 0) throw shale::DomainError("--query takes lon,lat pairs");
    for (std::size_t i = 0; i < o.query.size(); i += 2) {
      const shale::GeoPoint q{o.query[i], o.query[i + 1]};
      cells.push_back({q.lon, q.lat, stage("idw", [&] { return shale::idw_interpolate(samples, q, opts); })});
    }
  } else if (o.bbox.size() == 4) {
    cells = stage("idw", [&] {
      return shale::idw_grid(samples, o.bbox[0], o.bbox[1], o.bbox[2], o.bbox[3], o.step, opts);
    });
  } else {
    throw shale::DomainError("idw needs --query lon,lat or --bbox lon_min,lon_max,lat_min,lat_max");
  }
  write_to(o, "idw.csv", [&](std::ostream& out) { shale::io::write_grid(out, cells); });
  return 0;
}

int cmd_correlate(const Options& o) {
  const auto kind = shale::parse_dataset_kind(o.kind);
  const auto records = load_samples(o);
  const auto cleaned = stage("clean", [&] { return shale::clean(records, kind).kept; });
  const std::vector<shale::Variable> vars = {shale::Variable::Temp, shale::Variable::Toc,
                                             shale::Variable::Ro, shale::Variable::Porosity};
  std::vector<shale::PairCorrelation> table;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      try {
        table.push_back(shale::pairwise_correlation(cleaned, vars[i], vars[j]));
      } catch (const shale::DomainError& e) {
        log(Level::Warn, std::string(shale::to_string(vars[i])) + " vs " +
                             std::string(shale::to_string(vars[j])) + ": " + e.what());
      }
    }
  }
  write_to(o, "correlations.csv",
           [&](std::ostream& out) { shale::io::write_correlations(out, table); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adsorbed shale-gas estimation from geological parameters"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub, bool with_kind) {
    sub->add_option("--input", o.input, "Input file")->required();
    sub->add_option("--output-dir", o.output_dir, "Directory for output files");
    if (with_kind) {
      sub->add_option("--kind", o.kind, "Dataset kind")->check(CLI::IsMember({"pl", "vl"}));
    }
  };
  const auto add_outlier_flags = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "Neighbours in outlier detection")->check(CLI::PositiveNumber);
    sub->add_option("--threshold", o.threshold, "Outlier threshold on R (inf disables)");
  };
  const auto add_model_flags = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "Model kind (default: proposed submodel)");
    sub->add_flag("--invtemp-kelvin", o.invtemp_kelvin,
                  "Use Kelvin in the reciprocal-temperature baseline");
  };

  std::function<int(const Options&)> action;

  auto* clean = app.add_subcommand("clean", "Apply the data-cleaning filters");
  add_common(clean, true);
  clean->callback([&] { action = cmd_clean; });

  auto* outliers = app.add_subcommand("outliers", "K-NN outlier detection on a cleaned file");
  add_common(outliers, true);
  add_outlier_flags(outliers);
  outliers->callback([&] { action = cmd_outliers; });

  auto* fit = app.add_subcommand("fit", "Fit a model by least squares");
  add_common(fit, true);
  add_model_flags(fit);
  fit->callback([&] { action = cmd_fit; });

  auto* validate = app.add_subcommand("validate", "Leave-one-out cross-validation");
  add_common(validate, true);
  add_model_flags(validate);
  validate->add_option("--ci-level", o.ci_level, "Confidence level")->check(CLI::Range(0.0, 1.0));
  validate->callback([&] { action = cmd_validate; });

  auto* pipeline = app.add_subcommand("pipeline", "clean, outliers, fit and validate in order");
  add_common(pipeline, true);
  add_outlier_flags(pipeline);
  add_model_flags(pipeline);
  pipeline->add_option("--ci-level", o.ci_level, "Confidence level")->check(CLI::Range(0.0, 1.0));
  pipeline->callback([&] { action = cmd_pipeline; });

  auto* compare = app.add_subcommand("compare", "Compare the proposed submodel with baselines");
  add_common(compare, true);
  add_outlier_flags(compare);
  compare->add_flag("--invtemp-kelvin", o.invtemp_kelvin,
                    "Use Kelvin in the reciprocal-temperature baseline");
  compare->add_option("--scenario", o.scenario, "Test-pool scenario")
      ->check(CLI::IsMember({"overall", "high-t", "high-toc", "high-ro"}));
  compare->add_option("--test-fraction", o.test_fraction,
                      "Test share of the dataset (default 0.2 for pl, 0.1 for vl)");
  compare->add_option("--reps", o.reps, "Repetitions")->check(CLI::PositiveNumber);
  compare->add_option("--seed", o.seed, "Random seed");
  compare->add_flag("--skip-preprocess", o.skip_preprocess,
                    "Input is already cleaned and outlier-filtered");
  compare->callback([&] { action = cmd_compare; });

  auto* estimate = app.add_subcommand("estimate", "Estimate adsorbed gas for reservoirs");
  add_common(estimate, false);
  estimate->add_flag("--paper-coefficients", o.paper_coefficients,
                     "Use the published submodel coefficients");
  estimate->add_option("--pl-model", o.pl_model_path, "PL model file");
  estimate->add_option("--vl-model", o.vl_model_path, "VL model file");
  estimate->callback([&] { action = cmd_estimate; });

  auto* idw = app.add_subcommand("idw", "Interpolate temperature gradient from heat-flow data");
  add_common(idw, false);
  idw->add_option("--idw-power", o.idw_power, "Distance exponent")->check(CLI::PositiveNumber);
  idw->add_option("--min-depth", o.min_depth, "Drop sections shallower than this (m)");
  idw->add_option("--nearest", o.nearest, "Use only the N nearest samples");
  idw->add_option("--query", o.query, "Query point lon,lat (repeatable)")->delimiter(',');
  idw->add_option("--bbox", o.bbox, "Grid lon_min,lon_max,lat_min,lat_max")
      ->delimiter(',')
      ->expected(4);
  idw->add_option("--step", o.step, "Grid step in degrees")->check(CLI::PositiveNumber);
  idw->callback([&] { action = cmd_idw; });

  auto* correlate = app.add_subcommand("correlate", "Pairwise correlations of geological variables");
  add_common(correlate, true);
  correlate->callback([&] { action = cmd_correlate; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return action(o);
  } catch (const shale::IoError& e) {
    log(Level::Error, e.what());
    return 2;
  } catch (const fs::filesystem_error& e) {
    log(Level::Error, e.what());
    return 2;
  } catch (const std::exception& e) {
    log(Level::Error, e.what());
    return 1;
  }
}
