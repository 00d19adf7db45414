#ifndef SHALE_VALIDATION_HPP
#define SHALE_VALIDATION_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "shale/regression.hpp"

namespace shale {

/// Signed relative error in percent, (observed - predicted) / observed * 100.
inline double relative_error_pct(double observed, double predicted) {
  return (observed - predicted) / observed * 100.0;
}

struct ConfidenceInterval {
  double mean = 0.0;
  double half_width = 0.0;
};

inline constexpr double kDefaultCiLevel = 0.90;

/// Student-t interval for the mean: mean +- t_{n-1,(1+level)/2} s / sqrt(n).
ConfidenceInterval error_ci(std::span<const double> errors, double level = kDefaultCiLevel);

struct QQPair {
  double expected;
  double observed;
};

/// Normal Q-Q pairs. Observed values are the sorted sample; expected values
/// are standard normal quantiles at (i - 0.5)/n mapped through the sample
/// mean and standard deviation.
std::vector<QQPair> qq_data(std::span<const double> errors);

struct ValidationReport {
  std::vector<std::string> ids;
  std::vector<double> observed;
  std::vector<double> predicted;
  std::vector<double> errors;  // signed, percent
  std::vector<Eigen::VectorXd> fold_coefficients;
  double mean_error = 0.0;  // mean |error|, percent
  double signed_mean_error = 0.0;
  double ci_half_width = 0.0;  // of the mean |error|
  double ci_level = kDefaultCiLevel;
  std::size_t n = 0;
  std::vector<QQPair> qq_pairs;  // over the signed errors

  std::vector<double> absolute_errors() const;
};

/// Leave-one-out cross-validation: each record is predicted by a model fit
/// on all the others. Throws ConditioningError naming the failing fold.
ValidationReport loo_cv(std::span<const SampleRecord> records, const ModelSpec& spec,
                        double ci_level = kDefaultCiLevel);

// ---------------------------------------------------------------------------
// Scenario comparison

enum class Scenario { Overall, HighTemp, HighToc, HighRo };

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view text);
/// Row label prefix used in comparison tables ("Test", "HighT", ...).
std::string_view label_prefix(Scenario s);
/// Whether a record belongs to the scenario's test pool (T > 65, TOC > 5,
/// Ro > 2; every record for the overall scenario).
bool in_scenario_pool(const SampleRecord& record, Scenario s);

/// Seeded 64-bit generator. std::mt19937_64 is fully specified by the
/// standard; bounded draws use rejection sampling on its raw output so the
/// sequence does not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

struct Split {
  std::vector<std::size_t> train;  // ascending record indices
  std::vector<std::size_t> test;   // in draw order
};

/// Number of test records: round(fraction * total), clamped to [1, pool].
std::size_t test_count(std::size_t total, std::size_t pool, double fraction);

Split scenario_split(std::span<const SampleRecord> records, Scenario scenario,
                     double test_fraction, Rng& rng);
Split scenario_split(std::span<const SampleRecord> records, Scenario scenario,
                     double test_fraction, std::uint64_t seed);

/// Mean |relative error| (percent) of a model over a set of records.
double mean_absolute_error_pct(const FittedModel& model, std::span<const SampleRecord> records);

struct ComparisonRow {
  std::string test_label;
  ModelKind model;
  double error_pct;
};

struct ComparisonTable {
  Scenario scenario = Scenario::Overall;
  double test_fraction = 0.0;
  std::uint64_t seed = 0;
  std::vector<ModelSpec> specs;
  std::vector<ComparisonRow> rows;  // per repetition and spec, then averages

  /// The "Average" row for a model kind.
  double average(ModelKind kind) const;
};

/// Repeated split / fit / test. Each repetition draws one split from a
/// generator seeded once with `seed`, fits every spec on the training part
/// and scores it on the test part; a final "Average" row per spec holds the
/// equally weighted mean across repetitions.
ComparisonTable compare_models(std::span<const SampleRecord> records,
                               std::span<const ModelSpec> specs, Scenario scenario,
                               double test_fraction, std::size_t repetitions,
                               std::uint64_t seed);

}  // namespace shale

#endif  // SHALE_VALIDATION_HPP
