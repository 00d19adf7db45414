#include "shale/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace shale {

namespace {

double sample_mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<SampleRecord> pick(std::span<const SampleRecord> records,
                               std::span<const std::size_t> indices) {
  std::vector<SampleRecord> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(records[i]);
  return out;
}

}  // namespace

ConfidenceInterval error_ci(std::span<const double> errors, double level) {
  if (errors.size() < 2) throw DomainError("error_ci: need at least two errors");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("error_ci: level must lie in (0, 1)");
  const double mean = sample_mean(errors);
  const double sd = sample_sd(errors, mean);
  const boost::math::students_t dist(static_cast<double>(errors.size() - 1));
  const double t = boost::math::quantile(dist, (1.0 + level) / 2.0);
  return {mean, t * sd / std::sqrt(static_cast<double>(errors.size()))};
}

std::vector<QQPair> qq_data(std::span<const double> errors) {
  const std::size_t n = errors.size();
  if (n < 3) throw DomainError("qq_data: need at least three errors");
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());
  const double mean = sample_mean(sorted);
  const double sd = sample_sd(sorted, mean);
  const boost::math::normal standard;
  std::vector<QQPair> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out.push_back({mean + sd * boost::math::quantile(standard, p), sorted[i]});
  }
  return out;
}

std::vector<double> ValidationReport::absolute_errors() const {
  std::vector<double> out(errors.size());
  std::transform(errors.begin(), errors.end(), out.begin(), [](double e) { return std::abs(e); });
  return out;
}

ValidationReport loo_cv(std::span<const SampleRecord> records, const ModelSpec& spec,
                        double ci_level) {
  const std::size_t m = records.size();
  if (m < spec.arity() + 1) {
    throw DomainError("loo_cv: " + std::to_string(m) + " records cannot validate a " +
                      std::to_string(spec.arity()) + "-coefficient model");
  }
  const auto full = build_design(records, spec);
  const Variable dep = dependent_variable(spec.dependent());

  ValidationReport report;
  report.n = m;
  report.ci_level = ci_level;
  const auto rows = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd x(rows - 1, full.x.cols());
  Eigen::VectorXd y(rows - 1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    // Rows above i keep their position, rows below shift up by one.
    x.topRows(i) = full.x.topRows(i);
    y.head(i) = full.y.head(i);
    x.bottomRows(rows - 1 - i) = full.x.bottomRows(rows - 1 - i);
    y.tail(rows - 1 - i) = full.y.tail(rows - 1 - i);

    const auto& held = records[static_cast<std::size_t>(i)];
    Eigen::VectorXd w;
    try {
      w = ols_fit(x, y);
    } catch (const ConditioningError& e) {
      throw ConditioningError("loo_cv fold " + std::to_string(i) + " (record '" + held.id +
                              "'): " + e.what());
    }
    const double observed = *value_of(held, dep);
    const double predicted = spec.inverse_response(full.x.row(i).dot(w));
    report.ids.push_back(held.id);
    report.observed.push_back(observed);
    report.predicted.push_back(predicted);
    report.errors.push_back(relative_error_pct(observed, predicted));
    report.fold_coefficients.push_back(std::move(w));
  }

  const auto abs_errors = report.absolute_errors();
  const auto ci = error_ci(abs_errors, ci_level);
  report.mean_error = ci.mean;
  report.ci_half_width = ci.half_width;
  report.signed_mean_error = sample_mean(report.errors);
  report.qq_pairs = qq_data(report.errors);
  return report;
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Overall: return "overall";
    case Scenario::HighTemp: return "high-t";
    case Scenario::HighToc: return "high-toc";
    case Scenario::HighRo: return "high-ro";
  }
  return "?";
}

Scenario parse_scenario(std::string_view text) {
  for (Scenario s : {Scenario::Overall, Scenario::HighTemp, Scenario::HighToc, Scenario::HighRo}) {
    if (to_string(s) == text) return s;
  }
  throw ParseError("unknown scenario '" + std::string(text) + "'");
}

std::string_view label_prefix(Scenario s) {
  switch (s) {
    case Scenario::Overall: return "Test";
    case Scenario::HighTemp: return "HighT";
    case Scenario::HighToc: return "HighTOC";
    case Scenario::HighRo: return "HighRo";
  }
  return "?";
}

bool in_scenario_pool(const SampleRecord& r, Scenario s) {
  switch (s) {
    case Scenario::Overall: return true;
    case Scenario::HighTemp: return r.temp && *r.temp > 65.0;
    case Scenario::HighToc: return r.toc && *r.toc > 5.0;
    case Scenario::HighRo: return r.ro && *r.ro > 2.0;
  }
  return false;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below: empty range");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - kMax % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

std::size_t test_count(std::size_t total, std::size_t pool, double fraction) {
  const auto wanted = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total)));
  return std::clamp<std::size_t>(wanted, 1, pool);
}

Split scenario_split(std::span<const SampleRecord> records, Scenario scenario,
                     double test_fraction, Rng& rng) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DomainError("test fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (in_scenario_pool(records[i], scenario)) pool.push_back(i);
  }
  if (pool.empty()) {
    throw DomainError("scenario " + std::string(to_string(scenario)) +
                      " has no eligible test records");
  }
  const std::size_t n_test = test_count(records.size(), pool.size(), test_fraction);
  // Partial Fisher-Yates over the pool.
  for (std::size_t i = 0; i < n_test; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  Split split;
  split.test.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::vector<bool> is_test(records.size(), false);
  for (std::size_t i : split.test) is_test[i] = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!is_test[i]) split.train.push_back(i);
  }
  return split;
}

Split scenario_split(std::span<const SampleRecord> records, Scenario scenario,
                     double test_fraction, std::uint64_t seed) {
  Rng rng(seed);
  return scenario_split(records, scenario, test_fraction, rng);
}

double mean_absolute_error_pct(const FittedModel& model, std::span<const SampleRecord> records) {
  if (records.empty()) throw DomainError("no records to score");
  const Variable dep = dependent_variable(model.spec.dependent());
  double sum = 0.0;
  for (const auto& r : records) {
    const auto observed = value_of(r, dep);
    if (!observed) throw DomainError("record '" + r.id + "' lacks the dependent variable");
    sum += std::abs(relative_error_pct(*observed, predict(model, r)));
  }
  return sum / static_cast<double>(records.size());
}

double ComparisonTable::average(ModelKind kind) const {
  for (const auto& row : rows) {
    if (row.test_label == "Average" && row.model == kind) return row.error_pct;
  }
  throw DomainError("no average row for model " + std::string(to_string(kind)));
}

ComparisonTable compare_models(std::span<const SampleRecord> records,
                               std::span<const ModelSpec> specs, Scenario scenario,
                               double test_fraction, std::size_t repetitions,
                               std::uint64_t seed) {
  if (specs.empty()) throw DomainError("compare_models: no model specs");
  if (repetitions == 0) throw DomainError("compare_models: repetitions must be positive");
  for (const auto& s : specs) {
    if (s.dependent() != specs.front().dependent()) {
      throw DomainError("compare_models: specs predict different dependent variables");
    }
  }
  ComparisonTable table;
  table.scenario = scenario;
  table.test_fraction = test_fraction;
  table.seed = seed;
  table.specs.assign(specs.begin(), specs.end());

  Rng rng(seed);
  std::vector<double> sums(specs.size(), 0.0);
  const std::string prefix(label_prefix(scenario));
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const Split split = scenario_split(records, scenario, test_fraction, rng);
    const auto train = pick(records, split.train);
    const auto test = pick(records, split.test);
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const double err = mean_absolute_error_pct(fit(train, specs[s]), test);
      table.rows.push_back({prefix + std::to_string(rep + 1), specs[s].kind, err});
      sums[s] += err;
    }
  }
  for (std::size_t s = 0; s < specs.size(); ++s) {
    table.rows.push_back({"Average", specs[s].kind, sums[s] / static_cast<double>(repetitions)});
  }
  return table;
}

}  // namespace shale
