#include "shale/outlier_knn.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace shale {

namespace {

double required(const SampleRecord& r, Variable v) {
  const auto value = value_of(r, v);
  if (!value) {
    throw DomainError("record '" + r.id + "' lacks " + std::string(to_string(v)));
  }
  return *value;
}

Eigen::VectorXd dependent_values(std::span<const SampleRecord> records, DatasetKind kind) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(records.size()));
  const Variable dep = dependent_variable(kind);
  for (std::size_t i = 0; i < records.size(); ++i) {
    y[static_cast<Eigen::Index>(i)] = required(records[i], dep);
  }
  return y;
}

}  // namespace

std::vector<Variable> active_variables(DatasetKind kind) {
  if (kind == DatasetKind::Pl) return {Variable::Temp, Variable::Toc, Variable::Ro};
  return {Variable::Temp, Variable::Toc};
}

DistanceWeights compute_weights(std::span<const SampleRecord> records,
                                std::span<const Variable> variables) {
  DistanceWeights w;
  for (Variable v : variables) {
    std::vector<double> column;
    column.reserve(records.size());
    for (const auto& r : records) column.push_back(required(r, v));
    const auto [q1, q3] = quartiles<double>(column);
    const double iqr = q3 - q1;
    if (!(iqr > 0.0)) {
      throw DomainError("zero interquartile range for variable " + std::string(to_string(v)));
    }
    w.variables.push_back(v);
    w.weights.push_back(10.0 / iqr);
  }
  return w;
}

double statistical_distance(const SampleRecord& a, const SampleRecord& b,
                            const DistanceWeights& w) {
  double sum = 0.0;
  for (std::size_t l = 0; l < w.variables.size(); ++l) {
    const double d = w.weights[l] * (required(a, w.variables[l]) - required(b, w.variables[l]));
    sum += d * d;
  }
  return std::sqrt(sum);
}

Eigen::MatrixXd scaled_features(std::span<const SampleRecord> records,
                                const DistanceWeights& w) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(records.size()),
                    static_cast<Eigen::Index>(w.variables.size()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t l = 0; l < w.variables.size(); ++l) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) =
          w.weights[l] * required(records[i], w.variables[l]);
    }
  }
  return x;
}

NeighborhoodError weighted_relative_error(const Eigen::Ref<const Eigen::MatrixXd>& features,
                                          const Eigen::Ref<const Eigen::VectorXd>& dependent,
                                          std::size_t i, std::size_t k) {
  const auto m = static_cast<std::size_t>(features.rows());
  if (k == 0) throw DomainError("k must be positive");
  if (m < k + 1) {
    throw DomainError("dataset of " + std::to_string(m) + " records is too small for k = " +
                      std::to_string(k));
  }
  if (i >= m) throw DomainError("record index out of range");

  const auto row_i = features.row(static_cast<Eigen::Index>(i));
  std::vector<double> dist(m);
  for (std::size_t j = 0; j < m; ++j) {
    dist[j] = (features.row(static_cast<Eigen::Index>(j)) - row_i).norm();
  }
  std::vector<std::size_t> order;
  order.reserve(m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    if (j != i) order.push_back(j);
  }
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                    });

  NeighborhoodError out;
  out.neighbors.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<double> nd;
  nd.reserve(k);
  for (std::size_t j : out.neighbors) nd.push_back(dist[j]);
  out.weights = neighbor_weights<double>(nd);

  const double yi = dependent[static_cast<Eigen::Index>(i)];
  double numerator = 0.0;
  double neighbor_sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double yj = dependent[static_cast<Eigen::Index>(out.neighbors[j])];
    numerator += out.weights[j] * std::abs(yi - yj);
    neighbor_sum += yj;
  }
  const double denominator = std::min(neighbor_sum / static_cast<double>(k), yi);
  out.r = numerator == 0.0 ? 0.0 : numerator / denominator;
  return out;
}

NeighborhoodError weighted_relative_error(std::span<const SampleRecord> records,
                                          DatasetKind kind, const DistanceWeights& w,
                                          std::size_t i, std::size_t k) {
  return weighted_relative_error(scaled_features(records, w), dependent_values(records, kind), i,
                                 k);
}

OutlierReport detect_outliers(std::span<const SampleRecord> records, DatasetKind kind,
                              std::size_t k, double threshold) {
  const auto vars = active_variables(kind);
  return detect_outliers(records, kind, compute_weights(records, vars), k, threshold);
}

OutlierReport detect_outliers(std::span<const SampleRecord> records, DatasetKind kind,
                              const DistanceWeights& w, std::size_t k, double threshold) {
  const Eigen::MatrixXd features = scaled_features(records, w);
  const Eigen::VectorXd y = dependent_values(records, kind);
  OutlierReport report;
  report.threshold = threshold;
  report.k = k;
  report.distance_weights = w;
  const std::size_t m = records.size();
  report.r.resize(m);
  report.flagged.resize(m);
  report.neighbors.resize(m);
  report.neighbor_weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto e = weighted_relative_error(features, y, i, k);
    report.r[i] = e.r;
    report.flagged[i] = e.r > threshold;
    report.neighbors[i] = std::move(e.neighbors);
    report.neighbor_weights[i] = std::move(e.weights);
  }
  return report;
}

std::vector<SampleRecord> without_flagged(std::span<const SampleRecord> records,
                                          const OutlierReport& report) {
  std::vector<SampleRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!report.flagged[i]) out.push_back(records[i]);
  }
  return out;
}

}  // namespace shale
