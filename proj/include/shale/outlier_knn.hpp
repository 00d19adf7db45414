#ifndef SHALE_OUTLIER_KNN_HPP
#define SHALE_OUTLIER_KNN_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "shale/dataset.hpp"

namespace shale {

/// Quantile of an ascending-sorted sample by linear interpolation between
/// order statistics at position p*(n-1).
template <typename Scalar>
Scalar sorted_quantile(std::span<const Scalar> sorted, Scalar p) {
  const Scalar pos = p * static_cast<Scalar>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const Scalar frac = pos - static_cast<Scalar>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

/// First and third quartiles. Throws DomainError for fewer than two values.
template <typename Scalar>
std::pair<Scalar, Scalar> quartiles(std::span<const Scalar> values) {
  if (values.size() < 2) {
    throw DomainError("quartiles: need at least two values");
  }
  std::vector<Scalar> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::span<const Scalar> view(sorted);
  return {sorted_quantile(view, Scalar(0.25)), sorted_quantile(view, Scalar(0.75))};
}

/// Neighbour weights from neighbour distances:
///   w_j = (sum(D) - D_j) / ((k - 1) * sum(D)).
/// They sum to one. An all-zero distance set yields uniform weights, and a
/// single neighbour gets weight one.
template <typename Scalar>
std::vector<Scalar> neighbor_weights(std::span<const Scalar> distances) {
  const std::size_t k = distances.size();
  std::vector<Scalar> w(k, k == 0 ? Scalar(0) : Scalar(1) / static_cast<Scalar>(k));
  if (k < 2) return w;
  Scalar total = 0;
  for (Scalar d : distances) total += d;
  if (total == Scalar(0)) return w;
  const Scalar denom = static_cast<Scalar>(k - 1) * total;
  for (std::size_t j = 0; j < k; ++j) w[j] = (total - distances[j]) / denom;
  return w;
}

/// Per-variable distance weights, w_l = 10 / IQR_l.
struct DistanceWeights {
  std::vector<Variable> variables;
  std::vector<double> weights;
};

/// Variables spanning the statistical distance for a dataset kind:
/// (temp, toc, ro) for PL, (temp, toc) for VL.
std::vector<Variable> active_variables(DatasetKind kind);

/// Throws DomainError naming the variable when its IQR is zero or a record
/// lacks it.
DistanceWeights compute_weights(std::span<const SampleRecord> records,
                                std::span<const Variable> variables);

double statistical_distance(const SampleRecord& a, const SampleRecord& b,
                            const DistanceWeights& w);

/// Rows are records, columns are active variables pre-multiplied by their
/// weights, so Euclidean row distance equals the statistical distance.
Eigen::MatrixXd scaled_features(std::span<const SampleRecord> records,
                                const DistanceWeights& w);

struct NeighborhoodError {
  double r = 0.0;
  std::vector<std::size_t> neighbors;  // nearest first, ties by index
  std::vector<double> weights;
};

/// Weighted relative error of row `i` against its k nearest other rows:
///   R = sum_j w_j |y_i - y_j| / min(mean_j y_j, y_i).
NeighborhoodError weighted_relative_error(const Eigen::Ref<const Eigen::MatrixXd>& features,
                                          const Eigen::Ref<const Eigen::VectorXd>& dependent,
                                          std::size_t i, std::size_t k);

NeighborhoodError weighted_relative_error(std::span<const SampleRecord> records,
                                          DatasetKind kind, const DistanceWeights& w,
                                          std::size_t i, std::size_t k);

struct OutlierReport {
  std::vector<double> r;
  std::vector<bool> flagged;
  double threshold = 0.0;
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> neighbors;
  std::vector<std::vector<double>> neighbor_weights;
  DistanceWeights distance_weights;

  std::size_t flagged_count() const {
    return static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), true));
  }
};

inline constexpr std::size_t kDefaultNeighbors = 5;
inline constexpr double kDefaultOutlierThreshold = 0.85;

/// One simultaneous pass: distance weights from the full dataset, every R
/// against all other records, flagged iff R > threshold.
OutlierReport detect_outliers(std::span<const SampleRecord> records, DatasetKind kind,
                              std::size_t k = kDefaultNeighbors,
                              double threshold = kDefaultOutlierThreshold);

/// Same, with caller-supplied distance weights.
OutlierReport detect_outliers(std::span<const SampleRecord> records, DatasetKind kind,
                              const DistanceWeights& w, std::size_t k, double threshold);

std::vector<SampleRecord> without_flagged(std::span<const SampleRecord> records,
                                          const OutlierReport& report);

}  // namespace shale

#endif  // SHALE_OUTLIER_KNN_HPP
