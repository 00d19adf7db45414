#ifndef SHALE_DATASET_HPP
#define SHALE_DATASET_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shale/error.hpp"

namespace shale {

// Units are fixed everywhere: TOC %, Ro %, T degC, P MPa, V and VL m3/t,
// depth m.

/// One adsorption-experiment data point.
///
/// Every numeric field except the identity columns may be absent in the
/// source data; incompleteness is resolved by the cleaning filters, never by
/// sentinel values.
struct SampleRecord {
  std::string id;
  std::string reservoir;
  std::optional<double> toc;       // total organic carbon, %
  std::optional<double> ro;        // vitrinite reflectance, %
  std::optional<double> temp;      // experiment temperature, degC
  std::optional<double> porosity;  // %
  std::optional<double> pl;        // Langmuir pressure, MPa
  std::optional<double> vl;        // Langmuir volume, m3/t

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

/// Throws DomainError if a present field is non-finite or out of its
/// physical range (toc, ro, pl, vl > 0; temp > -273.15).
void validate(const SampleRecord& record);

/// Geological variables that take part in distance or correlation
/// computations.
enum class Variable { Temp, Toc, Ro, Porosity, Pl, Vl };

std::string_view to_string(Variable v);
std::optional<double> value_of(const SampleRecord& record, Variable v);

/// Which Langmuir parameter a dataset (and a model) is built around.
enum class DatasetKind { Pl, Vl };

std::string_view to_string(DatasetKind kind);
DatasetKind parse_dataset_kind(std::string_view text);

/// The dependent variable of a dataset kind.
inline Variable dependent_variable(DatasetKind kind) {
  return kind == DatasetKind::Pl ? Variable::Pl : Variable::Vl;
}

// ---------------------------------------------------------------------------
// Cleaning

enum class RejectReason {
  MissingField,
  TempRange,
  RoRange,
  TocRange,
  PlRange,
  VlRange,
  Duplicate,
};

std::string_view to_string(RejectReason reason);

struct Rejection {
  SampleRecord record;
  RejectReason reason;
};

struct CleaningOutcome {
  std::vector<SampleRecord> kept;
  std::vector<Rejection> rejected;
};

namespace limits {
inline constexpr double kMaxTemp = 90.0;   // exclusive
inline constexpr double kMaxRo = 4.0;      // exclusive
inline constexpr double kMinToc = 1.0;     // inclusive
inline constexpr double kMaxToc = 17.0;    // inclusive
inline constexpr double kMinPl = 1.5;      // exclusive
inline constexpr double kMaxPl = 12.0;     // exclusive
inline constexpr double kMinVl = 1.0;      // exclusive
}  // namespace limits

/// Filter for the Langmuir-pressure dataset. Rules are evaluated in the order
/// presence, temperature, Ro, TOC, PL, duplicate; a rejected record carries
/// the first rule it failed.
CleaningOutcome clean_pl(std::span<const SampleRecord> records);

/// Filter for the Langmuir-volume dataset (presence, temperature, TOC, VL,
/// duplicate).
CleaningOutcome clean_vl(std::span<const SampleRecord> records);

CleaningOutcome clean(std::span<const SampleRecord> records, DatasetKind kind);

// ---------------------------------------------------------------------------
// Dimensionless transforms

namespace reference {
inline constexpr double kToc = 4.0;
inline constexpr double kTemp = 48.0;
inline constexpr double kRo = 1.75;
}  // namespace reference

struct DimensionlessVars {
  double toc_star;
  double t_star;
  std::optional<double> ro_star;
};

/// Throws DomainError when toc or temp is absent.
DimensionlessVars to_dimensionless(const SampleRecord& record);

// ---------------------------------------------------------------------------
// Correlation

/// Sample Pearson correlation coefficient.
///
/// Throws DomainError on unequal lengths, fewer than two points, or zero
/// variance in either argument.
template <typename Scalar>
Scalar pearson_correlation(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) {
    throw DomainError("pearson_correlation: length mismatch");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw DomainError("pearson_correlation: need at least two points");
  }
  Scalar mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<Scalar>(n);
  my /= static_cast<Scalar>(n);
  Scalar sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar dx = x[i] - mx;
    const Scalar dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == Scalar(0) || syy == Scalar(0)) {
    throw DomainError("pearson_correlation: zero variance");
  }
  const Scalar r = sxy / std::sqrt(sxx * syy);
  // Rounding can push |r| a hair past 1.
  return std::max(Scalar(-1), std::min(Scalar(1), r));
}

/// Correlation of two variables over the records where both are present.
struct PairCorrelation {
  Variable first;
  Variable second;
  std::size_t data_size;
  double coefficient;
};

PairCorrelation pairwise_correlation(std::span<const SampleRecord> records,
                                     Variable first, Variable second);

/// All pairs among `variables`, in lexical pair order.
std::vector<PairCorrelation> correlation_table(
    std::span<const SampleRecord> records, std::span<const Variable> variables);

}  // namespace shale

#endif  // SHALE_DATASET_HPP
