#ifndef SHALE_REGRESSION_HPP
#define SHALE_REGRESSION_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "shale/dataset.hpp"

namespace shale {

enum class ModelKind {
  PlSubmodel,   // ln PL = a TOC* + b ln(T*/Ro*) + c
  VlSubmodel,   // ln VL = a TOC* + b T*^3 + c
  BlPlInvTemp,  // ln(1/PL) = a / T + c
  BlPlTocPow,   // PL = a TOC^-b, fit as ln PL on ln TOC
  BlVlTocPow,   // VL = a TOC^b, fit as ln VL on ln TOC
  BlVlTocLin,   // VL = a TOC + b
};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

/// Temperature scale fed to the reciprocal-temperature baseline.
enum class TemperatureUnit { Celsius, Kelvin };

/// A model kind together with its feature and response maps.
struct ModelSpec {
  ModelKind kind = ModelKind::PlSubmodel;
  TemperatureUnit invtemp_unit = TemperatureUnit::Celsius;

  std::size_t arity() const;
  DatasetKind dependent() const;
  /// Names of the fitted coefficients, in regressor order.
  std::vector<std::string> coefficient_names() const;

  /// Regressor row for a record. Throws DomainError naming the missing field.
  Eigen::RowVectorXd features(const SampleRecord& record) const;
  /// Linearized response computed from the dependent value.
  double response(double dependent_value) const;
  /// Inverse of `response`.
  double inverse_response(double linear_value) const;
};

/// The proposed submodel for a dataset kind.
ModelSpec proposed_spec(DatasetKind kind);
/// Proposed submodel followed by the literature baselines for the same
/// dependent variable.
std::vector<ModelSpec> comparison_specs(DatasetKind kind,
                                        TemperatureUnit invtemp_unit = TemperatureUnit::Celsius);

template <typename Scalar>
struct DesignSystem {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> y;
};

DesignSystem<double> build_design(std::span<const SampleRecord> records, const ModelSpec& spec);

inline constexpr double kRelativePivotTolerance = 1e-12;

/// Least-squares coefficients from the normal equations X'X w = X'y,
/// solved by partially pivoted LU. Throws ConditioningError when the system
/// is underdetermined or a pivot falls below 1e-12 relative to the largest
/// entry of X'X.
template <typename DerivedX, typename DerivedY>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, 1> ols_fit(
    const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  if (x.rows() != y.rows()) throw DomainError("ols_fit: X and y row counts differ");
  if (x.cols() == 0) throw DomainError("ols_fit: no regressors");
  if (!x.allFinite() || !y.allFinite()) throw DomainError("ols_fit: non-finite input");
  if (x.rows() < x.cols()) {
    throw ConditioningError("ols_fit: " + std::to_string(x.rows()) + " equations for " +
                            std::to_string(x.cols()) + " coefficients");
  }
  const Matrix gram = x.transpose() * x;
  const Vector rhs = x.transpose() * y;
  const Eigen::PartialPivLU<Matrix> lu(gram);
  const Scalar scale = gram.cwiseAbs().maxCoeff();
  const Scalar smallest = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(scale > Scalar(0)) || smallest < Scalar(kRelativePivotTolerance) * scale) {
    throw ConditioningError("ols_fit: normal equations are singular or ill-conditioned");
  }
  return lu.solve(rhs);
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ols_fit(const DesignSystem<Scalar>& system) {
  return ols_fit(system.x, system.y);
}

struct FittedModel {
  ModelSpec spec;
  Eigen::VectorXd coefficients;
  std::size_t n_fit = 0;
};

FittedModel fit(std::span<const SampleRecord> records, const ModelSpec& spec);

/// Prediction of the dependent variable (PL in MPa or VL in m3/t).
double predict(const FittedModel& model, const SampleRecord& record);

/// Submodel coefficients fitted on the 91-point PL and 184-point VL
/// literature compilations.
namespace published {
inline constexpr double kPlA = -0.136;
inline constexpr double kPlB = 0.715;
inline constexpr double kPlC = 1.666;
inline constexpr double kVlA = 0.421;
inline constexpr double kVlB = -0.067;
inline constexpr double kVlC = 0.563;
}  // namespace published

FittedModel published_pl_model();
FittedModel published_vl_model();

}  // namespace shale

#endif  // SHALE_REGRESSION_HPP
