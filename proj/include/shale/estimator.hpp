#ifndef SHALE_ESTIMATOR_HPP
#define SHALE_ESTIMATOR_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shale/regression.hpp"

namespace shale {

template <typename Scalar>
struct LangmuirParams {
  Scalar pl;  // MPa
  Scalar vl;  // m3/t
};

/// Adsorbed volume V = P VL / (P + PL), in m3/t. Evaluated as
/// VL * (P / (P + PL)) so that V(PL) is exactly VL / 2.
template <typename Scalar>
Scalar langmuir_volume(Scalar pressure, const LangmuirParams<Scalar>& params) {
  if (pressure < Scalar(0)) throw DomainError("langmuir_volume: negative pressure");
  if (!(params.pl > Scalar(0) && params.vl > Scalar(0))) {
    throw DomainError("langmuir_volume: PL and VL must be positive");
  }
  return params.vl * (pressure / (pressure + params.pl));
}

namespace physical {
inline constexpr double kWaterDensity = 1.0;  // t/m3
inline constexpr double kGravity = 9.8;       // N/kg
inline constexpr double kDefaultSurfaceTemp = 20.0;
}  // namespace physical

struct ReservoirSpec {
  std::string name;
  double depth = 0.0;  // m, positive downward
  double toc = 0.0;
  double ro = 0.0;
  double alpha = 1.0;
  double surface_temp = physical::kDefaultSurfaceTemp;
  std::optional<double> grad_t;  // degC/km
  std::optional<double> temp_override;
  std::optional<double> pressure_override;
};

/// Throws DomainError on negative depth, non-positive alpha, or when neither
/// a gradient nor a temperature is given.
void validate(const ReservoirSpec& spec);

/// Temperature override if present, else T_s + depth[km] * gradT.
double reservoir_temperature(const ReservoirSpec& spec);

/// Pressure override if present, else alpha * rho_w * g * depth, in MPa.
double reservoir_pressure(const ReservoirSpec& spec);

/// Langmuir volume at `pressure` with PL and VL predicted from geology.
double estimate_adsorbed_gas(double toc, double ro, double temp, double pressure,
                             const FittedModel& pl_model, const FittedModel& vl_model);

struct ReservoirEstimate {
  std::string name;
  double depth;
  double toc;
  double ro;
  double temp;
  double pressure;
  double pl;
  double vl;
  double adsorbed;
  std::vector<std::string> warnings;  // inputs outside the fitting ranges
};

ReservoirEstimate estimate_reservoir(const ReservoirSpec& spec, const FittedModel& pl_model,
                                     const FittedModel& vl_model);

std::vector<ReservoirEstimate> estimate_reservoirs(std::span<const ReservoirSpec> specs,
                                                   const FittedModel& pl_model,
                                                   const FittedModel& vl_model);

}  // namespace shale

#endif  // SHALE_ESTIMATOR_HPP
