#include "shale/estimator.hpp"

#include <cmath>

namespace shale {

void validate(const ReservoirSpec& spec) {
  const auto where = "reservoir '" + spec.name + "': ";
  if (!std::isfinite(spec.depth) || spec.depth < 0.0) {
    throw DomainError(where + "depth_m must be non-negative");
  }
  if (!(spec.alpha > 0.0)) throw DomainError(where + "alpha must be positive");
  if (!(spec.toc > 0.0)) throw DomainError(where + "toc_pct must be positive");
  if (!(spec.ro > 0.0)) throw DomainError(where + "ro_pct must be positive");
  if (!spec.grad_t && !spec.temp_override) {
    throw DomainError(where + "needs gradt_c_per_km or temp_c");
  }
}

double reservoir_temperature(const ReservoirSpec& spec) {
  if (spec.temp_override) return *spec.temp_override;
  if (!spec.grad_t) {
    throw DomainError("reservoir '" + spec.name + "': needs gradt_c_per_km or temp_c");
  }
  return spec.surface_temp + spec.depth / 1000.0 * *spec.grad_t;
}

double reservoir_pressure(const ReservoirSpec& spec) {
  if (spec.pressure_override) return *spec.pressure_override;
  if (spec.depth < 0.0) throw DomainError("reservoir '" + spec.name + "': negative depth");
  // rho_w [t/m3] * g [N/kg] * h [m] is in kPa.
  return spec.alpha * physical::kWaterDensity * physical::kGravity * spec.depth / 1000.0;
}

double estimate_adsorbed_gas(double toc, double ro, double temp, double pressure,
                             const FittedModel& pl_model, const FittedModel& vl_model) {
  if (!(pressure > 0.0)) throw DomainError("estimate_adsorbed_gas: pressure must be positive");
  if (pl_model.spec.dependent() != DatasetKind::Pl || vl_model.spec.dependent() != DatasetKind::Vl) {
    throw DomainError("estimate_adsorbed_gas: expected a PL model and a VL model");
  }
  SampleRecord r;
  r.id = "query";
  r.toc = toc;
  r.ro = ro;
  r.temp = temp;
  const LangmuirParams<double> params{predict(pl_model, r), predict(vl_model, r)};
  return langmuir_volume(pressure, params);
}

ReservoirEstimate estimate_reservoir(const ReservoirSpec& spec, const FittedModel& pl_model,
                                     const FittedModel& vl_model) {
  validate(spec);
  ReservoirEstimate e;
  e.name = spec.name;
  e.depth = spec.depth;
  e.toc = spec.toc;
  e.ro = spec.ro;
  e.temp = reservoir_temperature(spec);
  e.pressure = reservoir_pressure(spec);
  SampleRecord r;
  r.id = spec.name;
  r.toc = spec.toc;
  r.ro = spec.ro;
  r.temp = e.temp;
  e.pl = predict(pl_model, r);
  e.vl = predict(vl_model, r);
  e.adsorbed = estimate_adsorbed_gas(spec.toc, spec.ro, e.temp, e.pressure, pl_model, vl_model);

  if (!(e.temp < limits::kMaxTemp)) e.warnings.push_back("temperature above fitting range");
  if (!(spec.ro < limits::kMaxRo)) e.warnings.push_back("ro above fitting range");
  if (spec.toc < limits::kMinToc || spec.toc > limits::kMaxToc) {
    e.warnings.push_back("toc outside fitting range");
  }
  return e;
}

std::vector<ReservoirEstimate> estimate_reservoirs(std::span<const ReservoirSpec> specs,
                                                   const FittedModel& pl_model,
                                                   const FittedModel& vl_model) {
  std::vector<ReservoirEstimate> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(estimate_reservoir(s, pl_model, vl_model));
  return out;
}

}  // namespace shale
