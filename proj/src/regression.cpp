#include "shale/regression.hpp"

#include <string>

namespace shale {

namespace {

constexpr double kKelvinOffset = 273.15;

double need(const std::optional<double>& v, const SampleRecord& r, std::string_view field) {
  if (!v) {
    throw DomainError("record '" + r.id + "' is missing " + std::string(field));
  }
  return *v;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::PlSubmodel: return "pl-submodel";
    case ModelKind::VlSubmodel: return "vl-submodel";
    case ModelKind::BlPlInvTemp: return "bl-pl-invtemp";
    case ModelKind::BlPlTocPow: return "bl-pl-tocpow";
    case ModelKind::BlVlTocPow: return "bl-vl-tocpow";
    case ModelKind::BlVlTocLin: return "bl-vl-toclin";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  for (ModelKind k : {ModelKind::PlSubmodel, ModelKind::VlSubmodel, ModelKind::BlPlInvTemp,
                      ModelKind::BlPlTocPow, ModelKind::BlVlTocPow, ModelKind::BlVlTocLin}) {
    if (to_string(k) == text) return k;
  }
  throw ParseError("unknown model kind '" + std::string(text) + "'");
}

std::size_t ModelSpec::arity() const {
  switch (kind) {
    case ModelKind::PlSubmodel:
    case ModelKind::VlSubmodel:
      return 3;
    default:
      return 2;
  }
}

DatasetKind ModelSpec::dependent() const {
  switch (kind) {
    case ModelKind::PlSubmodel:
    case ModelKind::BlPlInvTemp:
    case ModelKind::BlPlTocPow:
      return DatasetKind::Pl;
    default:
      return DatasetKind::Vl;
  }
}

std::vector<std::string> ModelSpec::coefficient_names() const {
  switch (kind) {
    case ModelKind::PlSubmodel: return {"a_p", "b_p", "c_p"};
    case ModelKind::VlSubmodel: return {"a_v", "b_v", "c_v"};
    case ModelKind::BlPlInvTemp: return {"a", "c"};
    case ModelKind::BlPlTocPow:
    case ModelKind::BlVlTocPow:
      return {"slope_ln_toc", "ln_a"};
    case ModelKind::BlVlTocLin: return {"a", "b"};
  }
  return {};
}

Eigen::RowVectorXd ModelSpec::features(const SampleRecord& r) const {
  Eigen::RowVectorXd row(static_cast<Eigen::Index>(arity()));
  const double toc = need(r.toc, r, "toc");
  switch (kind) {
    case ModelKind::PlSubmodel: {
      const double temp = need(r.temp, r, "temp");
      const double ro = need(r.ro, r, "ro");
      const double t_star = temp / reference::kTemp;
      const double ro_star = ro / reference::kRo;
      if (!(t_star > 0.0)) throw DomainError("record '" + r.id + "': ln(T*/Ro*) needs T > 0");
      row << toc / reference::kToc, std::log(t_star / ro_star), 1.0;
      break;
    }
    case ModelKind::VlSubmodel: {
      const double t_star = need(r.temp, r, "temp") / reference::kTemp;
      row << toc / reference::kToc, t_star * t_star * t_star, 1.0;
      break;
    }
    case ModelKind::BlPlInvTemp: {
      double temp = need(r.temp, r, "temp");
      if (invtemp_unit == TemperatureUnit::Kelvin) temp += kKelvinOffset;
      if (temp == 0.0) throw DomainError("record '" + r.id + "': 1/T undefined at T = 0");
      row << 1.0 / temp, 1.0;
      break;
    }
    case ModelKind::BlPlTocPow:
    case ModelKind::BlVlTocPow:
      row << std::log(toc), 1.0;
      break;
    case ModelKind::BlVlTocLin:
      row << toc, 1.0;
      break;
  }
  return row;
}

double ModelSpec::response(double v) const {
  switch (kind) {
    case ModelKind::BlVlTocLin: return v;
    case ModelKind::BlPlInvTemp: return std::log(1.0 / v);
    default: return std::log(v);
  }
}

double ModelSpec::inverse_response(double z) const {
  switch (kind) {
    case ModelKind::BlVlTocLin: return z;
    case ModelKind::BlPlInvTemp: return 1.0 / std::exp(z);
    default: return std::exp(z);
  }
}

ModelSpec proposed_spec(DatasetKind kind) {
  return {kind == DatasetKind::Pl ? ModelKind::PlSubmodel : ModelKind::VlSubmodel,
          TemperatureUnit::Celsius};
}

std::vector<ModelSpec> comparison_specs(DatasetKind kind, TemperatureUnit invtemp_unit) {
  if (kind == DatasetKind::Pl) {
    return {{ModelKind::PlSubmodel, invtemp_unit},
            {ModelKind::BlPlInvTemp, invtemp_unit},
            {ModelKind::BlPlTocPow, invtemp_unit}};
  }
  return {{ModelKind::VlSubmodel, invtemp_unit},
          {ModelKind::BlVlTocPow, invtemp_unit},
          {ModelKind::BlVlTocLin, invtemp_unit}};
}

DesignSystem<double> build_design(std::span<const SampleRecord> records, const ModelSpec& spec) {
  const auto m = static_cast<Eigen::Index>(records.size());
  DesignSystem<double> sys{Eigen::MatrixXd(m, static_cast<Eigen::Index>(spec.arity())),
                           Eigen::VectorXd(m)};
  const Variable dep = dependent_variable(spec.dependent());
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    sys.x.row(i) = spec.features(r);
    sys.y[i] = spec.response(need(value_of(r, dep), r, to_string(dep)));
  }
  return sys;
}

FittedModel fit(std::span<const SampleRecord> records, const ModelSpec& spec) {
  return {spec, ols_fit(build_design(records, spec)), records.size()};
}

double predict(const FittedModel& model, const SampleRecord& record) {
  if (static_cast<std::size_t>(model.coefficients.size()) != model.spec.arity()) {
    throw DomainError("model coefficient count does not match its kind");
  }
  return model.spec.inverse_response(model.spec.features(record).dot(model.coefficients));
}

FittedModel published_pl_model() {
  FittedModel m{{ModelKind::PlSubmodel, TemperatureUnit::Celsius}, Eigen::VectorXd(3), 91};
  m.coefficients << published::kPlA, published::kPlB, published::kPlC;
  return m;
}

FittedModel published_vl_model() {
  FittedModel m{{ModelKind::VlSubmodel, TemperatureUnit::Celsius}, Eigen::VectorXd(3), 184};
  m.coefficients << published::kVlA, published::kVlB, published::kVlC;
  return m;
}

}  // namespace shale
