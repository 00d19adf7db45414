#include "shale/dataset.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace shale {

namespace {

void check_field(const std::optional<double>& value, std::string_view name,
                 double lower_exclusive, const SampleRecord& record) {
  if (!value) return;
  if (!std::isfinite(*value)) {
    throw DomainError("record '" + record.id + "': " + std::string(name) +
                      " is not finite");
  }
  if (!(*value > lower_exclusive)) {
    throw DomainError("record '" + record.id + "': " + std::string(name) +
                      " out of range");
  }
}

// Records are duplicates when every measured field agrees; the id is a
// label and does not count.
auto measurement_key(const SampleRecord& r) {
  return std::tie(r.reservoir, r.toc, r.ro, r.temp, r.porosity, r.pl, r.vl);
}

template <typename Rule>
CleaningOutcome apply_rules(std::span<const SampleRecord> records, Rule rule) {
  CleaningOutcome out;
  for (const auto& r : records) {
    if (auto reason = rule(r)) {
      out.rejected.push_back({r, *reason});
      continue;
    }
    const bool seen = std::any_of(
        out.kept.begin(), out.kept.end(),
        [&](const SampleRecord& k) { return measurement_key(k) == measurement_key(r); });
    if (seen) {
      out.rejected.push_back({r, RejectReason::Duplicate});
    } else {
      out.kept.push_back(r);
    }
  }
  return out;
}

bool toc_in_range(double toc) {
  return toc >= limits::kMinToc && toc <= limits::kMaxToc;
}

}  // namespace

void validate(const SampleRecord& record) {
  check_field(record.toc, "toc", 0.0, record);
  check_field(record.ro, "ro", 0.0, record);
  check_field(record.temp, "temp", -273.15, record);
  if (record.porosity && !(std::isfinite(*record.porosity) && *record.porosity >= 0.0)) {
    throw DomainError("record '" + record.id + "': porosity out of range");
  }
  check_field(record.pl, "pl", 0.0, record);
  check_field(record.vl, "vl", 0.0, record);
}

std::string_view to_string(Variable v) {
  switch (v) {
    case Variable::Temp: return "temp";
    case Variable::Toc: return "toc";
    case Variable::Ro: return "ro";
    case Variable::Porosity: return "porosity";
    case Variable::Pl: return "pl";
    case Variable::Vl: return "vl";
  }
  return "?";
}

std::optional<double> value_of(const SampleRecord& record, Variable v) {
  switch (v) {
    case Variable::Temp: return record.temp;
    case Variable::Toc: return record.toc;
    case Variable::Ro: return record.ro;
    case Variable::Porosity: return record.porosity;
    case Variable::Pl: return record.pl;
    case Variable::Vl: return record.vl;
  }
  return std::nullopt;
}

std::string_view to_string(DatasetKind kind) {
  return kind == DatasetKind::Pl ? "pl" : "vl";
}

DatasetKind parse_dataset_kind(std::string_view text) {
  if (text == "pl") return DatasetKind::Pl;
  if (text == "vl") return DatasetKind::Vl;
  throw ParseError("unknown dataset kind '" + std::string(text) +
                   "' (expected pl or vl)");
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::MissingField: return "missing-field";
    case RejectReason::TempRange: return "temp-range";
    case RejectReason::RoRange: return "ro-range";
    case RejectReason::TocRange: return "toc-range";
    case RejectReason::PlRange: return "pl-range";
    case RejectReason::VlRange: return "vl-range";
    case RejectReason::Duplicate: return "duplicate";
  }
  return "?";
}

CleaningOutcome clean_pl(std::span<const SampleRecord> records) {
  return apply_rules(records, [](const SampleRecord& r) -> std::optional<RejectReason> {
    if (!r.pl || !r.ro || !r.toc || !r.temp) return RejectReason::MissingField;
    if (!(*r.temp < limits::kMaxTemp)) return RejectReason::TempRange;
    if (!(*r.ro < limits::kMaxRo)) return RejectReason::RoRange;
    if (!toc_in_range(*r.toc)) return RejectReason::TocRange;
    if (!(*r.pl > limits::kMinPl && *r.pl < limits::kMaxPl)) return RejectReason::PlRange;
    return std::nullopt;
  });
}

CleaningOutcome clean_vl(std::span<const SampleRecord> records) {
  return apply_rules(records, [](const SampleRecord& r) -> std::optional<RejectReason> {
    if (!r.vl || !r.toc || !r.temp) return RejectReason::MissingField;
    if (!(*r.temp < limits::kMaxTemp)) return RejectReason::TempRange;
    if (!toc_in_range(*r.toc)) return RejectReason::TocRange;
    if (!(*r.vl > limits::kMinVl)) return RejectReason::VlRange;
    return std::nullopt;
  });
}

CleaningOutcome clean(std::span<const SampleRecord> records, DatasetKind kind) {
  return kind == DatasetKind::Pl ? clean_pl(records) : clean_vl(records);
}

DimensionlessVars to_dimensionless(const SampleRecord& record) {
  if (!record.toc || !record.temp) {
    throw DomainError("record '" + record.id + "': toc and temp are required");
  }
  DimensionlessVars out{*record.toc / reference::kToc, *record.temp / reference::kTemp,
                        std::nullopt};
  if (record.ro) out.ro_star = *record.ro / reference::kRo;
  return out;
}

PairCorrelation pairwise_correlation(std::span<const SampleRecord> records,
                                     Variable first, Variable second) {
  std::vector<double> x, y;
  for (const auto& r : records) {
    const auto a = value_of(r, first);
    const auto b = value_of(r, second);
    if (a && b) {
      x.push_back(*a);
      y.push_back(*b);
    }
  }
  const double coefficient =
      pearson_correlation<double>(std::span<const double>(x), std::span<const double>(y));
  return {first, second, x.size(), coefficient};
}

std::vector<PairCorrelation> correlation_table(std::span<const SampleRecord> records,
                                               std::span<const Variable> variables) {
  std::vector<PairCorrelation> out;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    for (std::size_t j = i + 1; j < variables.size(); ++j) {
      out.push_back(pairwise_correlation(records, variables[i], variables[j]));
    }
  }
  return out;
}

}  // namespace shale
