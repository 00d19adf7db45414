#include "shale/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace shale::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    auto line = text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

double parse_number(std::string_view cell, std::string_view what) {
  const auto v = to_double(cell);
  if (!v || !std::isfinite(*v)) {
    throw ParseError(std::string(what) + ": '" + std::string(cell) + "' is not a number");
  }
  return *v;
}

std::string cell_error(std::size_t row, std::string_view column, std::string_view cell) {
  return "row " + std::to_string(row) + ", column " + std::string(column) + ": '" +
         std::string(cell) + "' is not a number";
}

std::optional<double> optional_cell(std::string_view cell, std::size_t row,
                                    std::string_view column) {
  if (cell.empty()) return std::nullopt;
  const auto v = to_double(cell);
  if (!v || !std::isfinite(*v)) throw ParseError(cell_error(row, column, cell));
  return v;
}

void write_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) out << format_double(*v);
}

void check_header(std::string_view got, std::string_view want, std::string_view what) {
  if (trim(got) != want) {
    throw ParseError(std::string(what) + ": header must be '" + std::string(want) + "'");
  }
}

template <typename T>
std::string join(const std::vector<T>& values, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += fmt(values[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_2dp(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<SampleRecord> parse_samples(std::string_view text) {
  static constexpr std::string_view kColumns[] = {"id",     "reservoir",    "toc_pct", "ro_pct",
                                                  "temp_c", "porosity_pct", "pl_mpa",  "vl_m3t"};
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError("samples file is empty (missing header)");
  check_header(lines.front(), kSamplesHeader, "samples CSV");

  std::vector<SampleRecord> out;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li + 1;
    if (trim(lines[li]).empty()) continue;
    const auto cells = split(lines[li], ',');
    if (cells.size() != std::size(kColumns)) {
      throw ParseError("row " + std::to_string(row) + ": expected 8 columns, found " +
                       std::to_string(cells.size()));
    }
    if (cells[0].empty()) throw ParseError("row " + std::to_string(row) + ", column id: empty");
    SampleRecord r;
    r.id = std::string(cells[0]);
    r.reservoir = std::string(cells[1]);
    r.toc = optional_cell(cells[2], row, kColumns[2]);
    r.ro = optional_cell(cells[3], row, kColumns[3]);
    r.temp = optional_cell(cells[4], row, kColumns[4]);
    r.porosity = optional_cell(cells[5], row, kColumns[5]);
    r.pl = optional_cell(cells[6], row, kColumns[6]);
    r.vl = optional_cell(cells[7], row, kColumns[7]);
    try {
      validate(r);
    } catch (const DomainError& e) {
      throw ParseError("row " + std::to_string(row) + ": " + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_samples(std::ostream& out, std::span<const SampleRecord> records) {
  out << kSamplesHeader << '\n';
  for (const auto& r : records) {
    out << r.id << ',' << r.reservoir << ',';
    write_optional(out, r.toc);
    out << ',';
    write_optional(out, r.ro);
    out << ',';
    write_optional(out, r.temp);
    out << ',';
    write_optional(out, r.porosity);
    out << ',';
    write_optional(out, r.pl);
    out << ',';
    write_optional(out, r.vl);
    out << '\n';
  }
}

void write_rejections(std::ostream& out, std::span<const Rejection> rejected) {
  out << "id,reservoir,reason\n";
  for (const auto& r : rejected) {
    out << r.record.id << ',' << r.record.reservoir << ',' << to_string(r.reason) << '\n';
  }
}

void write_outlier_report(std::ostream& out, std::span<const SampleRecord> records,
                          const OutlierReport& report) {
  out << "id,R,flagged,neighbor_ids,neighbor_weights\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << records[i].id << ',' << format_double(report.r[i]) << ','
        << (report.flagged[i] ? "true" : "false") << ','
        << join(report.neighbors[i], [&](std::size_t j) { return records[j].id; }) << ','
        << join(report.neighbor_weights[i], [](double w) { return format_double(w); }) << '\n';
  }
}

void write_model(std::ostream& out, const FittedModel& model) {
  out << "kind=" << to_string(model.spec.kind) << '\n';
  out << "invtemp_unit="
      << (model.spec.invtemp_unit == TemperatureUnit::Kelvin ? "kelvin" : "celsius") << '\n';
  out << "n_fit=" << model.n_fit << '\n';
  const auto names = model.spec.coefficient_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << names[i] << '=' << format_double(model.coefficients[static_cast<Eigen::Index>(i)])
        << '\n';
  }
}

FittedModel parse_model(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  for (auto line : lines_of(text)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("model file: expected key=value, got '" + std::string(line) + "'");
    }
    kv[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  const auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("model file: missing key '" + key + "'");
    return it->second;
  };
  FittedModel m;
  m.spec.kind = parse_model_kind(get("kind"));
  if (const auto it = kv.find("invtemp_unit"); it != kv.end()) {
    if (it->second == "kelvin") {
      m.spec.invtemp_unit = TemperatureUnit::Kelvin;
    } else if (it->second != "celsius") {
      throw ParseError("model file: invtemp_unit must be celsius or kelvin");
    }
  }
  m.n_fit = static_cast<std::size_t>(parse_number(get("n_fit"), "model file n_fit"));
  const auto names = m.spec.coefficient_names();
  m.coefficients.resize(static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) {
    m.coefficients[static_cast<Eigen::Index>(i)] =
        parse_number(get(names[i]), "model file " + names[i]);
  }
  return m;
}

void write_loo(std::ostream& out, const ValidationReport& report) {
  out << "id,observed,predicted,error_pct\n";
  for (std::size_t i = 0; i < report.n; ++i) {
    out << report.ids[i] << ',' << format_double(report.observed[i]) << ','
        << format_double(report.predicted[i]) << ',' << format_double(report.errors[i]) << '\n';
  }
}

void write_qq(std::ostream& out, std::span<const QQPair> pairs) {
  out << "expected,observed\n";
  for (const auto& p : pairs) {
    out << format_double(p.expected) << ',' << format_double(p.observed) << '\n';
  }
}

void write_validation_summary(std::ostream& out, const ModelSpec& spec,
                              const ValidationReport& report) {
  out << "model,n,mean_abs_error_pct,ci_level,ci_half_width_pct,signed_mean_error_pct\n";
  out << to_string(spec.kind) << ',' << report.n << ',' << format_double(report.mean_error) << ','
      << format_double(report.ci_level) << ',' << format_double(report.ci_half_width) << ','
      << format_double(report.signed_mean_error) << '\n';
}

void write_comparison(std::ostream& out, const ComparisonTable& table) {
  out << "test_label,model,error_pct\n";
  for (const auto& row : table.rows) {
    out << row.test_label << ',' << to_string(row.model) << ',' << format_double(row.error_pct)
        << '\n';
  }
}

void write_correlations(std::ostream& out, std::span<const PairCorrelation> table) {
  out << "first,second,data_size,coefficient\n";
  for (const auto& c : table) {
    out << to_string(c.first) << ',' << to_string(c.second) << ',' << c.data_size << ','
        << format_double(c.coefficient) << '\n';
  }
}

std::vector<ReservoirSpec> parse_reservoirs(std::string_view text) {
  std::vector<ReservoirSpec> out;
  struct Seen {
    bool depth = false, toc = false, ro = false;
  };
  std::vector<Seen> seen;
  const auto lines = lines_of(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto line = trim(lines[li]);
    if (line.empty() || line.front() == '#') continue;
    const auto where = "reservoir config line " + std::to_string(li + 1);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(where + ": expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "name") {
      out.emplace_back();
      out.back().name = std::string(value);
      seen.emplace_back();
      continue;
    }
    if (out.empty()) throw ParseError(where + ": '" + std::string(key) + "' before any name=");
    auto& spec = out.back();
    const double v = parse_number(value, where + " " + std::string(key));
    if (key == "depth_m") {
      spec.depth = v;
      seen.back().depth = true;
    } else if (key == "toc_pct") {
      spec.toc = v;
      seen.back().toc = true;
    } else if (key == "ro_pct") {
      spec.ro = v;
      seen.back().ro = true;
    } else if (key == "alpha") {
      spec.alpha = v;
    } else if (key == "surface_temp_c") {
      spec.surface_temp = v;
    } else if (key == "gradt_c_per_km") {
      spec.grad_t = v;
    } else if (key == "temp_c") {
      spec.temp_override = v;
    } else if (key == "pressure_mpa") {
      spec.pressure_override = v;
    } else {
      throw ParseError(where + ": unknown key '" + std::string(key) + "'");
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto where = "reservoir '" + out[i].name + "': missing ";
    if (!seen[i].depth) throw ParseError(where + "depth_m");
    if (!seen[i].toc) throw ParseError(where + "toc_pct");
    if (!seen[i].ro) throw ParseError(where + "ro_pct");
    try {
      validate(out[i]);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  return out;
}

void write_estimates(std::ostream& out, std::span<const ReservoirEstimate> estimates) {
  out << "reservoir,depth_m,toc_pct,ro_pct,temp_c,pressure_mpa,pl_mpa,vl_m3t,adsorbed_m3t,"
         "warning\n";
  for (const auto& e : estimates) {
    out << e.name << ',' << format_double(e.depth) << ',' << format_double(e.toc) << ','
        << format_double(e.ro) << ',' << format_double(e.temp) << ','
        << format_double(e.pressure) << ',' << format_double(e.pl) << ','
        << format_double(e.vl) << ',' << format_double(e.adsorbed) << ','
        << join(e.warnings, [](const std::string& s) { return s; }) << '\n';
  }
}

std::vector<HeatFlowPoint> parse_heatflow(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError("heat-flow file is empty (missing header)");
  check_header(lines.front(), kHeatflowHeader, "heat-flow CSV");
  std::vector<HeatFlowPoint> out;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const auto where = "heat-flow row " + std::to_string(li + 1);
    const auto cells = split(lines[li], ',');
    if (cells.size() != 4) throw ParseError(where + ": expected 4 columns");
    HeatFlowPoint p{parse_number(cells[0], where + " lon_deg"),
                    parse_number(cells[1], where + " lat_deg"),
                    parse_number(cells[2], where + " section_depth_m"),
                    parse_number(cells[3], where + " gradt_c_per_km")};
    try {
      validate(p);
    } catch (const DomainError& e) {
      throw ParseError(where + ": " + e.what());
    }
    out.push_back(p);
  }
  return out;
}

void write_grid(std::ostream& out, std::span<const GridCell> cells) {
  out << "lon_deg,lat_deg,gradt_c_per_km\n";
  for (const auto& c : cells) {
    out << format_double(c.lon) << ',' << format_double(c.lat) << ',' << format_double(c.grad_t)
        << '\n';
  }
}

}  // namespace shale::io
