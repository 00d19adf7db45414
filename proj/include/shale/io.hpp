#ifndef SHALE_IO_HPP
#define SHALE_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shale/dataset.hpp"
#include "shale/estimator.hpp"
#include "shale/geotemp.hpp"
#include "shale/outlier_knn.hpp"
#include "shale/regression.hpp"
#include "shale/validation.hpp"

namespace shale::io {

inline constexpr std::string_view kSamplesHeader =
    "id,reservoir,toc_pct,ro_pct,temp_c,porosity_pct,pl_mpa,vl_m3t";
inline constexpr std::string_view kHeatflowHeader =
    "lon_deg,lat_deg,section_depth_m,gradt_c_per_km";

/// Shortest text that parses back to the same double.
std::string format_double(double value);
/// Fixed two-decimal text for human-readable summaries.
std::string format_2dp(double value);

/// Reads the whole file. Throws shale::Error naming the path on failure.
std::string read_file(const std::string& path);

/// Samples CSV. Row numbers in errors count the header as row 1.
std::vector<SampleRecord> parse_samples(std::string_view text);
void write_samples(std::ostream& out, std::span<const SampleRecord> records);
void write_rejections(std::ostream& out, std::span<const Rejection> rejected);

void write_outlier_report(std::ostream& out, std::span<const SampleRecord> records,
                          const OutlierReport& report);

/// Key-value model block: kind, invtemp_unit, n_fit, then one line per
/// coefficient in regressor order.
void write_model(std::ostream& out, const FittedModel& model);
FittedModel parse_model(std::string_view text);

void write_loo(std::ostream& out, const ValidationReport& report);
void write_qq(std::ostream& out, std::span<const QQPair> pairs);
void write_validation_summary(std::ostream& out, const ModelSpec& spec,
                              const ValidationReport& report);
void write_comparison(std::ostream& out, const ComparisonTable& table);
void write_correlations(std::ostream& out, std::span<const PairCorrelation> table);

/// Reservoir blocks; each `name=` line opens a new block. Blank lines and
/// lines starting with '#' are ignored.
std::vector<ReservoirSpec> parse_reservoirs(std::string_view text);
void write_estimates(std::ostream& out, std::span<const ReservoirEstimate> estimates);

std::vector<HeatFlowPoint> parse_heatflow(std::string_view text);
void write_grid(std::ostream& out, std::span<const GridCell> cells);

}  // namespace shale::io

#endif  // SHALE_IO_HPP
