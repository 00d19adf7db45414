#ifndef SHALE_GEOTEMP_HPP
#define SHALE_GEOTEMP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "shale/error.hpp"

namespace shale {

/// Temperature-gradient measurement from a heat-flow database.
struct HeatFlowPoint {
  double lon;            // degrees
  double lat;            // degrees
  double section_depth;  // m, mean depth of the measuring section
  double grad_t;         // degC/km
};

void validate(const HeatFlowPoint& p);

struct GeoPoint {
  double lon;
  double lat;
};

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kShallowSectionCutoffM = 500.0;
inline constexpr double kDefaultIdwPower = 2.0;

/// Great-circle distance in metres (haversine).
template <typename Scalar>
Scalar haversine_distance(Scalar lon1, Scalar lat1, Scalar lon2, Scalar lat2,
                          Scalar radius = Scalar(kEarthRadiusM)) {
  constexpr Scalar deg = std::numbers::pi_v<Scalar> / Scalar(180);
  const Scalar dlat = (lat2 - lat1) * deg;
  const Scalar dlon = (lon2 - lon1) * deg;
  const Scalar s1 = std::sin(dlat / 2);
  const Scalar s2 = std::sin(dlon / 2);
  const Scalar h = s1 * s1 + std::cos(lat1 * deg) * std::cos(lat2 * deg) * s2 * s2;
  return 2 * radius * std::asin(std::sqrt(std::min(Scalar(1), h)));
}

/// Drops measurements whose section lies shallower than `min_depth`
/// (a section exactly at `min_depth` is kept).
std::vector<HeatFlowPoint> filter_heatflow(std::span<const HeatFlowPoint> points,
                                           double min_depth = kShallowSectionCutoffM);

struct IdwOptions {
  double power = kDefaultIdwPower;
  /// Restrict to the N nearest samples; all samples when unset.
  std::optional<std::size_t> nearest;
};

/// Inverse-distance-weighted gradient at `query`. A sample closer than 1 m
/// is returned exactly. Throws DomainError for an empty sample set.
double idw_interpolate(std::span<const HeatFlowPoint> samples, GeoPoint query,
                       const IdwOptions& options = {});

struct GridCell {
  double lon;
  double lat;
  double grad_t;
};

/// Row-major lon/lat grid over [lon_min, lon_max] x [lat_min, lat_max].
std::vector<GridCell> idw_grid(std::span<const HeatFlowPoint> samples, double lon_min,
                               double lon_max, double lat_min, double lat_max, double step,
                               const IdwOptions& options = {});

}  // namespace shale

#endif  // SHALE_GEOTEMP_HPP
