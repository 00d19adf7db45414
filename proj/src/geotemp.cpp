#include "shale/geotemp.hpp"

#include <algorithm>
#include <numeric>

namespace shale {

namespace {
constexpr double kExactHitM = 1.0;
}

void validate(const HeatFlowPoint& p) {
  if (!(p.lon >= -180.0 && p.lon <= 180.0)) throw DomainError("longitude out of range");
  if (!(p.lat >= -90.0 && p.lat <= 90.0)) throw DomainError("latitude out of range");
  if (!std::isfinite(p.grad_t)) throw DomainError("temperature gradient is not finite");
  if (!std::isfinite(p.section_depth)) throw DomainError("section depth is not finite");
}

std::vector<HeatFlowPoint> filter_heatflow(std::span<const HeatFlowPoint> points,
                                           double min_depth) {
  std::vector<HeatFlowPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [&](const HeatFlowPoint& p) { return p.section_depth >= min_depth; });
  return out;
}

double idw_interpolate(std::span<const HeatFlowPoint> samples, GeoPoint query,
                       const IdwOptions& options) {
  if (samples.empty()) throw DomainError("idw_interpolate: no samples");
  if (!(options.power > 0.0)) throw DomainError("idw_interpolate: power must be positive");

  std::vector<double> dist(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    dist[i] = haversine_distance(query.lon, query.lat, samples[i].lon, samples[i].lat);
  }
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  if (dist[order.front()] < kExactHitM) return samples[order.front()].grad_t;

  std::size_t used = order.size();
  if (options.nearest) used = std::clamp<std::size_t>(*options.nearest, 1, order.size());

  double num = 0.0;
  double den = 0.0;
  for (std::size_t n = 0; n < used; ++n) {
    const std::size_t i = order[n];
    const double w = 1.0 / std::pow(dist[i], options.power);
    num += w * samples[i].grad_t;
    den += w;
  }
  return num / den;
}

std::vector<GridCell> idw_grid(std::span<const HeatFlowPoint> samples, double lon_min,
                               double lon_max, double lat_min, double lat_max, double step,
                               const IdwOptions& options) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (lon_max < lon_min || lat_max < lat_min) throw DomainError("empty grid bounds");
  const auto nlon = static_cast<std::size_t>(std::floor((lon_max - lon_min) / step + 1e-9)) + 1;
  const auto nlat = static_cast<std::size_t>(std::floor((lat_max - lat_min) / step + 1e-9)) + 1;
  std::vector<GridCell> out;
  out.reserve(nlon * nlat);
  for (std::size_t j = 0; j < nlat; ++j) {
    const double lat = lat_min + static_cast<double>(j) * step;
    for (std::size_t i = 0; i < nlon; ++i) {
      const double lon = lon_min + static_cast<double>(i) * step;
      out.push_back({lon, lat, idw_interpolate(samples, {lon, lat}, options)});
    }
  }
  return out;
}

}  // namespace shale
