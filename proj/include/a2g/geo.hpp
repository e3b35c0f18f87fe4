#pragma once

// GPS trajectories: parsing, local east/north/up coordinates, speed and
// time alignment with captured frames.

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

namespace a2g::campaign {

// Equatorial radius used by the equirectangular projection (WGS-84 a).
inline constexpr double kEarthRadius = 6378137.0;

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
  double alt = 0.0;
};

struct Enu {
  double east = 0.0;
  double north = 0.0;
  double up = 0.0;
};

struct TrajectoryPoint {
  double timestamp = 0.0;
  double lat = 0.0;
  double lon = 0.0;
  double alt = 0.0;
  Enu enu;  // filled by to_enu / with_enu
};

// CSV with header `timestamp,lat,lon,alt`; timestamps must strictly increase.
std::vector<TrajectoryPoint> parse_gps_log(const std::filesystem::path& path);
void write_gps_log(const std::filesystem::path& path, const std::vector<TrajectoryPoint>& points);

// Equirectangular tangent plane at the origin; adequate within a few km.
Enu to_enu(const GeoPoint& point, const GeoPoint& origin);
GeoPoint from_enu(const Enu& enu, const GeoPoint& origin);
std::vector<TrajectoryPoint> with_enu(std::vector<TrajectoryPoint> points, const GeoPoint& origin);

// Central-difference 3-D speed (one-sided at the ends), optionally smoothed
// with a centered moving average of `smoothing` points.
std::vector<std::pair<double, double>> speed_from_gps(const std::vector<TrajectoryPoint>& points,
                                                      std::size_t smoothing = 1);

// Position at frame time t + clock_offset_s by linear interpolation; nullopt
// outside the trajectory's time span. Points must carry ENU coordinates.
std::optional<TrajectoryPoint> geo_align(double t, const std::vector<TrajectoryPoint>& trajectory,
                                         double clock_offset_s = 0.0);

}  // namespace a2g::campaign
