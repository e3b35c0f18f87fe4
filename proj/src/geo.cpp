#include "a2g/geo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "a2g/errors.hpp"
#include "a2g/propagation.hpp"

namespace a2g::campaign {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

std::vector<TrajectoryPoint> parse_gps_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open GPS log " + path.string());
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "timestamp,lat,lon,alt") throw FormatError(path.string() + ": expected header timestamp,lat,lon,alt");

  std::vector<TrajectoryPoint> pts;
  std::vector<std::size_t> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string f[4];
    for (auto& s : f)
      if (!std::getline(ss, s, ',')) throw FormatError(path.string() + ": row " + std::to_string(row) + " has fewer than 4 fields");
    TrajectoryPoint p;
    try {
      p.timestamp = std::stod(f[0]);
      p.lat = std::stod(f[1]);
      p.lon = std::stod(f[2]);
      p.alt = std::stod(f[3]);
    } catch (const std::exception&) {
      throw FormatError(path.string() + ": row " + std::to_string(row) + " is not numeric");
    }
    pts.push_back(p);
    rows.push_back(row);
  }
  std::string bad;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i].timestamp > pts[i - 1].timestamp)) bad += (bad.empty() ? "" : ", ") + std::to_string(rows[i]);
  if (!bad.empty()) throw DataError(path.string() + ": timestamps not strictly increasing at rows " + bad);
  return pts;
}

void write_gps_log(const std::filesystem::path& path, const std::vector<TrajectoryPoint>& points) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "timestamp,lat,lon,alt\n";
  out.precision(17);
  for (const auto& p : points) out << p.timestamp << ',' << p.lat << ',' << p.lon << ',' << p.alt << '\n';
}

Enu to_enu(const GeoPoint& point, const GeoPoint& origin) {
  return Enu{kEarthRadius * std::cos(origin.lat * kDeg) * (point.lon - origin.lon) * kDeg,
             kEarthRadius * (point.lat - origin.lat) * kDeg, point.alt - origin.alt};
}

GeoPoint from_enu(const Enu& enu, const GeoPoint& origin) {
  return GeoPoint{origin.lat + enu.north / kEarthRadius / kDeg,
                  origin.lon + enu.east / (kEarthRadius * std::cos(origin.lat * kDeg)) / kDeg, origin.alt + enu.up};
}

std::vector<TrajectoryPoint> with_enu(std::vector<TrajectoryPoint> points, const GeoPoint& origin) {
  for (auto& p : points) p.enu = to_enu({p.lat, p.lon, p.alt}, origin);
  return points;
}

std::vector<std::pair<double, double>> speed_from_gps(const std::vector<TrajectoryPoint>& points, std::size_t smoothing) {
  if (points.size() < 2) throw DomainError("speed_from_gps: need at least 2 points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].timestamp > points[i - 1].timestamp))
      throw DataError("speed_from_gps: duplicate or decreasing timestamp at point " + std::to_string(i));
  // positions relative to the first point
  const GeoPoint origin{points[0].lat, points[0].lon, points[0].alt};
  std::vector<Enu> e;
  for (const auto& p : points) e.push_back(to_enu({p.lat, p.lon, p.alt}, origin));
  auto dist = [&](std::size_t a, std::size_t b) {
    return std::sqrt((e[a].east - e[b].east) * (e[a].east - e[b].east) + (e[a].north - e[b].north) * (e[a].north - e[b].north) +
                     (e[a].up - e[b].up) * (e[a].up - e[b].up));
  };
  std::vector<double> v(points.size());
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 == n ? n - 1 : i + 1;
    v[i] = dist(a, b) / (points[b].timestamp - points[a].timestamp);
  }
  if (smoothing > 1) v = prop::moving_average(v, smoothing);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(points[i].timestamp, v[i]);
  return out;
}

std::optional<TrajectoryPoint> geo_align(double t, const std::vector<TrajectoryPoint>& trajectory, double clock_offset_s) {
  if (trajectory.empty()) return std::nullopt;
  const double q = t + clock_offset_s;
  if (q < trajectory.front().timestamp || q > trajectory.back().timestamp) return std::nullopt;
  auto hi = std::lower_bound(trajectory.begin(), trajectory.end(), q,
                             [](const TrajectoryPoint& p, double v) { return p.timestamp < v; });
  if (hi->timestamp == q) return *hi;
  const auto& b = *hi;
  const auto& a = *(hi - 1);
  const double w = (q - a.timestamp) / (b.timestamp - a.timestamp);
  auto lerp = [w](double x, double y) { return x + w * (y - x); };
  TrajectoryPoint p;
  p.timestamp = q;
  p.lat = lerp(a.lat, b.lat);
  p.lon = lerp(a.lon, b.lon);
  p.alt = lerp(a.alt, b.alt);
  p.enu = {lerp(a.enu.east, b.enu.east), lerp(a.enu.north, b.enu.north), lerp(a.enu.up, b.enu.up)};
  return p;
}

}  // namespace a2g::campaign
