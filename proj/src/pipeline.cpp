#include "a2g/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "a2g/errors.hpp"

namespace a2g::campaign {

namespace fs = std::filesystem;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown config key '" + where + k + "'");
}

prop::AntennaPattern load_pattern(const json& j, const fs::path& base) {
  const auto name = j.get<std::string>();
  if (name == "isotropic") return prop::AntennaPattern::isotropic();
  if (name == "dipole") return prop::AntennaPattern::half_wave_dipole();
  return prop::AntennaPattern::from_csv(base / name);
}

prop::PathLossKind parse_kind(const std::string& s) {
  if (s == "two_ray_fresnel") return prop::PathLossKind::TwoRayFresnel;
  if (s == "two_ray_constant") return prop::PathLossKind::TwoRayConstant;
  if (s == "free_space") return prop::PathLossKind::FreeSpace;
  throw ConfigError("unknown path_loss.model '" + s + "'");
}

std::string kind_name(prop::PathLossKind k) {
  switch (k) {
    case prop::PathLossKind::TwoRayFresnel: return "two_ray_fresnel";
    case prop::PathLossKind::TwoRayConstant: return "two_ray_constant";
    case prop::PathLossKind::FreeSpace: return "free_space";
  }
  return "";
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& doc, const fs::path& base) {
  PipelineConfig c;
  try {
    reject_unknown(doc,
                   {"capture_dir", "gps_log", "gps_logs", "output_dir", "tower", "clock_offset_s", "calibration_offset_db",
                    "carrier_hz", "segment", "sync", "antenna", "reflection", "path_loss", "coherence", "correlation",
                    "track_gap_s", "max_failure_fraction"},
                   "");
    if (doc.contains("capture_dir")) c.capture_dir = base / doc.at("capture_dir").get<std::string>();
    if (doc.contains("gps_log")) c.gps_logs.push_back(base / doc.at("gps_log").get<std::string>());
    if (doc.contains("gps_logs"))
      for (const auto& p : doc.at("gps_logs")) c.gps_logs.push_back(base / p.get<std::string>());
    c.output_dir = base / get_or<std::string>(doc, "output_dir", "out");
    if (doc.contains("tower")) {
      const auto& t = doc.at("tower");
      reject_unknown(t, {"lat", "lon", "alt", "height_m"}, "tower.");
      c.tower = {t.at("lat").get<double>(), t.at("lon").get<double>(), get_or(t, "alt", 0.0)};
      c.tower_height = get_or(t, "height_m", c.tower_height);
    } else if (!c.gps_logs.empty()) {
      throw ConfigError("config with gps logs needs tower {lat, lon}");
    }
    c.clock_offset_s = get_or(doc, "clock_offset_s", 0.0);
    c.calibration_offset_db = get_or(doc, "calibration_offset_db", 0.0);
    c.carrier_hz = get_or(doc, "carrier_hz", c.carrier_hz);
    if (doc.contains("segment")) {
      const auto& s = doc.at("segment");
      reject_unknown(s, {"cadence_s", "length_s"}, "segment.");
      c.segment.cadence_s = get_or(s, "cadence_s", c.segment.cadence_s);
      c.segment.length_s = get_or(s, "length_s", c.segment.length_s);
    }
    if (doc.contains("sync")) {
      const auto& s = doc.at("sync");
      reject_unknown(s, {"mode", "reliability_threshold", "cfo_window_slots"}, "sync.");
      const auto mode = get_or<std::string>(s, "mode", "combined");
      if (mode == "combined")
        c.sync.mode = sync::DetectionMode::PssSssCombined;
      else if (mode == "pss_only")
        c.sync.mode = sync::DetectionMode::PssOnly;
      else
        throw ConfigError("sync.mode must be combined or pss_only");
      if (s.contains("reliability_threshold") && !s.at("reliability_threshold").is_null())
        c.sync.reliability_threshold = s.at("reliability_threshold").get<double>();
      c.sync.cfo.window_slots = get_or(s, "cfo_window_slots", c.sync.cfo.window_slots);
    }
    if (doc.contains("antenna")) {
      const auto& a = doc.at("antenna");
      reject_unknown(a, {"tx", "rx"}, "antenna.");
      if (a.contains("tx")) c.tx_pattern = load_pattern(a.at("tx"), base);
      if (a.contains("rx")) c.rx_pattern = load_pattern(a.at("rx"), base);
    }
    if (doc.contains("reflection")) {
      const auto& r = doc.at("reflection");
      reject_unknown(r, {"kind", "permittivity", "magnitude", "phase_rad"}, "reflection.");
      const auto kind = get_or<std::string>(r, "kind", "fresnel");
      if (kind == "fresnel")
        c.reflection = prop::Reflection::fresnel(get_or(r, "permittivity", 15.0));
      else if (kind == "constant")
        c.reflection = prop::Reflection::fixed(std::polar(get_or(r, "magnitude", 1.0), get_or(r, "phase_rad", std::numbers::pi)));
      else
        throw ConfigError("reflection.kind must be fresnel or constant");
    }
    if (doc.contains("path_loss")) {
      const auto& p = doc.at("path_loss");
      reject_unknown(p, {"model"}, "path_loss.");
      c.path_loss = parse_kind(get_or<std::string>(p, "model", "two_ray_fresnel"));
    }
    if (doc.contains("coherence")) {
      const auto& p = doc.at("coherence");
      reject_unknown(p, {"threshold", "clip_hz"}, "coherence.");
      c.coherence.threshold = get_or(p, "threshold", c.coherence.threshold);
      c.coherence.clip_hz = get_or(p, "clip_hz", c.coherence.clip_hz);
    }
    if (doc.contains("correlation")) {
      const auto& p = doc.at("correlation");
      reject_unknown(p, {"bin_width_m", "max_distance_m", "vertical_bin_width_m", "vertical_max_distance_m"}, "correlation.");
      c.horizontal_correlation.bin_width = get_or(p, "bin_width_m", c.horizontal_correlation.bin_width);
      c.horizontal_correlation.max_distance = get_or(p, "max_distance_m", c.horizontal_correlation.max_distance);
      c.vertical_correlation.bin_width = get_or(p, "vertical_bin_width_m", c.vertical_correlation.bin_width);
      c.vertical_correlation.max_distance = get_or(p, "vertical_max_distance_m", c.vertical_correlation.max_distance);
    }
    c.track_gap_s = get_or(doc, "track_gap_s", c.track_gap_s);
    c.max_failure_fraction = get_or(doc, "max_failure_fraction", c.max_failure_fraction);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  fs::path p = path;
  if (p.empty()) {
    const char* env = std::getenv("AERIQ_CONFIG");
    if (!env || !*env) throw ConfigError("no config given and AERIQ_CONFIG is not set");
    p = env;
  }
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open config " + p.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(p.string() + ": " + e.what());
  }
  return from_json(doc, fs::absolute(p).parent_path());
}

prop::TwoRayModel PipelineConfig::two_ray_model() const {
  prop::TwoRayModel m;
  m.wavelength = prop::kSpeedOfLight / carrier_hz;
  m.tx_pattern = tx_pattern;
  m.rx_pattern = rx_pattern;
  m.reflection = reflection;
  return m;
}

FrameExtraction extract_frame(const IqSegment& segment, const lte::OfdmParams& params, const sync::SyncOptions& options) {
  const auto frame = static_cast<std::size_t>(params.frame_length());
  if (segment.size() < 2 * frame) throw DomainError("extract_frame: segment shorter than two frames");
  FrameExtraction ex;
  ex.sync = sync::cell_search(segment, params, options);
  if (!ex.sync.reliable) {
    ex.skipped = true;
    ex.reason = fmt::format("sync below reliability threshold (peak/median {:.4f})", ex.sync.peak_to_median);
    return ex;
  }
  const auto corrected = sync::correct_cfo(segment, ex.sync.cfo.delta_hat, params.n_fft);
  const auto start = static_cast<std::ptrdiff_t>(ex.sync.timing_offset);
  ex.frame = corrected.with_samples(
      std::vector<cplx>(corrected.samples.begin() + start, corrected.samples.begin() + start + static_cast<std::ptrdiff_t>(frame)),
      start);
  return ex;
}

FrameMeasurement measure_frame(const FrameExtraction& ex, const PipelineConfig& config) {
  const auto& p = config.params;
  const int n_sym = p.symbols_per_subframe() * 10;
  const auto grid = lte::ofdm_demodulate(ex.frame, 0, p, n_sym);
  const auto obs = chest::extract_crs(grid, ex.sync.cell, p.symbols_per_slot);
  FrameMeasurement m;
  m.channel = chest::interpolate_channel(chest::ls_estimate(obs), p.n_subcarriers_used, n_sym);
  m.channel.frame_timestamp = ex.frame.start_time;
  m.rsrp = chest::compute_rsrp(obs, config.calibration_offset_db);
  m.rsrp.timestamp = ex.frame.start_time;
  std::vector<std::vector<cplx>> responses;
  for (int sym = 0; sym < n_sym; ++sym) {
    if (!lte::is_crs_symbol(sym % p.symbols_per_slot, p.symbols_per_slot)) continue;
    const auto col = m.channel.h.column(sym);
    responses.emplace_back(col.begin(), col.end());
  }
  m.coherence_bw_hz = prop::coherence_bandwidth(responses, config.coherence);
  return m;
}

namespace {

std::string num(double v) { return fmt::format("{}", v); }

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

}  // namespace

void write_frames_csv(const fs::path& path, const std::vector<FrameRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << kFrameCsvHeader << '\n';
  for (const auto& r : rows)
    out << num(r.timestamp) << ',' << r.frame_index << ',' << num(r.cfo_hat) << ',' << r.timing_offset << ',' << r.pci << ','
        << num(r.rsrp_dbm) << ',' << num(r.coherence_bw_hz) << ',' << opt_num(r.lat) << ',' << opt_num(r.lon) << ','
        << opt_num(r.alt) << ',' << opt_num(r.d3d_m) << '\n';
}

std::vector<FrameRow> read_frames_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kFrameCsvHeader) throw FormatError(path.string() + ": unexpected header");
  std::vector<FrameRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) throw FormatError(path.string() + ": row " + std::to_string(n) + " needs 11 fields");
    try {
      FrameRow r;
      r.timestamp = std::stod(f[0]);
      r.frame_index = std::stoull(f[1]);
      r.cfo_hat = std::stod(f[2]);
      r.timing_offset = std::stoull(f[3]);
      r.pci = std::stoi(f[4]);
      r.rsrp_dbm = std::stod(f[5]);
      r.coherence_bw_hz = std::stod(f[6]);
      r.lat = parse_opt(f[7]);
      r.lon = parse_opt(f[8]);
      r.alt = parse_opt(f[9]);
      r.d3d_m = parse_opt(f[10]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw FormatError(path.string() + ": row " + std::to_string(n) + " is not numeric");
    }
  }
  return rows;
}

namespace {

json summary(std::vector<double> v) {
  if (v.empty()) return json{{"count", 0}};
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] + w * (v[i + 1] - v[i]) : v[i];
  };
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return json{{"count", v.size()}, {"mean", mean}, {"min", v.front()}, {"q25", q(0.25)},
              {"median", q(0.5)}, {"q75", q(0.75)}, {"max", v.back()}};
}

json reflection_json(const prop::Reflection& r) {
  if (r.kind == prop::Reflection::Kind::Fresnel) return json{{"kind", "fresnel"}, {"permittivity", r.permittivity}};
  return json{{"kind", "constant"}, {"magnitude", std::abs(r.constant)}, {"phase_rad", std::arg(r.constant)}};
}

json path_loss_json(const prop::PathLossFit& f, std::size_t n) {
  json j{{"model", kind_name(f.kind)}, {"samples", n},           {"p_offset_db", f.p_offset_db},
         {"rmse_db", f.rmse_db},       {"oscillation_db", f.oscillation_db}};
  if (f.kind != prop::PathLossKind::FreeSpace) j["reflection"] = reflection_json(f.model.reflection);
  return j;
}

struct Positioned {
  const FrameRow* row;
  Enu enu;
  int track;
  std::size_t track_index;
};

}  // namespace

json compute_analytics(const std::vector<FrameRow>& rows_in, const PipelineConfig& config) {
  std::vector<FrameRow> rows = rows_in;
  std::stable_sort(rows.begin(), rows.end(), [](const FrameRow& a, const FrameRow& b) { return a.timestamp < b.timestamp; });

  json out;
  std::vector<double> cfo, rsrp, cbw;
  for (const auto& r : rows) {
    cfo.push_back(r.cfo_hat);
    rsrp.push_back(r.rsrp_dbm);
    cbw.push_back(r.coherence_bw_hz);
  }
  out["cfo"] = summary(cfo);
  out["rsrp_dbm"] = summary(rsrp);
  out["coherence_bw_hz"] = summary(cbw);

  // Tracks: a new flight starts when the frame index restarts or time jumps.
  std::vector<Positioned> pos;
  int track = -1;
  const FrameRow* prev = nullptr;
  std::size_t first_index = 0;
  for (const auto& r : rows) {
    if (!prev || r.frame_index <= prev->frame_index || r.timestamp - prev->timestamp > config.track_gap_s) {
      ++track;
      first_index = r.frame_index;
    }
    prev = &r;
    if (!r.lat || !r.lon || !r.alt) continue;
    pos.push_back({&r, to_enu({*r.lat, *r.lon, *r.alt}, config.tower), track, r.frame_index - first_index});
  }
  out["positioned_frames"] = pos.size();

  const auto model = config.two_ray_model();
  std::map<int, std::vector<std::size_t>> by_track;
  for (std::size_t i = 0; i < pos.size(); ++i) by_track[pos[i].track].push_back(i);

  auto geometry = [&](const Positioned& p) {
    return prop::link_geometry(std::hypot(p.enu.east, p.enu.north), config.tower_height, p.enu.up);
  };

  std::vector<double> shadow(pos.size(), std::nan(""));
  json tracks = json::array();
  for (const auto& [t, idx] : by_track) {
    std::vector<double> alts;
    std::vector<prop::PathLossSample> samples;
    for (auto i : idx) {
      alts.push_back(pos[i].enu.up);
      if (pos[i].enu.up > 0.0) samples.push_back({geometry(pos[i]), pos[i].row->rsrp_dbm});
    }
    std::sort(alts.begin(), alts.end());
    json tj{{"track", t}, {"frames", idx.size()}, {"altitude_m", alts[alts.size() / 2]}};
    try {
      const auto fit = prop::fit_path_loss(samples, config.path_loss, model);
      tj["path_loss"] = path_loss_json(fit, samples.size());
      std::size_t k = 0;
      for (auto i : idx)
        if (pos[i].enu.up > 0.0) shadow[i] = fit.residuals[k++];
    } catch (const std::exception& e) {
      tj["path_loss"] = json{{"error", e.what()}};
    }
    tracks.push_back(tj);
  }
  out["tracks"] = tracks;

  std::vector<prop::PathLossSample> all;
  for (const auto& p : pos)
    if (p.enu.up > 0.0) all.push_back({geometry(p), p.row->rsrp_dbm});
  try {
    out["path_loss"] = path_loss_json(prop::fit_path_loss(all, config.path_loss, model), all.size());
  } catch (const std::exception& e) {
    out["path_loss"] = json{{"error", e.what()}};
  }

  std::vector<double> values;
  std::vector<prop::ShadowSample> ss;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (std::isnan(shadow[i])) continue;
    values.push_back(shadow[i]);
    ss.push_back({pos[i].enu.east, pos[i].enu.north, pos[i].enu.up, shadow[i], pos[i].track, pos[i].track_index});
  }
  try {
    const auto f = prop::fit_shadowing_distribution(values);
    out["shadowing"] = json{{"samples", values.size()},
                            {"gaussian", {{"mean", f.gaussian.mean}, {"std", f.gaussian.stddev}, {"loglik", f.gaussian_loglik}}},
                            {"skew_gaussian",
                             {{"xi", f.skew.xi}, {"omega", f.skew.omega}, {"alpha", f.skew.alpha}, {"loglik", f.skew_loglik}}}};
  } catch (const std::exception& e) {
    out["shadowing"] = json{{"error", e.what()}};
  }

  auto correlation = [&](prop::CorrelationAxis axis, const prop::SpatialCorrelationOptions& o, bool bi) {
    json j;
    try {
      const auto bins = prop::spatial_correlation(ss, axis, o);
      json b = json::array();
      std::vector<std::pair<double, double>> curve;
      for (const auto& x : bins) {
        b.push_back(json{{"distance_m", x.distance}, {"correlation", x.correlation}, {"pairs", x.pairs}});
        curve.emplace_back(x.distance, x.correlation);
      }
      j["bins"] = b;
      try {
        const auto e = prop::fit_correlation_model(curve, prop::CorrelationModel::Exponential);
        j["exponential"] = json{{"b", e.b1}, {"rmse", e.rmse}};
      } catch (const std::exception& e) {
        j["exponential"] = json{{"error", e.what()}};
      }
      if (bi) {
        try {
          const auto f = prop::fit_correlation_model(curve, prop::CorrelationModel::BiExponential);
          j["bi_exponential"] = json{{"a", f.a}, {"b1", f.b1}, {"b2", f.b2}, {"rmse", f.rmse}};
        } catch (const std::exception& e) {
          j["bi_exponential"] = json{{"error", e.what()}};
        }
      }
    } catch (const std::exception& e) {
      j["error"] = e.what();
    }
    return j;
  };
  out["correlation"] = json{{"horizontal", correlation(prop::CorrelationAxis::Horizontal, config.horizontal_correlation, true)},
                            {"vertical", correlation(prop::CorrelationAxis::Vertical, config.vertical_correlation, false)}};
  return out;
}

PipelineReport run_pipeline(const PipelineConfig& config) {
  config.params.validate();
  if (config.capture_dir.empty() || !fs::is_directory(config.capture_dir))
    throw ConfigError("capture_dir " + config.capture_dir.string() + " is not a directory");
  std::vector<fs::path> captures;
  for (const auto& e : fs::directory_iterator(config.capture_dir)) {
    const auto ext = e.path().extension().string();
    if (e.is_regular_file() && (ext == ".sc16" || ext == ".cf32")) captures.push_back(e.path());
  }
  std::sort(captures.begin(), captures.end());
  if (captures.empty()) throw ConfigError("capture_dir " + config.capture_dir.string() + " holds no .sc16/.cf32 captures");

  std::vector<TrajectoryPoint> trajectory;
  for (const auto& g : config.gps_logs) {
    auto pts = with_enu(parse_gps_log(g), config.tower);
    trajectory.insert(trajectory.end(), pts.begin(), pts.end());
  }
  std::stable_sort(trajectory.begin(), trajectory.end(),
                   [](const TrajectoryPoint& a, const TrajectoryPoint& b) { return a.timestamp < b.timestamp; });
  for (std::size_t i = 1; i < trajectory.size(); ++i)
    if (!(trajectory[i].timestamp > trajectory[i - 1].timestamp))
      throw DataError("gps logs overlap in time at t=" + num(trajectory[i].timestamp));

  PipelineReport rep;
  json failures = json::array();
  for (const auto& path : captures) {
    IqReader reader(path);
    SegmentStream stream(reader, config.segment);
    while (auto seg = stream.next()) {
      ++rep.frames_total;
      try {
        const auto ex = extract_frame(seg->data, config.params, config.sync);
        if (ex.skipped) {
          ++rep.frames_skipped;
          failures.push_back(json{{"capture", path.filename().string()}, {"index", seg->index}, {"reason", ex.reason}});
          continue;
        }
        const auto m = measure_frame(ex, config);
        FrameRow row;
        row.timestamp = ex.frame.start_time;
        row.frame_index = seg->index;
        row.cfo_hat = ex.sync.cfo.delta_hat;
        row.timing_offset = ex.sync.timing_offset;
        row.pci = ex.sync.cell.pci();
        row.rsrp_dbm = m.rsrp.rsrp_dbm;
        row.coherence_bw_hz = m.coherence_bw_hz;
        if (const auto p = geo_align(row.timestamp, trajectory, config.clock_offset_s)) {
          row.lat = p->lat;
          row.lon = p->lon;
          row.alt = p->alt;
          row.d3d_m = std::sqrt(p->enu.east * p->enu.east + p->enu.north * p->enu.north +
                                (p->enu.up - config.tower_height) * (p->enu.up - config.tower_height));
        }
        rep.rows.push_back(row);
        ++rep.frames_ok;
      } catch (const std::exception& e) {
        ++rep.frames_failed;
        failures.push_back(json{{"capture", path.filename().string()}, {"index", seg->index}, {"reason", e.what()}});
      }
    }
  }
  std::stable_sort(rep.rows.begin(), rep.rows.end(),
                   [](const FrameRow& a, const FrameRow& b) { return a.timestamp < b.timestamp; });

  rep.analytics = compute_analytics(rep.rows, config);
  rep.analytics["frames"] = json{{"total", rep.frames_total},
                                 {"ok", rep.frames_ok},
                                 {"skipped", rep.frames_skipped},
                                 {"failed", rep.frames_failed}};
  rep.analytics["failures"] = failures;

  fs::create_directories(config.output_dir);
  write_frames_csv(config.output_dir / "frames.csv", rep.rows);
  {
    std::ofstream out(config.output_dir / "analytics.json", std::ios::binary | std::ios::trunc);
    out << rep.analytics.dump(2) << '\n';
  }
  const auto bad = rep.frames_skipped + rep.frames_failed;
  if (rep.frames_total == 0 ||
      static_cast<double>(bad) > config.max_failure_fraction * static_cast<double>(rep.frames_total))
    throw PipelineError(fmt::format("{} of {} frames failed or were skipped", bad, rep.frames_total));
  return rep;
}

json error_report(const std::exception& e) {
  std::string type = "Error";
  if (dynamic_cast<const ConfigError*>(&e)) type = "ConfigError";
  else if (dynamic_cast<const FormatError*>(&e)) type = "FormatError";
  else if (dynamic_cast<const DataError*>(&e)) type = "DataError";
  else if (dynamic_cast<const PipelineError*>(&e)) type = "PipelineError";
  else if (dynamic_cast<const FitError*>(&e)) type = "FitError";
  else if (dynamic_cast<const DomainError*>(&e)) type = "DomainError";
  return json{{"error", {{"type", type}, {"message", e.what()}}}};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const FormatError*>(&e) || dynamic_cast<const DataError*>(&e)) return 3;
  if (dynamic_cast<const PipelineError*>(&e)) return 4;
  return 1;
}

}  // namespace a2g::campaign
