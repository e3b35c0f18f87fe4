#include "a2g/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>
#include <json.hpp>

#include "a2g/errors.hpp"
#include "a2g/impairments.hpp"

namespace a2g::synth {

namespace fs = std::filesystem;
using campaign::Enu;

namespace {

double distance(const Enu& a, const Enu& b) {
  return std::sqrt((a.east - b.east) * (a.east - b.east) + (a.north - b.north) * (a.north - b.north) +
                   (a.up - b.up) * (a.up - b.up));
}

}  // namespace

Flight::Flight(std::vector<Enu> waypoints, double max_speed, double acceleration) : accel_(acceleration) {
  if (waypoints.size() < 2) throw DomainError("Flight: needs at least two waypoints");
  if (!(max_speed > 0.0) || !(acceleration > 0.0)) throw DomainError("Flight: speed and acceleration must be positive");
  double t = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    Leg leg{waypoints[i - 1], waypoints[i], distance(waypoints[i - 1], waypoints[i]), 0.0, 0.0, 0.0};
    if (leg.length <= 0.0) continue;
    if (leg.length >= max_speed * max_speed / acceleration) {
      leg.v_peak = max_speed;
      leg.t_ramp = max_speed / acceleration;
      leg.t_cruise = (leg.length - max_speed * max_speed / acceleration) / max_speed;
    } else {
      leg.v_peak = std::sqrt(acceleration * leg.length);
      leg.t_ramp = leg.v_peak / acceleration;
    }
    t += 2.0 * leg.t_ramp + leg.t_cruise;
    legs_.push_back(leg);
    end_times_.push_back(t);
  }
  if (legs_.empty()) throw DomainError("Flight: waypoints do not move");
}

double Flight::along(const Leg& leg, double t, double* v) const {
  const double total = 2.0 * leg.t_ramp + leg.t_cruise;
  if (t <= 0.0) {
    *v = 0.0;
    return 0.0;
  }
  if (t >= total) {
    *v = 0.0;
    return leg.length;
  }
  if (t < leg.t_ramp) {
    *v = accel_ * t;
    return 0.5 * accel_ * t * t;
  }
  if (t < leg.t_ramp + leg.t_cruise) {
    *v = leg.v_peak;
    return 0.5 * accel_ * leg.t_ramp * leg.t_ramp + leg.v_peak * (t - leg.t_ramp);
  }
  const double left = total - t;
  *v = accel_ * left;
  return leg.length - 0.5 * accel_ * left * left;
}

Enu Flight::position(double t) const {
  std::size_t i = 0;
  while (i + 1 < legs_.size() && t > end_times_[i]) ++i;
  const auto& leg = legs_[i];
  const double start = i == 0 ? 0.0 : end_times_[i - 1];
  double v = 0.0;
  const double f = along(leg, t - start, &v) / leg.length;
  return {leg.from.east + f * (leg.to.east - leg.from.east), leg.from.north + f * (leg.to.north - leg.from.north),
          leg.from.up + f * (leg.to.up - leg.from.up)};
}

double Flight::speed(double t) const {
  std::size_t i = 0;
  while (i + 1 < legs_.size() && t > end_times_[i]) ++i;
  double v = 0.0;
  along(legs_[i], t - (i == 0 ? 0.0 : end_times_[i - 1]), &v);
  return v;
}

std::vector<Enu> zigzag_waypoints(double altitude, double east_min, double east_max, double north_half,
                                  double east_step, double start_altitude) {
  if (!(east_step > 0.0) || east_max < east_min) throw DomainError("zigzag_waypoints: bad east range");
  std::vector<Enu> w{{east_min, -north_half, start_altitude}, {east_min, -north_half, altitude}};
  double north = -north_half;
  for (double e = east_min;; e += east_step) {
    if (e != east_min) w.push_back({e, north, altitude});
    north = -north;
    w.push_back({e, north, altitude});
    if (e + east_step > east_max + 1e-9) break;
  }
  return w;
}

prop::TwoRayModel CampaignSpec::model() const {
  prop::TwoRayModel m;
  m.wavelength = prop::kSpeedOfLight / carrier_hz;
  m.tx_pattern = prop::AntennaPattern::half_wave_dipole();
  m.rx_pattern = prop::AntennaPattern::half_wave_dipole();
  m.reflection = reflection;
  return m;
}

namespace {

struct FlightState {
  const CampaignSpec& spec;
  const prop::TwoRayModel& model;
  const Flight& flight;
  impair::GaussianSource rng;
  impair::GaussianSource noise;
  double shadow = 0.0;
  bool started = false;
  Enu last;
  cplx phase;

  // Received CRS-RE amplitude and truth at flight time t.
  struct Sample {
    double rsrp_dbm, shadow_db, amplitude;
    Enu enu;
  };
  Sample at(double t) {
    const auto p = flight.position(t);
    if (!started) {
      shadow = spec.shadow_sigma_db * rng.next();
      started = true;
    } else {
      const double rho = std::exp(-distance(p, last) / spec.shadow_distance_m);
      shadow = rho * shadow + std::sqrt(1.0 - rho * rho) * spec.shadow_sigma_db * rng.next();
    }
    last = p;
    const auto geom = prop::link_geometry(std::hypot(p.east, p.north), spec.tower_height, p.up);
    const double rsrp = spec.p_offset_db + prop::to_db(prop::eval_two_ray(model, geom)) + shadow;
    return {rsrp, shadow, std::pow(10.0, (rsrp - spec.calibration_offset_db) / 20.0), p};
  }

  double cfo() { return spec.cfo_mean + spec.cfo_jitter * (2.0 * rng.uniform() - 1.0); }

  void add_noise(std::vector<cplx>& x) {
    const double sigma = std::sqrt(std::pow(10.0, spec.noise_power_db / 10.0) / 2.0);
    for (auto& v : x) {
      const double re = noise.next();
      v += sigma * cplx(re, noise.next());
    }
  }
};

void write_truth_row(std::ofstream& out, const std::string& capture, std::size_t index, double timestamp,
                     std::size_t timing, double cfo, int pci, const FlightState::Sample& s) {
  out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", capture, index, timestamp, timing, cfo, pci, s.rsrp_dbm,
                     s.shadow_db, s.enu.east, s.enu.north, s.enu.up);
}

}  // namespace

CampaignFiles generate_campaign(const CampaignSpec& spec, const fs::path& dir) {
  if (spec.altitudes.empty()) throw DomainError("generate_campaign: no altitudes");
  if (!(spec.duration_s >= 0.02)) throw DomainError("generate_campaign: duration below one 20 ms record");
  const lte::OfdmParams params;
  const auto cell = lte::CellIdentity::from_pci(spec.pci);
  const auto base = lte::ofdm_modulate(lte::map_frame(cell, params, 10), params).samples;
  const auto frame = base.size();
  const double fs_hz = params.sample_rate;
  const auto record_len = static_cast<std::size_t>(std::llround(0.02 * fs_hz));
  const auto record_stride = static_cast<std::size_t>(std::llround(0.1 * fs_hz));
  const auto model = spec.model();

  CampaignFiles files;
  fs::create_directories(dir / "captures");
  fs::create_directories(dir / "gps");
  files.truth = dir / "truth.csv";
  std::ofstream truth(files.truth, std::ios::binary | std::ios::trunc);
  truth << kTruthCsvHeader << '\n';

  for (std::size_t f = 0; f < spec.altitudes.size(); ++f) {
    const double alt = spec.altitudes[f];
    const Flight flight(zigzag_waypoints(alt), spec.max_speed, spec.acceleration);
    const double t0 = spec.start_time_unix + static_cast<double>(f) * (spec.duration_s + spec.flight_gap_s);
    const auto stem = fmt::format("flight_{:03}m", static_cast<int>(std::lround(alt)));
    const auto ext = spec.format == campaign::SampleFormat::Sc16 ? ".sc16" : ".cf32";
    const auto capture = dir / "captures" / (stem + ext);
    FlightState st{spec, model, flight,
                   impair::GaussianSource(spec.seed * 2654435761ULL + 2 * f),
                   impair::GaussianSource(spec.seed * 2654435761ULL + 2 * f + 1)};
    st.phase = std::polar(1.0, 2.0 * std::numbers::pi * st.rng.uniform());

    campaign::CaptureMetadata meta;
    meta.sample_rate_hz = fs_hz;
    meta.center_freq_hz = spec.carrier_hz;
    meta.format = spec.format;
    meta.start_time_unix = t0;
    const auto total = static_cast<std::size_t>(std::floor(spec.duration_s * fs_hz + 1e-6));

    if (spec.records) {
      meta.record_samples = record_len;
      meta.record_period_s = 0.1;
      campaign::IqWriter writer(capture, meta);
      std::vector<cplx> rec(record_len);
      for (std::size_t k = 0; k * record_stride + record_len <= total; ++k) {
        const auto shift = static_cast<std::size_t>(st.rng.uniform() * static_cast<double>(frame)) % frame;
        const std::size_t timing = (frame - shift) % frame;
        const double t_frame = static_cast<double>(k) * 0.1 + static_cast<double>(timing) / fs_hz;
        const auto s = st.at(t_frame);
        const double delta = st.cfo();
        const cplx gain = s.amplitude * st.phase;
        for (std::size_t n = 0; n < record_len; ++n)
          rec[n] = gain * base[(n + shift) % frame] *
                   std::polar(1.0, 2.0 * std::numbers::pi * delta * static_cast<double>(n) / params.n_fft);
        st.add_noise(rec);
        writer.write(rec);
        write_truth_row(truth, capture.filename().string(), k, t0 + t_frame, timing, delta, spec.pci, s);
      }
      files.clipped += writer.clipped();
    } else {
      campaign::IqWriter writer(capture, meta);
      const auto shift = static_cast<std::size_t>(st.rng.uniform() * static_cast<double>(frame)) % frame;
      const std::size_t lead = (frame - shift) % frame;
      double phi = 0.0;
      std::vector<cplx> chunk;
      std::size_t n0 = 0;
      auto emit = [&](std::size_t begin, std::size_t count, const FlightState::Sample& s, double delta) {
        chunk.resize(count);
        const cplx gain = s.amplitude * st.phase;
        for (std::size_t i = 0; i < count; ++i)
          chunk[i] = gain * base[begin + i] *
                     std::polar(1.0, phi + 2.0 * std::numbers::pi * delta * static_cast<double>(i) / params.n_fft);
        phi = std::fmod(phi + 2.0 * std::numbers::pi * delta * static_cast<double>(count) / params.n_fft,
                        2.0 * std::numbers::pi);
        st.add_noise(chunk);
        writer.write(chunk);
        n0 += count;
      };
      // Frame boundaries fall at lead + j * frame; every cadence segment
      // therefore finds its frame at offset `lead`.
      const double delta0 = st.cfo();
      if (lead > 0) emit(shift, std::min(lead, total), st.at(0.0), delta0);
      for (std::size_t j = 0; n0 < total; ++j) {
        const double t_frame = static_cast<double>(n0) / fs_hz;
        const auto s = st.at(t_frame);
        const double delta = st.cfo();
        const std::size_t count = std::min(frame, total - n0);
        const bool cadence = (n0 - lead) % record_stride == 0;
        const std::size_t k = (n0 - lead) / record_stride;
        if (cadence && k * record_stride + record_len <= total)
          write_truth_row(truth, capture.filename().string(), k, t0 + t_frame, lead, delta, spec.pci, s);
        emit(0, count, s, delta);
      }
      files.clipped += writer.clipped();
    }
    files.captures.push_back(capture);

    std::vector<campaign::TrajectoryPoint> gps;
    const double dt = 1.0 / spec.gps_rate_hz;
    for (double t = -2.0; t <= spec.duration_s + 2.0 + 1e-9; t += dt) {
      const auto p = flight.position(std::max(t, 0.0));
      const auto g = campaign::from_enu(p, spec.tower);
      gps.push_back({t0 + t, g.lat, g.lon, g.alt, p});
    }
    const auto gps_path = dir / "gps" / (stem + ".csv");
    campaign::write_gps_log(gps_path, gps);
    files.gps_logs.push_back(gps_path);
  }

  nlohmann::json cfg;
  cfg["capture_dir"] = "captures";
  cfg["gps_logs"] = nlohmann::json::array();
  for (const auto& g : files.gps_logs) cfg["gps_logs"].push_back(fs::relative(g, dir).generic_string());
  cfg["output_dir"] = "out";
  cfg["tower"] = {{"lat", spec.tower.lat}, {"lon", spec.tower.lon}, {"alt", spec.tower.alt}, {"height_m", spec.tower_height}};
  cfg["calibration_offset_db"] = spec.calibration_offset_db;
  cfg["carrier_hz"] = spec.carrier_hz;
  cfg["antenna"] = {{"tx", "dipole"}, {"rx", "dipole"}};
  cfg["path_loss"] = {{"model", "two_ray_fresnel"}};
  files.config = dir / "config.json";
  std::ofstream(files.config, std::ios::binary | std::ios::trunc) << cfg.dump(2) << '\n';
  return files;
}

}  // namespace a2g::synth
