#pragma once

// Synthetic measurement campaigns: a UAV flying zig-zag legs around a tower,
// received through the two-ray model with correlated shadowing, written as
// I/Q captures, GPS logs, a pipeline config and the ground truth.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "a2g/geo.hpp"
#include "a2g/iq_file.hpp"
#include "a2g/lte_waveform.hpp"
#include "a2g/propagation.hpp"

namespace a2g::synth {

// Piecewise-linear path through 3-D waypoints. Every leg starts and ends at
// rest with a trapezoidal speed profile, so the speed dips at each turn.
class Flight {
 public:
  Flight(std::vector<campaign::Enu> waypoints, double max_speed, double acceleration);

  double duration() const { return end_times_.empty() ? 0.0 : end_times_.back(); }
  // Position t seconds after departure; held at the ends outside [0, duration].
  campaign::Enu position(double t) const;
  double speed(double t) const;

 private:
  struct Leg {
    campaign::Enu from, to;
    double length, t_ramp, t_cruise, v_peak;
  };
  double along(const Leg& leg, double t, double* v) const;

  std::vector<Leg> legs_;
  std::vector<double> end_times_;
  double accel_;
};

// Vertical climb from `start_altitude` at (east_min, -north_half), then
// north/south lines `east_step` apart up to east_max.
std::vector<campaign::Enu> zigzag_waypoints(double altitude, double east_min = 100.0, double east_max = 700.0,
                                            double north_half = 300.0, double east_step = 100.0,
                                            double start_altitude = 5.0);

struct CampaignSpec {
  std::vector<double> altitudes{30.0, 70.0, 90.0};
  double duration_s = 60.0;  // per flight
  double flight_gap_s = 30.0;
  double start_time_unix = 1.7e9;
  int pci = 311;
  double cfo_mean = -0.11;
  double cfo_jitter = 0.008;  // uniform half-width, per record
  double p_offset_db = 40.0;
  double shadow_sigma_db = 2.0;
  double shadow_distance_m = 50.0;  // AR(1) decorrelation distance
  double noise_power_db = -85.0;    // per sample, absolute
  double calibration_offset_db = -20.0;
  double max_speed = 10.0;
  double acceleration = 2.0;
  double gps_rate_hz = 1.0;
  campaign::GeoPoint tower{35.7275, -78.6960, 0.0};
  double tower_height = prop::kDefaultTowerHeight;
  double carrier_hz = prop::kDefaultCarrierHz;
  prop::Reflection reflection = prop::Reflection::fresnel(15.0);
  campaign::SampleFormat format = campaign::SampleFormat::Sc16;
  // Records mode writes one 20 ms record every 100 ms with a random frame
  // phase; otherwise the capture is a continuous stream.
  bool records = true;
  std::uint64_t seed = 1;

  prop::TwoRayModel model() const;
};

struct CampaignFiles {
  std::filesystem::path config;
  std::filesystem::path truth;
  std::vector<std::filesystem::path> captures;
  std::vector<std::filesystem::path> gps_logs;
  std::size_t clipped = 0;
};

// Writes captures/, gps/, config.json and truth.csv under `dir`. Memory use
// is bounded by one record regardless of duration.
CampaignFiles generate_campaign(const CampaignSpec& spec, const std::filesystem::path& dir);

inline constexpr const char* kTruthCsvHeader =
    "capture,frame_index,timestamp,timing_offset,cfo,pci,rsrp_dbm,shadow_db,east,north,up";

}  // namespace a2g::synth
