#pragma once

// Capture-to-report orchestration: segment -> cell search -> frame slice ->
// channel estimate / RSRP / coherence bandwidth -> trajectory join ->
// propagation analytics.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "a2g/channel_estimation.hpp"
#include "a2g/geo.hpp"
#include "a2g/iq_file.hpp"
#include "a2g/propagation.hpp"
#include "a2g/receiver_sync.hpp"

namespace a2g::campaign {

using json = nlohmann::json;

struct PipelineConfig {
  std::filesystem::path capture_dir;
  std::vector<std::filesystem::path> gps_logs;
  std::filesystem::path output_dir = "out";
  GeoPoint tower;  // ground position of the tower base
  double tower_height = prop::kDefaultTowerHeight;
  double clock_offset_s = 0.0;  // GPS time = capture time + offset
  double calibration_offset_db = 0.0;
  double carrier_hz = prop::kDefaultCarrierHz;
  SegmentOptions segment;
  sync::SyncOptions sync;
  prop::AntennaPattern tx_pattern = prop::AntennaPattern::half_wave_dipole();
  prop::AntennaPattern rx_pattern = prop::AntennaPattern::half_wave_dipole();
  prop::Reflection reflection;
  prop::PathLossKind path_loss = prop::PathLossKind::TwoRayFresnel;
  prop::CoherenceOptions coherence;
  prop::SpatialCorrelationOptions horizontal_correlation;
  prop::SpatialCorrelationOptions vertical_correlation;
  double track_gap_s = 5.0;
  double max_failure_fraction = 0.5;
  lte::OfdmParams params;

  // Paths in the document are relative to `base_dir`.
  static PipelineConfig from_json(const json& doc, const std::filesystem::path& base_dir);
  // Reads a JSON config file; an empty path falls back to $AERIQ_CONFIG.
  static PipelineConfig load(const std::filesystem::path& path);
  prop::TwoRayModel two_ray_model() const;
};

struct FrameExtraction {
  bool skipped = false;
  std::string reason;
  sync::SyncResult sync;
  IqSegment frame;  // CFO-corrected, frame-aligned, one frame long
};

// Cell search on a segment of at least two frames and the aligned frame slice.
FrameExtraction extract_frame(const IqSegment& segment, const lte::OfdmParams& params = {},
                              const sync::SyncOptions& options = {});

// One row of the per-frame CSV.
struct FrameRow {
  double timestamp = 0.0;
  std::size_t frame_index = 0;
  double cfo_hat = 0.0;
  std::size_t timing_offset = 0;
  int pci = 0;
  double rsrp_dbm = 0.0;
  double coherence_bw_hz = 0.0;
  std::optional<double> lat, lon, alt, d3d_m;
};

inline constexpr const char* kFrameCsvHeader =
    "timestamp,frame_index,cfo_hat,timing_offset,pci,rsrp_dbm,coherence_bw_hz,lat,lon,alt,d3d_m";

struct FrameMeasurement {
  chest::ChannelEstimate channel;
  chest::RsrpSample rsrp;
  double coherence_bw_hz = 0.0;
};

FrameMeasurement measure_frame(const FrameExtraction& ex, const PipelineConfig& config);

void write_frames_csv(const std::filesystem::path& path, const std::vector<FrameRow>& rows);
std::vector<FrameRow> read_frames_csv(const std::filesystem::path& path);

// Analytics over positioned rows: per-altitude path-loss fits, shadowing
// distribution, horizontal/vertical shadowing correlation, CFO/RSRP/coherence
// summaries. Sub-analyses that cannot run report {"error": ...}.
json compute_analytics(const std::vector<FrameRow>& rows, const PipelineConfig& config);

struct PipelineReport {
  std::size_t frames_total = 0;
  std::size_t frames_ok = 0;
  std::size_t frames_skipped = 0;
  std::size_t frames_failed = 0;
  std::vector<FrameRow> rows;
  json analytics;
};

// Writes <output_dir>/frames.csv and <output_dir>/analytics.json. Throws
// PipelineError (after writing) when more than max_failure_fraction of the
// frames were skipped or failed.
PipelineReport run_pipeline(const PipelineConfig& config);

// {"error": {"type": ..., "message": ...}} and the process exit code for an
// exception escaping the pipeline.
json error_report(const std::exception& e);
int exit_code_for(const std::exception& e);

}  // namespace a2g::campaign
