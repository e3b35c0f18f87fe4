#pragma once

// Raw I/Q capture files with JSON sidecar metadata, and their segmentation
// into 20 ms analysis windows.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "a2g/iq_segment.hpp"

namespace a2g::campaign {

enum class SampleFormat { Sc16, Cf32 };

SampleFormat parse_format(const std::string& name);
std::string format_name(SampleFormat f);
std::size_t bytes_per_sample(SampleFormat f);

struct CaptureMetadata {
  double sample_rate_hz = 1.92e6;
  double center_freq_hz = 3.51e9;
  SampleFormat format = SampleFormat::Cf32;
  double start_time_unix = 0.0;
  // Pre-segmented recordings: the file is a run of fixed-length records, one
  // every record_period_s of wall time.
  std::optional<std::size_t> record_samples;
  std::optional<double> record_period_s;

  bool records() const { return record_samples.has_value(); }
};

// `<dir>/<stem>.json` next to `<dir>/<stem>.<ext>`.
std::filesystem::path sidecar_path(const std::filesystem::path& capture);
CaptureMetadata read_metadata(const std::filesystem::path& sidecar);
void write_metadata(const std::filesystem::path& sidecar, const CaptureMetadata& meta);

// Streaming reader; only the requested window is materialized.
class IqReader {
 public:
  // Metadata from the sidecar unless supplied.
  explicit IqReader(const std::filesystem::path& path, std::optional<CaptureMetadata> meta = std::nullopt);

  const CaptureMetadata& metadata() const { return meta_; }
  const std::filesystem::path& path() const { return path_; }
  std::size_t total_samples() const { return total_; }
  std::vector<cplx> read(std::size_t offset, std::size_t count);

 private:
  std::filesystem::path path_;
  CaptureMetadata meta_;
  std::ifstream in_;
  std::size_t total_ = 0;
  std::vector<char> buf_;
};

// Appending writer; the sidecar is written on construction.
class IqWriter {
 public:
  IqWriter(const std::filesystem::path& path, const CaptureMetadata& meta);
  void write(const std::vector<cplx>& samples);
  std::size_t clipped() const { return clipped_; }  // sc16 samples saturated so far

 private:
  SampleFormat format_;
  std::ofstream out_;
  std::vector<char> buf_;
  std::size_t clipped_ = 0;
};

// One-shot helpers.
void write_iq(const std::filesystem::path& path, const std::vector<cplx>& samples, const CaptureMetadata& meta);
IqSegment read_iq(const std::filesystem::path& path, std::optional<CaptureMetadata> meta = std::nullopt);

struct SegmentOptions {
  double cadence_s = 0.1;
  double length_s = 0.02;
};

struct CaptureSegment {
  IqSegment data;  // start_time is absolute (capture start + offset)
  std::size_t capture_offset = 0;  // first sample within the file
  std::size_t index = 0;           // position in the capture cadence
};

// Cadence mode yields [k*cadence, k*cadence + length) for every complete
// window; record mode passes each file record through as one segment.
class SegmentStream {
 public:
  SegmentStream(IqReader& reader, const SegmentOptions& options = {});
  std::optional<CaptureSegment> next();
  std::size_t count() const { return count_; }

 private:
  IqReader& reader_;
  std::size_t stride_ = 0;
  std::size_t length_ = 0;
  double period_ = 0.0;
  std::size_t count_ = 0;
  std::size_t k_ = 0;
};

}  // namespace a2g::campaign
