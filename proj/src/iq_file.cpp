#include "a2g/iq_file.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include <json.hpp>

#include "a2g/errors.hpp"

namespace a2g::campaign {

namespace {

using json = nlohmann::json;

template <typename T>
T load_le(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof v);
  if constexpr (std::endian::native == std::endian::big) {
    auto* b = reinterpret_cast<unsigned char*>(&v);
    std::reverse(b, b + sizeof v);
  }
  return v;
}

template <typename T>
void store_le(char* p, T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto* b = reinterpret_cast<unsigned char*>(&v);
    std::reverse(b, b + sizeof v);
  }
  std::memcpy(p, &v, sizeof v);
}

}  // namespace

SampleFormat parse_format(const std::string& name) {
  if (name == "sc16") return SampleFormat::Sc16;
  if (name == "cf32") return SampleFormat::Cf32;
  throw ConfigError("unknown sample format '" + name + "' (expected sc16 or cf32)");
}

std::string format_name(SampleFormat f) { return f == SampleFormat::Sc16 ? "sc16" : "cf32"; }

std::size_t bytes_per_sample(SampleFormat f) { return f == SampleFormat::Sc16 ? 4 : 8; }

std::filesystem::path sidecar_path(const std::filesystem::path& capture) {
  auto p = capture;
  return p.replace_extension(".json");
}

CaptureMetadata read_metadata(const std::filesystem::path& sidecar) {
  std::ifstream in(sidecar);
  if (!in) throw ConfigError("missing capture metadata " + sidecar.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(sidecar.string() + ": " + e.what());
  }
  CaptureMetadata m;
  try {
    for (const char* key : {"sample_rate_hz", "center_freq_hz", "format", "start_time_unix"})
      if (!j.contains(key)) throw ConfigError(sidecar.string() + ": missing key " + key);
    m.sample_rate_hz = j.at("sample_rate_hz").get<double>();
    m.center_freq_hz = j.at("center_freq_hz").get<double>();
    m.format = parse_format(j.at("format").get<std::string>());
    m.start_time_unix = j.at("start_time_unix").get<double>();
    if (j.contains("record_samples")) m.record_samples = j.at("record_samples").get<std::size_t>();
    if (j.contains("record_period_s")) m.record_period_s = j.at("record_period_s").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(sidecar.string() + ": " + e.what());
  }
  if (!(m.sample_rate_hz > 0.0)) throw ConfigError(sidecar.string() + ": sample_rate_hz must be positive");
  if (m.records() && (*m.record_samples == 0 || !m.record_period_s))
    throw ConfigError(sidecar.string() + ": record_samples needs a positive value and record_period_s");
  return m;
}

void write_metadata(const std::filesystem::path& sidecar, const CaptureMetadata& meta) {
  json j;
  j["sample_rate_hz"] = meta.sample_rate_hz;
  j["center_freq_hz"] = meta.center_freq_hz;
  j["format"] = format_name(meta.format);
  j["start_time_unix"] = meta.start_time_unix;
  if (meta.record_samples) j["record_samples"] = *meta.record_samples;
  if (meta.record_period_s) j["record_period_s"] = *meta.record_period_s;
  std::ofstream out(sidecar);
  if (!out) throw ConfigError("cannot write " + sidecar.string());
  out << j.dump(2) << '\n';
}

IqReader::IqReader(const std::filesystem::path& path, std::optional<CaptureMetadata> meta)
    : path_(path), meta_(meta ? *meta : read_metadata(sidecar_path(path))) {
  in_.open(path, std::ios::binary);
  if (!in_) throw ConfigError("cannot open capture " + path.string());
  const auto bytes = std::filesystem::file_size(path);
  const auto width = bytes_per_sample(meta_.format);
  if (bytes % width != 0)
    throw FormatError(path.string() + ": " + std::to_string(bytes) + " bytes is not a whole number of " +
                      std::to_string(width) + "-byte " + format_name(meta_.format) + " samples");
  total_ = bytes / width;
  if (meta_.records() && total_ % *meta_.record_samples != 0)
    throw FormatError(path.string() + ": " + std::to_string(total_) + " samples is not a whole number of " +
                      std::to_string(*meta_.record_samples) + "-sample records");
}

std::vector<cplx> IqReader::read(std::size_t offset, std::size_t count) {
  if (offset > total_) return {};
  count = std::min(count, total_ - offset);
  const auto width = bytes_per_sample(meta_.format);
  buf_.resize(count * width);
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(offset * width));
  in_.read(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  if (static_cast<std::size_t>(in_.gcount()) != buf_.size())
    throw FormatError(path_.string() + ": short read at byte " + std::to_string(offset * width));
  std::vector<cplx> out(count);
  if (meta_.format == SampleFormat::Sc16) {
    for (std::size_t i = 0; i < count; ++i) {
      const char* p = buf_.data() + 4 * i;
      out[i] = {load_le<std::int16_t>(p) / 32768.0, load_le<std::int16_t>(p + 2) / 32768.0};
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const char* p = buf_.data() + 8 * i;
      out[i] = {load_le<float>(p), load_le<float>(p + 4)};
    }
  }
  return out;
}

IqWriter::IqWriter(const std::filesystem::path& path, const CaptureMetadata& meta) : format_(meta.format) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw ConfigError("cannot write capture " + path.string());
  write_metadata(sidecar_path(path), meta);
}

void IqWriter::write(const std::vector<cplx>& samples) {
  const auto width = bytes_per_sample(format_);
  buf_.resize(samples.size() * width);
  if (format_ == SampleFormat::Sc16) {
    auto q = [this](double v) {
      const double s = std::nearbyint(v * 32768.0);
      if (s > 32767.0 || s < -32768.0) ++clipped_;
      return static_cast<std::int16_t>(std::clamp(s, -32768.0, 32767.0));
    };
    for (std::size_t i = 0; i < samples.size(); ++i) {
      store_le(buf_.data() + 4 * i, q(samples[i].real()));
      store_le(buf_.data() + 4 * i + 2, q(samples[i].imag()));
    }
  } else {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      store_le(buf_.data() + 8 * i, static_cast<float>(samples[i].real()));
      store_le(buf_.data() + 8 * i + 4, static_cast<float>(samples[i].imag()));
    }
  }
  out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  if (!out_) throw ConfigError("write failed");
}

void write_iq(const std::filesystem::path& path, const std::vector<cplx>& samples, const CaptureMetadata& meta) {
  IqWriter w(path, meta);
  w.write(samples);
}

IqSegment read_iq(const std::filesystem::path& path, std::optional<CaptureMetadata> meta) {
  IqReader r(path, std::move(meta));
  IqSegment seg;
  seg.samples = r.read(0, r.total_samples());
  seg.sample_rate = r.metadata().sample_rate_hz;
  seg.center_freq = r.metadata().center_freq_hz;
  seg.start_time = r.metadata().start_time_unix;
  return seg;
}

SegmentStream::SegmentStream(IqReader& reader, const SegmentOptions& options) : reader_(reader) {
  const auto& m = reader.metadata();
  if (m.records()) {
    stride_ = length_ = *m.record_samples;
    period_ = *m.record_period_s;
  } else {
    if (!(options.cadence_s > 0.0) || !(options.length_s > 0.0)) throw ConfigError("segment cadence and length must be positive");
    stride_ = static_cast<std::size_t>(std::llround(options.cadence_s * m.sample_rate_hz));
    length_ = static_cast<std::size_t>(std::llround(options.length_s * m.sample_rate_hz));
    period_ = options.cadence_s;
  }
}

std::optional<CaptureSegment> SegmentStream::next() {
  const std::size_t start = k_ * stride_;
  if (start + length_ > reader_.total_samples()) return std::nullopt;
  CaptureSegment seg;
  seg.capture_offset = start;
  seg.index = k_;
  seg.data.samples = reader_.read(start, length_);
  seg.data.sample_rate = reader_.metadata().sample_rate_hz;
  seg.data.center_freq = reader_.metadata().center_freq_hz;
  seg.data.start_time = reader_.metadata().start_time_unix + static_cast<double>(k_) * period_;
  ++k_;
  ++count_;
  return seg;
}

}  // namespace a2g::campaign
