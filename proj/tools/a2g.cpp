// Command-line front end: synthetic campaigns, impairment of captures, the
// capture-to-report pipeline, analytics refits and GPS utilities.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "a2g/errors.hpp"
#include "a2g/impairments.hpp"
#include "a2g/pipeline.hpp"
#include "a2g/synthetic.hpp"

namespace fs = std::filesystem;
using a2g::campaign::json;

namespace {

json load_doc(const std::string& path, fs::path* base) {
  fs::path p = path;
  if (p.empty()) {
    const char* env = std::getenv("AERIQ_CONFIG");
    if (!env || !*env) {
      *base = fs::current_path();
      return json::object();
    }
    p = env;
  }
  std::ifstream in(p);
  if (!in) throw a2g::ConfigError("cannot open config " + p.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw a2g::ConfigError(p.string() + ": " + e.what());
  }
  *base = fs::absolute(p).parent_path();
  return doc;
}

std::string abs_str(const std::string& p) { return fs::absolute(p).string(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTE air-to-ground I/Q toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic campaign (captures, GPS logs, config, truth)");
  a2g::synth::CampaignSpec spec;
  std::string gen_dir, gen_format = "sc16";
  bool continuous = false;
  gen->add_option("-o,--output", gen_dir, "campaign directory")->required();
  gen->add_option("--altitudes", spec.altitudes, "flight altitudes in m")->delimiter(',');
  gen->add_option("--duration", spec.duration_s, "seconds per flight");
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"sc16", "cf32"}));
  gen->add_flag("--continuous", continuous, "continuous stream instead of 20 ms records");
  gen->add_option("--pci", spec.pci)->check(CLI::Range(0, 503));
  gen->add_option("--cfo", spec.cfo_mean, "mean CFO, subcarrier spacings");
  gen->add_option("--cfo-jitter", spec.cfo_jitter);
  gen->add_option("--p-offset", spec.p_offset_db);
  gen->add_option("--shadow-sigma", spec.shadow_sigma_db);
  gen->add_option("--shadow-distance", spec.shadow_distance_m);
  gen->add_option("--noise-db", spec.noise_power_db, "noise power per sample, dB");
  gen->add_option("--start-time", spec.start_time_unix);
  gen->add_option("--seed", spec.seed);

  // impair
  auto* imp = app.add_subcommand("impair", "apply multipath, delay, CFO and AWGN to a capture");
  std::string imp_in, imp_out;
  a2g::impair::ImpairmentSpec ispec;
  std::vector<std::string> taps;
  imp->add_option("input", imp_in)->required()->check(CLI::ExistingFile);
  imp->add_option("output", imp_out)->required();
  imp->add_option("--cfo", ispec.cfo);
  imp->add_option("--delay", ispec.delay_samples);
  imp->add_option("--snr", ispec.snr_db, "dB relative to mean nonzero signal power");
  imp->add_option("--seed", ispec.seed);
  imp->add_option("--tap", taps, "delay:re:im, repeatable");

  // analyze
  auto* ana = app.add_subcommand("analyze", "run the capture-to-report pipeline");
  std::string cfg_path, capture_dir, output_dir, mode, model;
  std::vector<std::string> gps_logs;
  std::optional<double> clock_offset, calibration, threshold;
  ana->add_option("-c,--config", cfg_path, "JSON config (default $AERIQ_CONFIG)");
  ana->add_option("--capture-dir", capture_dir);
  ana->add_option("--gps-log", gps_logs);
  ana->add_option("--output-dir", output_dir);
  ana->add_option("--clock-offset", clock_offset, "GPS time minus capture time, s");
  ana->add_option("--calibration-offset", calibration, "dB");
  ana->add_option("--mode", mode)->check(CLI::IsMember({"combined", "pss_only"}));
  ana->add_option("--threshold", threshold, "peak-to-median reliability threshold");
  ana->add_option("--path-loss-model", model)->check(CLI::IsMember({"two_ray_fresnel", "two_ray_constant", "free_space"}));

  // fit
  auto* fit = app.add_subcommand("fit", "recompute analytics from a per-frame CSV");
  std::string fit_csv, fit_cfg, fit_out;
  fit->add_option("frames", fit_csv)->required()->check(CLI::ExistingFile);
  fit->add_option("-c,--config", fit_cfg, "JSON config (default $AERIQ_CONFIG)");
  fit->add_option("-o,--output", fit_out, "analytics JSON (default stdout)");

  // traj
  auto* traj = app.add_subcommand("traj", "GPS log to local coordinates and speed");
  std::string traj_in;
  std::vector<double> origin;
  std::size_t smoothing = 1;
  traj->add_option("gps", traj_in)->required()->check(CLI::ExistingFile);
  traj->add_option("--origin", origin, "lat,lon,alt of the local origin (default first point)")
      ->delimiter(',')
      ->expected(3);
  traj->add_option("--smoothing", smoothing, "moving-average length for speed")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      spec.format = a2g::campaign::parse_format(gen_format);
      spec.records = !continuous;
      const auto files = a2g::synth::generate_campaign(spec, gen_dir);
      std::cout << json{{"config", files.config.string()},
                        {"truth", files.truth.string()},
                        {"captures", files.captures.size()},
                        {"clipped_samples", files.clipped}}
                       .dump(2)
                << '\n';
    } else if (*imp) {
      ispec.taps.clear();
      for (const auto& t : taps) {
        a2g::impair::Tap tap;
        double re = 1.0, im = 0.0;
        if (std::sscanf(t.c_str(), "%zu:%lf:%lf", &tap.delay, &re, &im) < 2)
          throw a2g::ConfigError("tap '" + t + "' is not delay:re[:im]");
        tap.gain = {re, im};
        ispec.taps.push_back(tap);
      }
      if (ispec.taps.empty()) ispec.taps.push_back({});
      ispec.validate();
      auto meta = a2g::campaign::read_metadata(a2g::campaign::sidecar_path(imp_in));
      if (meta.records() && ispec.delay_samples > 0)
        throw a2g::ConfigError("delay would break the record layout of " + imp_in);
      const auto x = a2g::campaign::read_iq(imp_in, meta);
      const auto y = a2g::impair::apply_impairments(x, ispec);
      a2g::campaign::write_iq(imp_out, y.samples, meta);
    } else if (*ana) {
      fs::path base;
      auto doc = load_doc(cfg_path, &base);
      if (!capture_dir.empty()) doc["capture_dir"] = abs_str(capture_dir);
      if (!gps_logs.empty()) {
        doc.erase("gps_log");
        doc["gps_logs"] = json::array();
        for (const auto& g : gps_logs) doc["gps_logs"].push_back(abs_str(g));
      }
      if (!output_dir.empty()) doc["output_dir"] = abs_str(output_dir);
      if (clock_offset) doc["clock_offset_s"] = *clock_offset;
      if (calibration) doc["calibration_offset_db"] = *calibration;
      if (!mode.empty()) doc["sync"]["mode"] = mode;
      if (threshold) doc["sync"]["reliability_threshold"] = *threshold;
      if (!model.empty()) doc["path_loss"]["model"] = model;
      const auto config = a2g::campaign::PipelineConfig::from_json(doc, base);
      const auto rep = a2g::campaign::run_pipeline(config);
      std::cout << rep.analytics["frames"].dump() << '\n';
    } else if (*fit) {
      fs::path base;
      const auto doc = load_doc(fit_cfg, &base);
      const auto config = a2g::campaign::PipelineConfig::from_json(doc, base);
      auto analytics = a2g::campaign::compute_analytics(a2g::campaign::read_frames_csv(fit_csv), config);
      if (fit_out.empty()) {
        std::cout << analytics.dump(2) << '\n';
      } else {
        std::ofstream out(fit_out, std::ios::binary | std::ios::trunc);
        out << analytics.dump(2) << '\n';
      }
    } else if (*traj) {
      auto pts = a2g::campaign::parse_gps_log(traj_in);
      const a2g::campaign::GeoPoint o =
          origin.empty() ? a2g::campaign::GeoPoint{pts.front().lat, pts.front().lon, pts.front().alt}
                         : a2g::campaign::GeoPoint{origin[0], origin[1], origin[2]};
      pts = a2g::campaign::with_enu(std::move(pts), o);
      const auto speed = pts.size() >= 2 ? a2g::campaign::speed_from_gps(pts, smoothing)
                                         : std::vector<std::pair<double, double>>{};
      std::cout << "timestamp,east,north,up,speed_mps\n";
      for (std::size_t i = 0; i < pts.size(); ++i)
        std::cout << fmt::format("{},{},{},{},{}\n", pts[i].timestamp, pts[i].enu.east, pts[i].enu.north,
                                 pts[i].enu.up, i < speed.size() ? fmt::format("{}", speed[i].second) : "");
    }
  } catch (const std::exception& e) {
    std::cerr << a2g::campaign::error_report(e).dump() << '\n';
    return a2g::campaign::exit_code_for(e);
  }
  return 0;
}
