// Peak-to-median statistics of cell_search on pure complex Gaussian noise.
// Prints the empirical quantile used as the default reliability threshold.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include <CLI11.hpp>

#include "a2g/impairments.hpp"
#include "a2g/receiver_sync.hpp"

int main(int argc, char** argv) {
  CLI::App app{"noise-floor calibration for the sync reliability threshold"};
  int runs = 1000;
  double quantile = 0.99;
  std::uint64_t seed = 20240601;
  bool pss_only = false;
  app.add_option("-n,--runs", runs, "noise segments")->check(CLI::PositiveNumber);
  app.add_option("-q,--quantile", quantile, "false-alarm quantile")->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", seed);
  app.add_flag("--pss-only", pss_only);
  CLI11_PARSE(app, argc, argv);

  a2g::lte::OfdmParams p;
  a2g::sync::SyncOptions opt;
  if (pss_only) opt.mode = a2g::sync::DetectionMode::PssOnly;
  std::vector<double> ratios;
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < runs; ++r) {
    a2g::impair::GaussianSource g(seed + static_cast<std::uint64_t>(r));
    a2g::IqSegment x;
    x.samples.resize(2 * static_cast<std::size_t>(p.frame_length()));
    for (auto& s : x.samples) s = {g.next(), g.next()};
    ratios.push_back(a2g::sync::cell_search(x, p, opt).peak_to_median);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::sort(ratios.begin(), ratios.end());
  const auto idx = std::min(ratios.size() - 1, static_cast<std::size_t>(quantile * static_cast<double>(ratios.size())));
  std::printf("runs %d  min %.4f  median %.4f  max %.4f  q%.3f %.4f  (%.1f s)\n", runs, ratios.front(),
              ratios[ratios.size() / 2], ratios.back(), quantile, ratios[idx], secs);
}
