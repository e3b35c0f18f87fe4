#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "a2g/impairments.hpp"
#include "a2g/lte_waveform.hpp"

namespace testsupport {

using a2g::cplx;

inline double rel_rms(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// `frames` back-to-back frames of one cell, starting on a frame boundary.
inline a2g::IqSegment frames(int pci, int count, const a2g::lte::OfdmParams& p = {}) {
  const auto grid = a2g::lte::map_frame(a2g::lte::CellIdentity::from_pci(pci), p, 10);
  const auto one = a2g::lte::ofdm_modulate(grid, p);
  a2g::IqSegment out = one;
  out.samples.clear();
  for (int i = 0; i < count; ++i) out.samples.insert(out.samples.end(), one.samples.begin(), one.samples.end());
  return out;
}

// A 20 ms receive window whose frame boundary sits at `delay` (< one frame).
inline a2g::IqSegment received_window(int pci, double cfo, std::size_t delay, double snr_db, std::uint64_t seed,
                                      const a2g::lte::OfdmParams& p = {}) {
  const auto tx = frames(pci, 3, p);
  const std::size_t frame = static_cast<std::size_t>(p.frame_length());
  auto x = a2g::impair::apply_delay(tx, delay);
  x = a2g::impair::apply_cfo(x, cfo, p.n_fft);
  std::vector<cplx> w(x.samples.begin() + static_cast<std::ptrdiff_t>(frame),
                      x.samples.begin() + static_cast<std::ptrdiff_t>(3 * frame));
  auto seg = x.with_samples(std::move(w), 0);
  if (std::isfinite(snr_db)) seg = a2g::impair::apply_awgn(seg, snr_db, seed);
  return seg;
}

}  // namespace testsupport
