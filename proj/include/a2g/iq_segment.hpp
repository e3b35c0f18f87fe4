#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace a2g {

using cplx = std::complex<double>;

// A timestamped run of complex baseband samples.
struct IqSegment {
  std::vector<cplx> samples;
  double sample_rate = 1.92e6;  // Hz
  double center_freq = 3.51e9;  // Hz
  double start_time = 0.0;      // seconds from capture start (or UTC)

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }

  // Copy of the metadata with a new sample run; start_time is advanced by
  // `offset` samples.
  IqSegment with_samples(std::vector<cplx> s, std::ptrdiff_t offset = 0) const {
    IqSegment out;
    out.samples = std::move(s);
    out.sample_rate = sample_rate;
    out.center_freq = center_freq;
    out.start_time = start_time + static_cast<double>(offset) / sample_rate;
    return out;
  }
};

// Mean power over samples whose magnitude is nonzero. Returns 0 for an
// all-zero run.
double mean_nonzero_power(const std::vector<cplx>& x);

}  // namespace a2g
