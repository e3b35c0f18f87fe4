#pragma once

// Deterministic channel and front-end simulator.

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "a2g/iq_segment.hpp"

namespace a2g::impair {

struct Tap {
  std::size_t delay = 0;  // samples
  cplx gain{1.0, 0.0};
};

struct ImpairmentSpec {
  double cfo = 0.0;  // fraction of subcarrier spacing
  std::size_t delay_samples = 0;
  std::vector<Tap> taps{Tap{}};
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;

  void validate() const;
};

// out[n] = x[n] e^{j 2 pi n delta / n_fft}
IqSegment apply_cfo(const IqSegment& x, double delta, int n_fft = 128);
// Prepends m zero samples.
IqSegment apply_delay(const IqSegment& x, std::size_t m);
// Linear convolution with a sparse impulse response; output keeps x's length.
IqSegment apply_multipath(const IqSegment& x, const std::vector<Tap>& taps);
// Circular complex Gaussian noise at mean-nonzero-signal-power / noise-power
// = 10^(snr_db/10). snr_db = +inf returns x unchanged.
IqSegment apply_awgn(const IqSegment& x, double snr_db, std::uint64_t seed);
// Adds noise of a given absolute per-sample power.
IqSegment add_noise(const IqSegment& x, double noise_power, std::uint64_t seed);

// multipath -> delay -> CFO -> AWGN
IqSegment apply_impairments(const IqSegment& x, const ImpairmentSpec& spec, int n_fft = 128);

// Seeded standard-normal generator. mt19937_64 output is fixed by the C++
// standard; the normal transform is done here (Box-Muller) because
// std::normal_distribution is implementation-defined.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : eng_(seed) {}
  double next();
  double uniform();  // [0, 1)

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace a2g::impair
