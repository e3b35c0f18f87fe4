#include "a2g/impairments.hpp"

#include <cmath>
#include <numbers>

#include "a2g/errors.hpp"

namespace a2g::impair {

void ImpairmentSpec::validate() const {
  if (!(std::abs(cfo) < 0.5)) throw DomainError("cfo must satisfy |cfo| < 0.5");
  if (taps.empty()) throw DomainError("at least one tap is required");
}

IqSegment apply_cfo(const IqSegment& x, double delta, int n_fft) {
  if (n_fft <= 0) throw DomainError("n_fft must be positive");
  IqSegment out = x;
  if (delta == 0.0) return out;
  for (std::size_t n = 0; n < out.samples.size(); ++n) {
    // Reduce the phase argument before evaluating to keep long runs accurate.
    const double turns = std::fmod(static_cast<double>(n) * delta / n_fft, 1.0);
    out.samples[n] *= std::polar(1.0, 2.0 * std::numbers::pi * turns);
  }
  return out;
}

IqSegment apply_delay(const IqSegment& x, std::size_t m) {
  IqSegment out = x;
  out.samples.insert(out.samples.begin(), m, cplx{});
  return out;
}

IqSegment apply_multipath(const IqSegment& x, const std::vector<Tap>& taps) {
  if (taps.empty()) throw DomainError("apply_multipath: no taps");
  for (const auto& t : taps)
    if (t.delay >= x.size() && !x.empty()) throw DomainError("apply_multipath: tap delay exceeds segment");
  IqSegment out = x;
  std::fill(out.samples.begin(), out.samples.end(), cplx{});
  for (const auto& t : taps)
    for (std::size_t n = t.delay; n < x.size(); ++n) out.samples[n] += t.gain * x.samples[n - t.delay];
  return out;
}

IqSegment add_noise(const IqSegment& x, double noise_power, std::uint64_t seed) {
  if (!(noise_power >= 0.0)) throw DomainError("noise power must be nonnegative");
  IqSegment out = x;
  GaussianSource g(seed);
  const double sigma = std::sqrt(noise_power / 2.0);
  for (auto& v : out.samples) {
    const double re = g.next();
    const double im = g.next();
    v += cplx{sigma * re, sigma * im};
  }
  return out;
}

IqSegment apply_awgn(const IqSegment& x, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return x;
  const double p = mean_nonzero_power(x.samples);
  if (p <= 0.0) throw DomainError("apply_awgn: SNR undefined for an all-zero input");
  return add_noise(x, p / std::pow(10.0, snr_db / 10.0), seed);
}

IqSegment apply_impairments(const IqSegment& x, const ImpairmentSpec& spec, int n_fft) {
  spec.validate();
  IqSegment y = apply_multipath(x, spec.taps);
  y = apply_delay(y, spec.delay_samples);
  y = apply_cfo(y, spec.cfo, n_fft);
  return apply_awgn(y, spec.snr_db, spec.seed);
}

// ---------------------------------------------------------------------------

double GaussianSource::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace a2g::impair
