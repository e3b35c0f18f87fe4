#include "a2g/receiver_sync.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "a2g/dft.hpp"
#include "a2g/errors.hpp"
#include "a2g/impairments.hpp"

namespace a2g::sync {

namespace {

int regular_cp(const OfdmParams& p) { return *std::min_element(p.cp_lengths.begin(), p.cp_lengths.end()); }

// Correlations of a fixed signal (taken as periodic in its own length) with
// short replicas, evaluated through one shared spectrum.
class CircularCorrelator {
 public:
  CircularCorrelator(std::span<const cplx> x, std::size_t max_replica)
      : len_(x.size()),
        fft_size_(next_fast_size(x.size() + max_replica)),
        forward_(fft_size_, Dft::Direction::Forward),
        inverse_(fft_size_, Dft::Direction::Inverse) {
    std::vector<cplx> ext(fft_size_);
    for (std::size_t i = 0; i < len_ + max_replica - 1 && i < fft_size_; ++i) ext[i] = x[i % len_];
    spectrum_ = forward_(ext);
  }

  // c[m] = sum_n x[(m+n) mod len] conj(r[n]) for m in [0, len).
  std::vector<cplx> correlate(std::span<const cplx> replica) {
    std::vector<cplx> r(fft_size_);
    std::copy(replica.begin(), replica.end(), r.begin());
    auto rs = forward_(r);
    for (std::size_t k = 0; k < fft_size_; ++k) rs[k] = spectrum_[k] * std::conj(rs[k]);
    auto c = inverse_(rs);
    const double scale = std::sqrt(static_cast<double>(fft_size_));
    c.resize(len_);
    for (auto& v : c) v *= scale;
    return c;
  }

 private:
  std::size_t len_;
  std::size_t fft_size_;
  Dft forward_;
  Dft inverse_;
  std::vector<cplx> spectrum_;
};

std::vector<cplx> sync_symbol_replica(std::span<const cplx> seq, int symbol_in_slot, const OfdmParams& params) {
  std::vector<cplx> used(static_cast<std::size_t>(params.n_subcarriers_used));
  const int first = params.sync_first_subcarrier();
  for (int n = 0; n < lte::kSyncLength; ++n) used[static_cast<std::size_t>(first + n)] = seq[static_cast<std::size_t>(n)];
  return lte::symbol_waveform(used, symbol_in_slot, params);
}

std::size_t argmax_lowest(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

CfoEstimate combine_cfo(const IqSegment& x, const OfdmParams& params, const CfoOptions& options,
                        std::optional<std::size_t> known_phase) {
  params.validate();
  if (options.window_slots < 1) throw DomainError("cfo window must span at least one slot");
  const auto corr = cp_moving_correlation(x, params);
  const auto slot = static_cast<std::size_t>(params.slot_length());
  const std::size_t window = std::min(corr.size(), static_cast<std::size_t>(options.window_slots) * slot);

  std::vector<cplx> fold(slot);
  for (std::size_t m = 0; m < window; ++m) fold[m % slot] += corr[m];

  std::vector<std::size_t> starts;
  for (int l = 0; l < params.symbols_per_slot; ++l) starts.push_back(static_cast<std::size_t>(params.symbol_start(l)));

  auto combined_at = [&](std::size_t a) {
    cplx acc{};
    for (auto s : starts) acc += fold[(a + s) % slot];
    return acc;
  };

  std::size_t phase = 0;
  if (known_phase) {
    phase = *known_phase % slot;
  } else {
    double best = -1.0;
    for (std::size_t a = 0; a < slot; ++a) {
      const double v = std::abs(combined_at(a));
      if (v > best) {
        best = v;
        phase = a;
      }
    }
  }

  const cplx total = combined_at(phase);
  if (std::abs(total) == 0.0) throw EstimateUnavailable("estimate_cfo: CP windows carry no energy");

  CfoEstimate est;
  est.delta_hat = std::arg(total) / (2.0 * std::numbers::pi);
  if (est.delta_hat <= -0.5) est.delta_hat += 1.0;
  est.timestamp = x.start_time;
  est.slot_phase = phase;
  for (std::size_t base = phase; base < window; base += slot)
    for (auto s : starts)
      if (base + s < window) est.per_symbol_metrics.push_back(corr[base + s]);
  return est;
}

// Per-subcarrier decomposition of the correlation between a 137-sample window
// and a CP-OFDM replica: the CP samples fold onto the tail of the body, so
// corr = sum_bins conj(X_bin) * W_bin with W the unitary DFT of the fold.
class WindowProjector {
 public:
  WindowProjector(const OfdmParams& params, int cp)
      : n_(static_cast<std::size_t>(params.n_fft)), cp_(static_cast<std::size_t>(cp)),
        dft_(n_, Dft::Direction::Forward), buf_(n_), out_(n_) {}

  const std::vector<cplx>& project(std::span<const cplx> x, std::size_t start) {
    const std::size_t len = x.size();
    for (std::size_t t = 0; t < n_; ++t) buf_[t] = x[(start + cp_ + t) % len];
    for (std::size_t t = n_ - cp_; t < n_; ++t) buf_[t] += x[(start + t - (n_ - cp_)) % len];
    dft_.execute(buf_, out_);
    return out_;
  }

 private:
  std::size_t n_;
  std::size_t cp_;
  Dft dft_;
  std::vector<cplx> buf_;
  std::vector<cplx> out_;
};

}  // namespace

std::vector<cplx> cp_moving_correlation(const IqSegment& x, const OfdmParams& params) {
  params.validate();
  const auto n = static_cast<std::size_t>(params.n_fft);
  const auto l = static_cast<std::size_t>(regular_cp(params));
  if (x.size() < static_cast<std::size_t>(params.slot_length()) + n)
    throw DomainError("cp_moving_correlation: segment shorter than one slot plus one symbol");
  const std::size_t products = x.size() - n;
  std::vector<cplx> prefix(products + 1);
  for (std::size_t i = 0; i < products; ++i) prefix[i + 1] = prefix[i] + std::conj(x.samples[i]) * x.samples[i + n];
  std::vector<cplx> c(products - l + 1);
  const double inv = 1.0 / static_cast<double>(l);
  for (std::size_t m = 0; m < c.size(); ++m) c[m] = (prefix[m + l] - prefix[m]) * inv;
  return c;
}

CfoEstimate estimate_cfo(const IqSegment& x, const OfdmParams& params, const CfoOptions& options) {
  return combine_cfo(x, params, options, std::nullopt);
}

CfoEstimate estimate_cfo_at(const IqSegment& x, std::size_t slot_start, const OfdmParams& params,
                            const CfoOptions& options) {
  return combine_cfo(x, params, options, slot_start);
}

IqSegment correct_cfo(const IqSegment& x, double delta_hat, int n_fft) {
  return impair::apply_cfo(x, -delta_hat, n_fft);
}

PssDetection detect_pss(const IqSegment& x, const OfdmParams& params) {
  params.validate();
  if (x.size() < static_cast<std::size_t>(params.frame_length()))
    throw DomainError("detect_pss: need at least one 10 ms frame, got " + std::to_string(x.size()) + " samples");

  const int l = params.pss_symbol();
  const auto replica_len = static_cast<std::size_t>(params.symbol_length(l));
  CircularCorrelator corr(x.samples, replica_len);
  const std::size_t lags = x.size() - replica_len + 1;
  const double inv = 1.0 / static_cast<double>(replica_len);

  PssDetection det;
  det.peak = -1.0;
  for (int id = 0; id < 3; ++id) {
    const auto replica = sync_symbol_replica(lte::gen_pss(id).samples, l, params);
    const auto c = corr.correlate(replica);
    auto& prof = det.profiles[static_cast<std::size_t>(id)];
    prof.resize(lags);
    for (std::size_t m = 0; m < lags; ++m) prof[m] = std::abs(c[m]) * inv;
    const std::size_t m = argmax_lowest(prof);
    if (prof[m] > det.peak || (prof[m] == det.peak && m < det.timing)) {
      det.peak = prof[m];
      det.timing = m;
      det.n_id2 = id;
    }
  }
  return det;
}

CombinedDetection detect_combined(const IqSegment& x, int n_id2, const OfdmParams& params) {
  params.validate();
  if (n_id2 < 0 || n_id2 > 2) throw DomainError("n_id2 must be in 0..2");
  const std::size_t len = x.size();
  const auto frame = static_cast<std::size_t>(params.frame_length());
  const auto half = static_cast<std::size_t>(params.half_frame_length());
  if (len < frame) throw DomainError("detect_combined: need at least one 10 ms frame");

  const int pss_l = params.pss_symbol();
  const int sss_l = params.sss_symbol();
  const auto pss_off = static_cast<std::size_t>(params.symbol_start(pss_l));
  const auto sss_off = static_cast<std::size_t>(params.symbol_start(sss_l));
  const auto pss_len = static_cast<std::size_t>(params.symbol_length(pss_l));
  const auto sss_len = static_cast<std::size_t>(params.symbol_length(sss_l));
  const double inv_pss = 1.0 / static_cast<double>(pss_len);
  const double inv_sss = 1.0 / static_cast<double>(sss_len);

  CircularCorrelator corr(x.samples, std::max(pss_len, sss_len));
  const auto pss_c = corr.correlate(sync_symbol_replica(lte::gen_pss(n_id2).samples, pss_l, params));
  std::vector<double> pss_mag(len);
  for (std::size_t m = 0; m < len; ++m) pss_mag[m] = std::abs(pss_c[m]) * inv_pss;

  // SSS sequences in frequency-bin order and the largest replica norm, for the
  // Cauchy-Schwarz bound |<w, r>| <= |w| |r|.
  std::vector<std::size_t> bins(lte::kSyncLength);
  for (int n = 0; n < lte::kSyncLength; ++n)
    bins[static_cast<std::size_t>(n)] = static_cast<std::size_t>(params.fft_bin(params.sync_first_subcarrier() + n));
  std::vector<std::array<std::vector<double>, 2>> seqs(168);
  double replica_norm = 0.0;
  for (int id1 = 0; id1 < 168; ++id1) {
    for (int which = 0; which < 2; ++which) {
      const auto sss = lte::gen_sss(id1, n_id2, which == 0 ? 0 : 5);
      auto& d = seqs[static_cast<std::size_t>(id1)][static_cast<std::size_t>(which)];
      d.resize(lte::kSyncLength);
      for (int n = 0; n < lte::kSyncLength; ++n) d[static_cast<std::size_t>(n)] = sss.samples[static_cast<std::size_t>(n)].real();
      const auto rep = sync_symbol_replica(sss.samples, sss_l, params);
      double e = 0.0;
      for (const auto& v : rep) e += std::norm(v);
      replica_norm = std::max(replica_norm, std::sqrt(e));
    }
  }

  // Circular window energies.
  std::vector<double> energy_prefix(len + sss_len + 1);
  for (std::size_t i = 0; i < len + sss_len; ++i) energy_prefix[i + 1] = energy_prefix[i] + std::norm(x.samples[i % len]);
  auto window_norm = [&](std::size_t start) {
    return std::sqrt(std::max(0.0, energy_prefix[start + sss_len] - energy_prefix[start]));
  };

  std::vector<double> bound(frame);
  for (std::size_t f = 0; f < frame; ++f) {
    const std::size_t i0 = (f + sss_off) % len;
    const std::size_t i5 = (f + sss_off + half) % len;
    bound[f] = pss_mag[(f + pss_off) % len] + (window_norm(i0) + window_norm(i5)) * replica_norm * inv_sss;
  }
  std::vector<std::size_t> order(frame);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] > bound[b]; });

  WindowProjector proj0(params, params.cp_lengths[static_cast<std::size_t>(sss_l)]);
  WindowProjector proj5(params, params.cp_lengths[static_cast<std::size_t>(sss_l)]);
  double best = -1.0;
  std::size_t best_f = 0;
  int best_id1 = 0;
  for (std::size_t f : order) {
    if (bound[f] * (1.0 + 1e-9) < best) break;
    const auto& w0 = proj0.project(x.samples, (f + sss_off) % len);
    const auto& w5 = proj5.project(x.samples, (f + sss_off + half) % len);
    const double p = pss_mag[(f + pss_off) % len];
    for (int id1 = 0; id1 < 168; ++id1) {
      const auto& d0 = seqs[static_cast<std::size_t>(id1)][0];
      const auto& d5 = seqs[static_cast<std::size_t>(id1)][1];
      cplx c0{}, c5{};
      for (std::size_t n = 0; n < bins.size(); ++n) {
        c0 += d0[n] * w0[bins[n]];
        c5 += d5[n] * w5[bins[n]];
      }
      const double metric = p + (std::abs(c0) + std::abs(c5)) * inv_sss;
      if (metric > best || (metric == best && (f < best_f || (f == best_f && id1 < best_id1)))) {
        best = metric;
        best_f = f;
        best_id1 = id1;
      }
    }
  }

  // Full profile for the winning group id through the time-domain replicas.
  const auto r0 = sync_symbol_replica(lte::gen_sss(best_id1, n_id2, 0).samples, sss_l, params);
  const auto r5 = sync_symbol_replica(lte::gen_sss(best_id1, n_id2, 5).samples, sss_l, params);
  const auto c0 = corr.correlate(r0);
  const auto c5 = corr.correlate(r5);
  CombinedDetection det;
  det.n_id1 = best_id1;
  det.profile.resize(frame);
  for (std::size_t f = 0; f < frame; ++f) {
    det.profile[f] = pss_mag[(f + pss_off) % len] + std::abs(c0[(f + sss_off) % len]) * inv_sss +
                     std::abs(c5[(f + sss_off + half) % len]) * inv_sss;
  }
  det.timing = argmax_lowest(det.profile);
  det.peak = det.profile[det.timing];
  det.pss_component = pss_mag[(det.timing + pss_off) % len];
  return det;
}

double default_reliability_threshold(DetectionMode mode) {
  return mode == DetectionMode::PssOnly ? kPssOnlyReliabilityThreshold : kCombinedReliabilityThreshold;
}

CellIdentity compute_pci(int n_id2, int n_id1) { return CellIdentity::from_ids(n_id2, n_id1); }

SyncResult cell_search(const IqSegment& x, const OfdmParams& params, const SyncOptions& options) {
  params.validate();
  SyncResult res;
  res.cfo = estimate_cfo(x, params, options.cfo);
  const IqSegment y = correct_cfo(x, res.cfo.delta_hat, params.n_fft);
  const auto pss = detect_pss(y, params);
  res.detection_mode = options.mode;

  if (options.mode == DetectionMode::PssSssCombined) {
    const auto comb = detect_combined(y, pss.n_id2, params);
    res.timing_offset = comb.timing;
    res.cell = compute_pci(pss.n_id2, comb.n_id1);
    res.metric_profile = comb.profile;
    res.peak_metric = comb.peak;
  } else {
    // PSS alone cannot tell subframe 0 from 5; take the peak as subframe 0 and
    // read the group id from the SSS just before it.
    const auto frame = static_cast<std::size_t>(params.frame_length());
    const auto pss_off = static_cast<std::size_t>(params.symbol_start(params.pss_symbol()));
    const auto sss_off = static_cast<std::size_t>(params.symbol_start(params.sss_symbol()));
    res.timing_offset = (pss.timing + frame - pss_off) % frame;
    const int sss_l = params.sss_symbol();
    CircularCorrelator corr(y.samples, static_cast<std::size_t>(params.symbol_length(sss_l)));
    double best = -1.0;
    int best_id1 = 0;
    const std::size_t at = (res.timing_offset + sss_off) % y.size();
    for (int id1 = 0; id1 < 168; ++id1) {
      const auto rep = sync_symbol_replica(lte::gen_sss(id1, pss.n_id2, 0).samples, sss_l, params);
      cplx c{};
      for (std::size_t n = 0; n < rep.size(); ++n) c += y.samples[(at + n) % y.size()] * std::conj(rep[n]);
      if (std::abs(c) > best) {
        best = std::abs(c);
        best_id1 = id1;
      }
    }
    res.cell = compute_pci(pss.n_id2, best_id1);
    res.metric_profile = pss.profiles[static_cast<std::size_t>(pss.n_id2)];
    res.peak_metric = pss.peak;
  }

  // The blind slot phase can lock 686 samples off on sync/CRS-only signals,
  // which biases delta_hat; re-estimate on the detected slot grid.
  res.cfo = estimate_cfo_at(x, res.timing_offset, params, options.cfo);

  const double med = median(res.metric_profile);
  res.peak_to_median = med > 0.0 ? res.peak_metric / med : 0.0;
  res.reliable = res.peak_to_median > options.reliability_threshold.value_or(default_reliability_threshold(options.mode));
  return res;
}

}  // namespace a2g::sync
