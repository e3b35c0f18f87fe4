#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "a2g/channel_estimation.hpp"
#include "a2g/errors.hpp"
#include "a2g/impairments.hpp"
#include "support.hpp"

using namespace a2g;
using namespace a2g::chest;

namespace {

// Demodulated second frame of a two-frame transmission through `taps`; the
// first frame supplies the inter-symbol history so the channel is circular
// within every symbol whenever the delay spread fits in the CP.
ResourceGrid through_channel(int pci, const std::vector<impair::Tap>& taps, double gain = 1.0) {
  lte::OfdmParams p;
  auto x = impair::apply_multipath(testsupport::frames(pci, 2, p), taps);
  for (auto& s : x.samples) s *= gain;
  return lte::ofdm_demodulate(x, static_cast<std::size_t>(p.frame_length()), p, 140);
}

cplx two_tap_response(int k, std::size_t delay, cplx g) {
  lte::OfdmParams p;
  const double phase = -2.0 * std::numbers::pi * p.fft_bin(k) * static_cast<double>(delay) / p.n_fft;
  return 1.0 + g * std::polar(1.0, phase);
}

}  // namespace

TEST_CASE("extract_crs on a clean frame") {
  const auto grid = through_channel(37, {impair::Tap{}});
  const auto obs = extract_crs(grid, lte::CellIdentity::from_pci(37));
  CHECK(obs.size() == 480u);  // 48 per subframe
  int first_subframe = 0;
  for (const auto& o : obs) {
    CHECK(std::abs(o.received - o.reference) < 1e-9);
    CHECK(std::norm(o.reference) == doctest::Approx(1.0));
    first_subframe += o.symbol < 14;
  }
  CHECK(first_subframe == 48);
}

TEST_CASE("wrong cell identity breaks the pilot match") {
  const auto grid = through_channel(37, {impair::Tap{}});
  const auto obs = extract_crs(grid, lte::CellIdentity::from_pci(38));
  double mean_abs = 0.0;
  for (const auto& o : obs) mean_abs += std::abs(o.received / o.reference);
  mean_abs /= static_cast<double>(obs.size());
  CHECK(std::abs(mean_abs - 1.0) > 0.5);
}

TEST_CASE("LS estimate") {
  std::vector<PilotObservation> obs{{3, 0, {1.4, -0.6}, {0.7, -0.3}}, {9, 4, {0.0, 2.0}, {0.0, 1.0}}};
  const auto h = ls_estimate(obs);
  CHECK(std::abs(h[0].h - cplx(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(h[1].h - cplx(2.0, 0.0)) < 1e-15);
  CHECK(h[1].subcarrier == 9);
  CHECK(h[1].symbol == 4);
  obs[0].reference = {};
  CHECK_THROWS_AS(ls_estimate(obs), DomainError);
}

TEST_CASE("LS matches the analytic two-tap response at pilots") {
  const cplx g{0.5, 0.0};
  const auto grid = through_channel(211, {impair::Tap{0, {1.0, 0.0}}, impair::Tap{5, g}});
  const auto est = ls_estimate(extract_crs(grid, lte::CellIdentity::from_pci(211)));
  for (const auto& e : est) CHECK(std::abs(e.h - two_tap_response(e.subcarrier, 5, g)) < 1e-9);
}

TEST_CASE("interpolation of a two-tap channel") {
  const cplx g{0.5, 0.0};
  const auto grid = through_channel(211, {impair::Tap{0, {1.0, 0.0}}, impair::Tap{5, g}});
  const auto pilots = ls_estimate(extract_crs(grid, lte::CellIdentity::from_pci(211)));
  const auto est = interpolate_channel(pilots, 72, 140);
  CHECK_FALSE(est.linear_fallback);
  double err = 0.0, ref = 0.0;
  for (int sym = 0; sym < 140; ++sym)
    for (int k = 6; k < 66; ++k) {
      const cplx h = two_tap_response(k, 5, g);
      err += std::norm(est.h.at(k, sym) - h);
      ref += std::norm(h);
    }
  CHECK(std::sqrt(err / ref) < 0.05);
  for (const auto& pl : pilots) {
    CHECK(est.is_pilot(pl.subcarrier, pl.symbol));
    CHECK(est.h.at(pl.subcarrier, pl.symbol) == pl.h);
  }
  CHECK_FALSE(est.is_pilot(2, 1));
}

TEST_CASE("interpolation reproduces constant and linear responses") {
  std::vector<PilotEstimate> flat, linear;
  for (int sym : {0, 4, 7, 11})
    for (int k = sym % 2; k < 72; k += 6) {
      flat.push_back({k, sym, {0.3, -0.8}});
      linear.push_back({k, sym, cplx(0.5 + 0.01 * k, -0.02 * k) * (1.0 + 0.1 * sym)});
    }
  const auto ef = interpolate_channel(flat, 72, 14);
  const auto el = interpolate_channel(linear, 72, 14);
  for (int sym = 0; sym < 14; ++sym)
    for (int k = 0; k < 72; ++k) {
      CHECK(std::abs(ef.h.at(k, sym) - cplx(0.3, -0.8)) < 1e-12);
      // linear in frequency; linear in time between pilot symbols
      const int t = std::clamp(sym, 0, 11);
      CHECK(std::abs(el.h.at(k, sym) - cplx(0.5 + 0.01 * k, -0.02 * k) * (1.0 + 0.1 * t)) < 1e-12);
    }
}

TEST_CASE("time direction: linear between, nearest outside") {
  std::vector<PilotEstimate> p;
  for (int k = 0; k < 72; k += 6) {
    p.push_back({k, 2, {1.0, 0.0}});
    p.push_back({k, 6, {3.0, 0.0}});
  }
  const auto e = interpolate_channel(p, 72, 10);
  CHECK(std::abs(e.h.at(10, 0) - cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(e.h.at(10, 3) - cplx(1.5, 0.0)) < 1e-12);
  CHECK(std::abs(e.h.at(10, 4) - cplx(2.0, 0.0)) < 1e-12);
  CHECK(std::abs(e.h.at(10, 9) - cplx(3.0, 0.0)) < 1e-12);
}

TEST_CASE("too few pilots falls back to linear") {
  std::vector<PilotEstimate> p{{0, 0, {1.0, 0.0}}, {10, 0, {2.0, 0.0}}, {20, 0, {4.0, 0.0}}};
  const auto e = interpolate_channel(p, 30, 1);
  CHECK(e.linear_fallback);
  CHECK(std::abs(e.h.at(5, 0) - cplx(1.5, 0.0)) < 1e-12);
  CHECK(std::abs(e.h.at(15, 0) - cplx(3.0, 0.0)) < 1e-12);
  CHECK_THROWS_AS(interpolate_channel({}, 72, 14), DomainError);
}

TEST_CASE("cubic spline reproduces cubics") {
  std::vector<double> knots{0, 1, 2.5, 4, 6, 7}, vals, at, want;
  auto f = [](double t) { return 1.0 - 2.0 * t + 0.5 * t * t - 0.1 * t * t * t; };
  for (double t : knots) vals.push_back(f(t));
  for (double t = -2.0; t < 9.0; t += 0.37) {
    at.push_back(t);
    want.push_back(f(t));
  }
  const auto got = cubic_spline(knots, vals, at);
  for (std::size_t i = 0; i < at.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
  CHECK_THROWS_AS(cubic_spline({0, 0, 1, 2}, {1, 2, 3, 4}, {0.5}), DomainError);
}

TEST_CASE("RSRP") {
  std::vector<PilotObservation> unit;
  for (int i = 0; i < 10; ++i) unit.push_back({i, 0, std::polar(1.0, 0.3 * i), {1.0, 0.0}});
  const auto r = compute_rsrp(unit, -30.0);
  CHECK(r.rsrp_linear == doctest::Approx(1.0));
  CHECK(r.rsrp_dbm == doctest::Approx(-30.0));
  CHECK_THROWS_AS(compute_rsrp({}), DomainError);

  const auto cell = lte::CellIdentity::from_pci(99);
  const auto base = compute_rsrp(extract_crs(through_channel(99, {impair::Tap{}}), cell));
  const auto twice = compute_rsrp(extract_crs(through_channel(99, {impair::Tap{}}, 2.0), cell));
  CHECK(std::abs(twice.rsrp_dbm - base.rsrp_dbm - 20.0 * std::log10(2.0)) < 0.01);
  const auto turned = compute_rsrp(extract_crs(through_channel(99, {impair::Tap{0, std::polar(1.0, 2.2)}}), cell));
  CHECK(turned.rsrp_linear == doctest::Approx(base.rsrp_linear).epsilon(1e-12));
}

TEST_CASE("RSRP under noise matches signal plus noise power") {
  lte::OfdmParams p;
  const auto cell = lte::CellIdentity::from_pci(7);
  const auto clean = testsupport::frames(7, 1, p);
  const double noise_power = 0.05;
  double mean_db = 0.0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const auto x = impair::add_noise(clean, noise_power, 100 + static_cast<std::uint64_t>(s));
    mean_db += compute_rsrp(extract_crs(lte::ofdm_demodulate(x, 0, p, 140), cell)).rsrp_dbm;
  }
  mean_db /= seeds;
  // unitary DFT: per-RE noise power equals the per-sample noise power
  const double expect = 10.0 * std::log10(1.0 + noise_power);
  CHECK(std::abs(mean_db - expect) < 0.5);
}

TEST_CASE("LS error at 20 dB pilot SNR") {
  lte::OfdmParams p;
  const auto cell = lte::CellIdentity::from_pci(7);
  const auto x = impair::add_noise(testsupport::frames(7, 1, p), 0.01, 5);
  const auto est = ls_estimate(extract_crs(lte::ofdm_demodulate(x, 0, p, 140), cell));
  double e = 0.0;
  for (const auto& v : est) e += std::norm(v.h - 1.0);
  CHECK(std::sqrt(e / static_cast<double>(est.size())) == doctest::Approx(0.1).epsilon(0.15));
}
