#include "a2g/propagation.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "a2g/errors.hpp"
#include "a2g/optimize.hpp"

namespace a2g::prop {

namespace {

constexpr double kPi = std::numbers::pi;

double deg(double rad) { return rad * 180.0 / kPi; }

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

}  // namespace

AntennaPattern::AntennaPattern(std::vector<double> angle_deg, std::vector<double> gain_dbi)
    : angle_(std::move(angle_deg)), gain_(std::move(gain_dbi)) {
  if (angle_.size() != gain_.size() || angle_.size() < 2) throw DomainError("antenna pattern: need >= 2 (angle, gain) rows");
  for (std::size_t i = 0; i < angle_.size(); ++i) {
    if (!std::isfinite(angle_[i]) || !std::isfinite(gain_[i])) throw DomainError("antenna pattern: non-finite entry");
    if (i > 0 && !(angle_[i] > angle_[i - 1])) throw DomainError("antenna pattern: angles must be strictly increasing");
  }
  if (angle_.front() > -90.0 || angle_.back() < 90.0) throw DomainError("antenna pattern: table must span [-90, 90] degrees");
}

AntennaPattern AntennaPattern::isotropic() { return AntennaPattern({-90.0, 90.0}, {0.0, 0.0}); }

AntennaPattern AntennaPattern::half_wave_dipole(double step_deg, double floor_dbi) {
  if (!(step_deg > 0.0)) throw DomainError("dipole pattern: step must be positive");
  std::vector<double> a, g;
  const int n = static_cast<int>(std::round(180.0 / step_deg));
  for (int i = 0; i <= n; ++i) {
    const double th = -90.0 + 180.0 * i / n;
    const double r = th * kPi / 180.0;
    const double c = std::cos(r);
    double lin = 0.0;
    if (std::abs(c) > 1e-12) {
      const double f = std::cos(0.5 * kPi * std::sin(r)) / c;
      lin = 1.64 * f * f;
    }
    a.push_back(th);
    g.push_back(lin > 0.0 ? std::max(floor_dbi, 10.0 * std::log10(lin)) : floor_dbi);
  }
  return AntennaPattern(std::move(a), std::move(g));
}

AntennaPattern AntennaPattern::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open antenna pattern " + path.string());
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "angle_deg,gain_dbi") throw FormatError(path.string() + ": expected header angle_deg,gain_dbi");
  std::vector<double> a, g;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::istringstream ss(line);
    std::string x, y;
    if (!std::getline(ss, x, ',') || !std::getline(ss, y)) throw FormatError(path.string() + ": bad row " + std::to_string(row));
    try {
      a.push_back(std::stod(x));
      g.push_back(std::stod(y));
    } catch (const std::exception&) {
      throw FormatError(path.string() + ": bad number on row " + std::to_string(row));
    }
  }
  return AntennaPattern(std::move(a), std::move(g));
}

void AntennaPattern::to_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "angle_deg,gain_dbi\n";
  out.precision(17);
  for (std::size_t i = 0; i < angle_.size(); ++i) out << angle_[i] << ',' << gain_[i] << '\n';
}

double AntennaPattern::gain_dbi(double theta_deg, bool* clamped) const {
  bool clip = false;
  if (theta_deg < angle_.front()) {
    theta_deg = angle_.front();
    clip = true;
  } else if (theta_deg > angle_.back()) {
    theta_deg = angle_.back();
    clip = true;
  }
  if (clamped) *clamped = clip;
  auto hi = std::lower_bound(angle_.begin(), angle_.end(), theta_deg);
  if (hi == angle_.begin()) return gain_.front();
  if (*hi == theta_deg) return gain_[static_cast<std::size_t>(hi - angle_.begin())];
  const auto j = static_cast<std::size_t>(hi - angle_.begin());
  const double w = (theta_deg - angle_[j - 1]) / (angle_[j] - angle_[j - 1]);
  return gain_[j - 1] + w * (gain_[j] - gain_[j - 1]);
}

double AntennaPattern::gain(double theta_rad, bool* clamped) const {
  return std::pow(10.0, gain_dbi(deg(theta_rad), clamped) / 10.0);
}

LinkGeometry link_geometry(double d_horizontal, double h_tx, double h_rx) {
  if (!(h_tx > 0.0) || !(h_rx > 0.0)) throw DomainError("link_geometry: heights must be positive");
  if (!(d_horizontal >= 0.0)) throw DomainError("link_geometry: negative horizontal distance");
  LinkGeometry g;
  g.d_horizontal = d_horizontal;
  g.h_tx = h_tx;
  g.h_rx = h_rx;
  g.d_3d = std::hypot(d_horizontal, h_rx - h_tx);
  g.theta_l = std::atan2(h_rx - h_tx, d_horizontal);
  g.theta_r = std::atan2(h_tx + h_rx, d_horizontal);
  // image construction: the bounce splits the unfolded path in ratio h_tx : h_rx
  const double unfolded = std::hypot(d_horizontal, h_tx + h_rx);
  g.r1 = unfolded * h_tx / (h_tx + h_rx);
  g.r2 = unfolded * h_rx / (h_tx + h_rx);
  return g;
}

cplx Reflection::coefficient(double theta_r) const {
  if (kind == Kind::Constant) return constant;
  const double s = std::sin(theta_r);
  const double c = std::cos(theta_r);
  const cplx root = std::sqrt(cplx(permittivity - c * c, 0.0));
  return (permittivity * s - root) / (permittivity * s + root);
}

double delta_tau(const TwoRayModel& model, const LinkGeometry& geom) {
  // (r1 + r2) - d_3d without cancellation: ((h_tx + h_rx)^2 - (h_rx - h_tx)^2) / (r1 + r2 + d_3d)
  return 2.0 * kPi / model.wavelength * (4.0 * geom.h_tx * geom.h_rx / (geom.r1 + geom.r2 + geom.d_3d));
}

double eval_two_ray(const TwoRayModel& model, const LinkGeometry& geom) {
  if (!(geom.d_3d > 0.0)) throw DomainError("eval_two_ray: zero link distance");
  const double direct = std::sqrt(model.tx_pattern.gain(geom.theta_l) * model.rx_pattern.gain(geom.theta_l)) / geom.d_3d;
  const cplx reflected = model.reflection.coefficient(geom.theta_r) *
                         std::sqrt(model.tx_pattern.gain(geom.theta_r) * model.rx_pattern.gain(geom.theta_r)) *
                         std::polar(1.0, -delta_tau(model, geom)) / (geom.r1 + geom.r2);
  const double k = model.wavelength / (4.0 * kPi);
  return k * k * std::norm(direct + reflected);
}

double eval_free_space(const LinkGeometry& geom, const AntennaPattern& tx, const AntennaPattern& rx, double wavelength) {
  if (!(geom.d_3d > 0.0)) throw DomainError("eval_free_space: zero link distance");
  const double k = wavelength / (4.0 * kPi * geom.d_3d);
  return k * k * tx.gain(geom.theta_l) * rx.gain(geom.theta_l);
}

double model_gain(const PathLossFit& fit, const LinkGeometry& geom) {
  if (fit.kind == PathLossKind::FreeSpace)
    return eval_free_space(geom, fit.model.tx_pattern, fit.model.rx_pattern, fit.model.wavelength);
  return eval_two_ray(fit.model, geom);
}

namespace {

// Sum of squared dB residuals with the offset profiled out; fills the offset.
double profiled_sse(const std::vector<PathLossSample>& samples, const PathLossFit& fit, double* offset) {
  std::vector<double> r(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double g = std::max(model_gain(fit, samples[i].geom), std::numeric_limits<double>::min());
    r[i] = samples[i].rsrp_dbm - to_db(g);
  }
  const double p = mean_of(r);
  double sse = 0.0;
  for (double v : r) sse += (v - p) * (v - p);
  if (offset) *offset = p;
  return sse;
}

}  // namespace

PathLossFit fit_path_loss(const std::vector<PathLossSample>& samples, PathLossKind kind, const TwoRayModel& base) {
  if (samples.size() < 10) throw DomainError("fit_path_loss: need at least 10 samples");
  double dmin = HUGE_VAL, dmax = -HUGE_VAL;
  for (const auto& s : samples) {
    dmin = std::min(dmin, s.geom.d_3d);
    dmax = std::max(dmax, s.geom.d_3d);
  }
  if (!(dmax - dmin > 1e-9 * dmax)) throw FitError("fit_path_loss: all samples at one distance, model unidentifiable");

  PathLossFit fit;
  fit.kind = kind;
  fit.model = base;

  if (kind == PathLossKind::TwoRayConstant) {
    // rho = (1 - cos u)/2 keeps |Gamma| in [0, 1] without constraints.
    auto apply = [&](const std::vector<double>& v) {
      const double rho = 0.5 * (1.0 - std::cos(v[0]));
      fit.model.reflection = Reflection::fixed(std::polar(rho, v[1]));
    };
    auto objective = [&](const std::vector<double>& v) {
      apply(v);
      return profiled_sse(samples, fit, nullptr);
    };
    std::vector<std::pair<double, std::vector<double>>> grid;
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j < 24; ++j) {
        const std::vector<double> v{std::acos(1.0 - 2.0 * (i / 10.0)), -kPi + 2.0 * kPi * j / 24.0};
        grid.emplace_back(objective(v), v);
      }
    std::stable_sort(grid.begin(), grid.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    opt::MinimizeResult best{{}, HUGE_VAL, 0};
    for (std::size_t s = 0; s < 4; ++s) {
      auto r = opt::nelder_mead(objective, grid[s].second, {0.2, 0.2});
      if (r.value < best.value) best = r;
    }
    apply(best.x);
    // canonical phase in (-pi, pi]
    fit.model.reflection.constant = std::polar(std::abs(fit.model.reflection.constant), std::arg(fit.model.reflection.constant));
  } else if (kind == PathLossKind::TwoRayFresnel) {
    // eps_r = 1 + exp(s)
    auto apply = [&](const std::vector<double>& v) { fit.model.reflection = Reflection::fresnel(1.0 + std::exp(v[0])); };
    auto objective = [&](const std::vector<double>& v) {
      apply(v);
      return profiled_sse(samples, fit, nullptr);
    };
    std::vector<std::pair<double, std::vector<double>>> grid;
    for (int i = 0; i <= 40; ++i) {
      const std::vector<double> v{std::log(0.05) + (std::log(500.0) - std::log(0.05)) * i / 40.0};
      grid.emplace_back(objective(v), v);
    }
    std::stable_sort(grid.begin(), grid.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    opt::MinimizeResult best{{}, HUGE_VAL, 0};
    for (std::size_t s = 0; s < 3; ++s) {
      auto r = opt::nelder_mead(objective, grid[s].second, {0.1});
      if (r.value < best.value) best = r;
    }
    apply(best.x);
  }

  const double sse = profiled_sse(samples, fit, &fit.p_offset_db);
  fit.rmse_db = std::sqrt(sse / static_cast<double>(samples.size()));
  fit.residuals = extract_shadowing(samples, fit);
  if (kind != PathLossKind::FreeSpace) {
    double acc = 0.0;
    for (const auto& s : samples) {
      const double ratio = eval_two_ray(fit.model, s.geom) /
                           eval_free_space(s.geom, fit.model.tx_pattern, fit.model.rx_pattern, fit.model.wavelength);
      const double db = to_db(std::max(ratio, std::numeric_limits<double>::min()));
      acc += db * db;
    }
    fit.oscillation_db = std::sqrt(acc / static_cast<double>(samples.size()));
  }
  return fit;
}

std::vector<double> extract_shadowing(const std::vector<PathLossSample>& samples, const PathLossFit& fit) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples)
    out.push_back(s.rsrp_dbm -
                  (fit.p_offset_db + to_db(std::max(model_gain(fit, s.geom), std::numeric_limits<double>::min()))));
  return out;
}

cplx freq_correlation(const std::vector<cplx>& h, int shift) {
  return freq_correlation(std::vector<std::vector<cplx>>{h}, shift);
}

cplx freq_correlation(const std::vector<std::vector<cplx>>& responses, int shift) {
  if (responses.empty() || responses.front().empty()) throw DomainError("freq_correlation: empty response");
  const std::size_t n = responses.front().size();
  if (shift < 0 || static_cast<std::size_t>(shift) >= n) throw DomainError("freq_correlation: shift beyond band");
  const auto k = static_cast<std::size_t>(shift);
  cplx r0{}, rk{};
  for (const auto& h : responses) {
    if (h.size() != n) throw DomainError("freq_correlation: responses differ in length");
    for (std::size_t i = 0; i < n; ++i) r0 += std::norm(h[i]);
    for (std::size_t i = 0; i + k < n; ++i) rk += h[i] * std::conj(h[i + k]);
  }
  r0 /= static_cast<double>(n * responses.size());
  rk /= static_cast<double>((n - k) * responses.size());
  if (r0 == cplx{}) throw DomainError("freq_correlation: zero-energy response");
  return rk / r0;
}

namespace {

double crossing(const std::vector<double>& mag, const CoherenceOptions& o) {
  for (std::size_t k = 1; k < mag.size(); ++k) {
    if (mag[k] <= o.threshold) {
      const double span = mag[k - 1] - mag[k];
      const double frac = span > 0.0 ? (mag[k - 1] - o.threshold) / span : 0.0;
      return std::min(o.clip_hz, o.subcarrier_spacing * (static_cast<double>(k - 1) + frac));
    }
  }
  return o.clip_hz;
}

}  // namespace

double coherence_bandwidth(const std::vector<cplx>& h, const CoherenceOptions& options) {
  return coherence_bandwidth(std::vector<std::vector<cplx>>{h}, options);
}

double coherence_bandwidth(const std::vector<std::vector<cplx>>& responses, const CoherenceOptions& options) {
  if (responses.empty()) throw DomainError("coherence_bandwidth: no responses");
  const std::size_t n = responses.front().size();
  std::vector<double> mag(n);
  for (std::size_t k = 0; k < n; ++k) mag[k] = std::abs(freq_correlation(responses, static_cast<int>(k)));
  return crossing(mag, options);
}

std::vector<double> moving_average(const std::vector<double>& series, std::size_t window) {
  if (series.empty()) throw DomainError("moving_average: empty series");
  if (window < 1) throw DomainError("moving_average: window must be >= 1");
  const std::size_t left = (window - 1) / 2;
  const std::size_t right = window - 1 - left;
  std::vector<double> prefix(series.size() + 1, 0.0);
  for (std::size_t i = 0; i < series.size(); ++i) prefix[i + 1] = prefix[i] + series[i];
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t lo = i >= left ? i - left : 0;
    const std::size_t hi = std::min(series.size() - 1, i + right);
    out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

namespace {

double log_std_normal_cdf(double x) {
  if (x > -30.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  // Mills-ratio asymptote where erfc underflows
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * kPi);
}

double skew_loglik(const std::vector<double>& v, const SkewNormalParams& p) {
  if (!(p.omega > 0.0)) return -HUGE_VAL;
  double acc = 0.0;
  const double c = std::log(2.0) - std::log(p.omega) - 0.5 * std::log(2.0 * kPi);
  for (double x : v) {
    const double z = (x - p.xi) / p.omega;
    acc += c - 0.5 * z * z + log_std_normal_cdf(p.alpha * z);
  }
  return acc;
}

}  // namespace

double gaussian_pdf(double x, const GaussianParams& p) {
  const double z = (x - p.mean) / p.stddev;
  return std::exp(-0.5 * z * z) / (p.stddev * std::sqrt(2.0 * kPi));
}

double skew_normal_pdf(double x, const SkewNormalParams& p) {
  const double z = (x - p.xi) / p.omega;
  return 2.0 / p.omega * std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi) * 0.5 * std::erfc(-p.alpha * z / std::numbers::sqrt2);
}

ShadowFitResult fit_shadowing_distribution(const std::vector<double>& values) {
  if (values.size() < 100) throw DomainError("fit_shadowing_distribution: need at least 100 values");
  const double n = static_cast<double>(values.size());
  const double mu = mean_of(values);
  double m2 = 0.0, m3 = 0.0;
  for (double x : values) {
    m2 += (x - mu) * (x - mu);
    m3 += (x - mu) * (x - mu) * (x - mu);
  }
  m2 /= n;
  m3 /= n;
  if (!(m2 > 0.0)) throw DomainError("fit_shadowing_distribution: zero variance");

  ShadowFitResult res;
  res.gaussian = {mu, std::sqrt(m2)};
  res.gaussian_loglik = -0.5 * n * (std::log(2.0 * kPi * m2) + 1.0);

  // Method-of-moments start; |skewness| is capped below the family's bound.
  const double gamma = std::clamp(m3 / std::pow(m2, 1.5), -0.99, 0.99);
  const double g23 = std::pow(std::abs(gamma), 2.0 / 3.0);
  const double delta = std::copysign(std::sqrt(0.5 * kPi * g23 / (g23 + std::pow(0.5 * (4.0 - kPi), 2.0 / 3.0))), gamma);
  const double b = std::sqrt(2.0 / kPi);
  const double omega0 = std::sqrt(m2 / (1.0 - b * b * delta * delta));
  const double alpha0 = delta / std::sqrt(1.0 - delta * delta);
  const double xi0 = mu - omega0 * b * delta;

  auto objective = [&](const std::vector<double>& v) {
    return -skew_loglik(values, SkewNormalParams{v[0], std::exp(v[1]), v[2]});
  };
  opt::NelderMeadOptions o;
  o.max_evaluations = 6000;
  const double s = std::sqrt(m2);
  auto best = opt::nelder_mead(objective, {xi0, std::log(omega0), alpha0}, {0.2 * s, 0.1, 0.5}, o);
  // the Gaussian member of the family as a second start
  auto alt = opt::nelder_mead(objective, {mu, std::log(s), 0.0}, {0.2 * s, 0.1, 0.5}, o);
  if (alt.value < best.value) best = alt;
  res.skew = {best.x[0], std::exp(best.x[1]), best.x[2]};
  res.skew_loglik = -best.value;
  return res;
}

std::vector<CorrelationBin> spatial_correlation(const std::vector<ShadowSample>& samples, CorrelationAxis axis,
                                                const SpatialCorrelationOptions& options) {
  if (samples.size() < 2) throw DomainError("spatial_correlation: need at least 2 samples");
  if (!(options.bin_width > 0.0)) throw DomainError("spatial_correlation: bin width must be positive");

  struct Acc {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, sd = 0;
    std::size_t n = 0;  // ordered pairs
    void add(double x, double y, double d) {
      sx += x;
      sy += y;
      sxx += x * x;
      syy += y * y;
      sxy += x * y;
      sd += d;
      ++n;
    }
  };
  std::map<long, Acc> bins;
  Acc self;

  auto pair = [&](const ShadowSample& a, const ShadowSample& b, double d) {
    if (d > options.max_distance) return;
    auto& acc = bins[static_cast<long>(std::floor(d / options.bin_width))];
    acc.add(a.value, b.value, d);
    acc.add(b.value, a.value, d);
  };

  std::map<int, std::vector<const ShadowSample*>> tracks;
  for (const auto& s : samples) tracks[s.track].push_back(&s);

  if (options.include_self_pairs)
    for (const auto& s : samples) self.add(s.value, s.value, 0.0);

  if (axis == CorrelationAxis::Horizontal) {
    for (const auto& [id, t] : tracks)
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
          pair(*t[i], *t[j], std::hypot(t[i]->east - t[j]->east, t[i]->north - t[j]->north));
  } else {
    std::map<int, std::map<std::size_t, const ShadowSample*>> indexed;
    for (const auto& [id, t] : tracks)
      for (const auto* s : t) indexed[id][s->index] = s;
    for (auto a = indexed.begin(); a != indexed.end(); ++a)
      for (auto b = std::next(a); b != indexed.end(); ++b)
        for (const auto& [idx, sa] : a->second) {
          const auto hit = b->second.find(idx);
          if (hit != b->second.end()) pair(*sa, *hit->second, std::abs(sa->up - hit->second->up));
        }
  }

  auto finish = [](const Acc& acc) {
    const double n = static_cast<double>(acc.n);
    const double vx = acc.sxx / n - (acc.sx / n) * (acc.sx / n);
    const double vy = acc.syy / n - (acc.sy / n) * (acc.sy / n);
    const double cxy = acc.sxy / n - (acc.sx / n) * (acc.sy / n);
    CorrelationBin b;
    b.distance = acc.sd / n;
    b.correlation = vx > 0.0 && vy > 0.0 ? std::clamp(cxy / std::sqrt(vx * vy), -1.0, 1.0) : 0.0;
    return b;
  };

  std::vector<CorrelationBin> out;
  if (options.include_self_pairs && self.n >= options.min_pairs) {
    auto b = finish(self);
    b.pairs = self.n;
    out.push_back(b);
  }
  for (const auto& [idx, acc] : bins) {
    if (acc.n / 2 < options.min_pairs) continue;
    auto b = finish(acc);
    b.pairs = acc.n / 2;
    out.push_back(b);
  }
  if (out.empty()) throw DataError("spatial_correlation: no distance bin has enough pairs");
  return out;
}

double CorrelationFit::operator()(double d) const {
  if (model == CorrelationModel::Exponential) return std::exp(-b1 * d);
  return a * std::exp(-b1 * d) + (1.0 - a) * std::exp(-b2 * d);
}

CorrelationFit fit_correlation_model(const std::vector<std::pair<double, double>>& curve, CorrelationModel model) {
  const std::size_t need = model == CorrelationModel::BiExponential ? 4 : 2;
  if (curve.size() < need) throw FitError("fit_correlation_model: too few curve points");
  double dmin = HUGE_VAL, dmax = 0.0;
  for (const auto& [d, r] : curve) {
    if (!std::isfinite(d) || !std::isfinite(r) || d < 0.0) throw FitError("fit_correlation_model: invalid curve point");
    if (d > 0.0) dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (!(dmax > 0.0)) throw FitError("fit_correlation_model: curve has no positive distance");

  CorrelationFit fit;
  fit.model = model;
  const double lo = std::log(0.01 / dmax), hi = std::log(20.0 / dmin);
  opt::NelderMeadOptions o;
  o.max_evaluations = 20000;
  o.f_tolerance = 1e-20;
  o.x_tolerance = 1e-12;
  o.restarts = 4;

  if (model == CorrelationModel::Exponential) {
    auto sse = [&](const std::vector<double>& v) {
      const double b = std::exp(v[0]);
      double s = 0.0;
      for (const auto& [d, r] : curve) s += (r - std::exp(-b * d)) * (r - std::exp(-b * d));
      return s;
    };
    std::vector<double> start{lo};
    double best = HUGE_VAL;
    for (int i = 0; i <= 60; ++i) {
      const std::vector<double> v{lo + (hi - lo) * i / 60.0};
      const double s = sse(v);
      if (s < best) {
        best = s;
        start = v;
      }
    }
    const auto r = opt::nelder_mead(sse, start, {0.1}, o);
    fit.a = 1.0;
    fit.b1 = fit.b2 = std::exp(r.x[0]);
    fit.rmse = std::sqrt(r.value / static_cast<double>(curve.size()));
    return fit;
  }

  // For fixed rates the mixing weight is linear least squares, clamped to [0, 1].
  auto weight = [&](double b1, double b2) {
    double uu = 0.0, uv = 0.0;
    for (const auto& [d, r] : curve) {
      const double u = std::exp(-b1 * d) - std::exp(-b2 * d);
      uu += u * u;
      uv += u * (r - std::exp(-b2 * d));
    }
    return uu > 0.0 ? std::clamp(uv / uu, 0.0, 1.0) : 1.0;
  };
  auto sse = [&](const std::vector<double>& v) {
    const double b1 = std::exp(v[0]), b2 = std::exp(v[1]);
    const double a = weight(b1, b2);
    double s = 0.0;
    for (const auto& [d, r] : curve) {
      const double m = a * std::exp(-b1 * d) + (1.0 - a) * std::exp(-b2 * d);
      s += (r - m) * (r - m);
    }
    return s;
  };
  std::vector<std::pair<double, std::vector<double>>> grid;
  const int steps = 30;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j < i; ++j) {
      const std::vector<double> v{lo + (hi - lo) * i / steps, lo + (hi - lo) * j / steps};
      grid.emplace_back(sse(v), v);
    }
  std::stable_sort(grid.begin(), grid.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  opt::MinimizeResult best{{}, HUGE_VAL, 0};
  for (std::size_t s = 0; s < std::min<std::size_t>(4, grid.size()); ++s) {
    auto r = opt::nelder_mead(sse, grid[s].second, {0.2, 0.2}, o);
    if (r.value < best.value) best = r;
  }
  double b1 = std::exp(best.x[0]), b2 = std::exp(best.x[1]);
  double a = weight(b1, b2);
  if (b1 < b2) {
    std::swap(b1, b2);
    a = 1.0 - a;
  }
  fit.a = a;
  fit.b1 = b1;
  fit.b2 = b2;
  fit.rmse = std::sqrt(best.value / static_cast<double>(curve.size()));
  return fit;
}

}  // namespace a2g::prop
