#pragma once

// Air-to-ground path-loss models, coherence bandwidth, shadowing statistics
// and shadowing spatial correlation.

#include <cmath>
#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace a2g::prop {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kDefaultCarrierHz = 3.51e9;
inline constexpr double kDefaultTowerHeight = 10.0;

// Elevation-plane gain table, omnidirectional in azimuth.
class AntennaPattern {
 public:
  AntennaPattern() : AntennaPattern(isotropic()) {}
  AntennaPattern(std::vector<double> angle_deg, std::vector<double> gain_dbi);

  static AntennaPattern isotropic();
  // Half-wave dipole mounted vertically, sampled every `step_deg`; nulls are
  // floored at `floor_dbi`.
  static AntennaPattern half_wave_dipole(double step_deg = 1.0, double floor_dbi = -30.0);
  // CSV with header `angle_deg,gain_dbi`.
  static AntennaPattern from_csv(const std::filesystem::path& path);
  void to_csv(const std::filesystem::path& path) const;

  // Linear gain at an elevation angle in radians (dB-linear interpolation).
  // Angles outside the table are clamped and flagged.
  double gain(double theta_rad, bool* clamped = nullptr) const;
  double gain_dbi(double theta_deg, bool* clamped = nullptr) const;

  const std::vector<double>& angles_deg() const { return angle_; }
  const std::vector<double>& gains_dbi() const { return gain_; }

 private:
  std::vector<double> angle_;
  std::vector<double> gain_;
};

struct LinkGeometry {
  double d_3d = 0.0;
  double d_horizontal = 0.0;
  double h_tx = kDefaultTowerHeight;
  double h_rx = 0.0;
  double r1 = 0.0;  // Tx -> ground bounce
  double r2 = 0.0;  // bounce -> Rx
  double theta_l = 0.0;  // LoS elevation, radians
  double theta_r = 0.0;  // ground reflection (grazing) angle, radians
};

LinkGeometry link_geometry(double d_horizontal, double h_tx, double h_rx);

// Ground reflection coefficient: a constant, or the Fresnel coefficient for
// vertical polarization over ground of relative permittivity `permittivity`.
struct Reflection {
  enum class Kind { Constant, Fresnel };
  Kind kind = Kind::Fresnel;
  cplx constant{-1.0, 0.0};
  double permittivity = 15.0;

  static Reflection fixed(cplx g) { return Reflection{Kind::Constant, g, 15.0}; }
  static Reflection fresnel(double eps_r) { return Reflection{Kind::Fresnel, {-1.0, 0.0}, eps_r}; }
  cplx coefficient(double theta_r) const;
};

struct TwoRayModel {
  double wavelength = kSpeedOfLight / kDefaultCarrierHz;
  AntennaPattern tx_pattern;
  AntennaPattern rx_pattern;
  Reflection reflection;
};

// Phase difference between the reflected and direct rays, radians.
double delta_tau(const TwoRayModel& model, const LinkGeometry& geom);
// Linear path gain of the two-ray model.
double eval_two_ray(const TwoRayModel& model, const LinkGeometry& geom);
double eval_free_space(const LinkGeometry& geom, const AntennaPattern& tx, const AntennaPattern& rx,
                       double wavelength);

inline double to_db(double linear) { return 10.0 * std::log10(linear); }

struct PathLossSample {
  LinkGeometry geom;
  double rsrp_dbm = 0.0;
};

enum class PathLossKind { FreeSpace, TwoRayConstant, TwoRayFresnel };

struct PathLossFit {
  PathLossKind kind = PathLossKind::TwoRayFresnel;
  TwoRayModel model;  // reflection holds the fitted parameters
  double p_offset_db = 0.0;
  std::vector<double> residuals;  // measured - fitted, dB
  double rmse_db = 0.0;
  // RMS over the samples of the fitted curve relative to free space, dB.
  double oscillation_db = 0.0;
};

// Least squares in dB of rsrp ~ P_offset + 10 log10(model gain). P_offset is
// solved in closed form; reflection parameters by grid search + Nelder-Mead.
PathLossFit fit_path_loss(const std::vector<PathLossSample>& samples, PathLossKind kind,
                          const TwoRayModel& base = {});

double model_gain(const PathLossFit& fit, const LinkGeometry& geom);

// Shadowing = rsrp - (P_offset + 10 log10 gain).
std::vector<double> extract_shadowing(const std::vector<PathLossSample>& samples, const PathLossFit& fit);

// Normalized frequency correlation at an index shift of `shift` subcarriers.
cplx freq_correlation(const std::vector<cplx>& h, int shift);
// Pooled over several responses: the products of every response enter one
// average, and one R(0) normalizes the result.
cplx freq_correlation(const std::vector<std::vector<cplx>>& responses, int shift);

struct CoherenceOptions {
  double threshold = 0.9;
  double subcarrier_spacing = 15000.0;
  double clip_hz = 1.08e6;
};

// First shift at which |R| falls to the threshold, linearly interpolated
// between bracketing shifts; the clip value if it never does.
double coherence_bandwidth(const std::vector<cplx>& h, const CoherenceOptions& options = {});
// Same, on the pooled correlation of several responses.
double coherence_bandwidth(const std::vector<std::vector<cplx>>& responses, const CoherenceOptions& options = {});

std::vector<double> moving_average(const std::vector<double>& series, std::size_t window);

struct GaussianParams {
  double mean = 0.0;
  double stddev = 1.0;
};

struct SkewNormalParams {
  double xi = 0.0;
  double omega = 1.0;
  double alpha = 0.0;
};

struct ShadowFitResult {
  GaussianParams gaussian;
  SkewNormalParams skew;
  double gaussian_loglik = 0.0;
  double skew_loglik = 0.0;
};

double skew_normal_pdf(double x, const SkewNormalParams& p);
double gaussian_pdf(double x, const GaussianParams& p);
ShadowFitResult fit_shadowing_distribution(const std::vector<double>& values);

struct ShadowSample {
  double east = 0.0;
  double north = 0.0;
  double up = 0.0;
  double value = 0.0;  // shadowing, dB
  int track = 0;       // flight (altitude) the sample belongs to
  std::size_t index = 0;  // position along the track's horizontal trajectory
};

enum class CorrelationAxis { Horizontal, Vertical };

struct CorrelationBin {
  double distance = 0.0;  // mean pair distance in the bin
  double correlation = 0.0;
  std::size_t pairs = 0;
};

struct SpatialCorrelationOptions {
  double bin_width = 10.0;
  double max_distance = 500.0;
  bool include_self_pairs = false;  // adds a zero-distance bin
  std::size_t min_pairs = 2;
};

// Pearson correlation of the paired values within each distance bin; the
// mean and deviation are taken over each side of the bin's pair set.
std::vector<CorrelationBin> spatial_correlation(const std::vector<ShadowSample>& samples, CorrelationAxis axis,
                                                const SpatialCorrelationOptions& options = {});

enum class CorrelationModel { BiExponential, Exponential };

struct CorrelationFit {
  CorrelationModel model = CorrelationModel::BiExponential;
  double a = 1.0;
  double b1 = 0.0;  // the faster decay after canonicalization
  double b2 = 0.0;
  double rmse = 0.0;
  double operator()(double d) const;
};

CorrelationFit fit_correlation_model(const std::vector<std::pair<double, double>>& curve, CorrelationModel model);

}  // namespace a2g::prop
