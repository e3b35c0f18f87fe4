#pragma once

// CRS extraction, least-squares pilot estimates, grid interpolation and RSRP.

#include <optional>
#include <vector>

#include "a2g/lte_waveform.hpp"

namespace a2g::chest {

using lte::CellIdentity;
using lte::ResourceGrid;

struct PilotObservation {
  int subcarrier = 0;
  int symbol = 0;  // grid column
  cplx received;
  cplx reference;
};

struct PilotEstimate {
  int subcarrier = 0;
  int symbol = 0;
  cplx h;
};

struct ChannelEstimate {
  ResourceGrid h;
  std::vector<bool> pilot_mask;  // symbol-major, true where h was measured
  double frame_timestamp = 0.0;
  bool linear_fallback = false;  // some symbol had too few pilots for cubic

  bool is_pilot(int k, int symbol) const {
    return pilot_mask[static_cast<std::size_t>(symbol) * static_cast<std::size_t>(h.n_subcarriers()) +
                      static_cast<std::size_t>(k)];
  }
};

struct RsrpSample {
  double rsrp_dbm = 0.0;
  double rsrp_linear = 0.0;
  double timestamp = 0.0;
  std::optional<std::size_t> trajectory_index;
};

// Pairs every port-0 CRS resource element with its regenerated reference.
std::vector<PilotObservation> extract_crs(const ResourceGrid& grid, const CellIdentity& cell,
                                          int symbols_per_slot = 7);

std::vector<PilotEstimate> ls_estimate(const std::vector<PilotObservation>& obs);

// Cubic (not-a-knot spline) along frequency in each pilot-bearing symbol, then
// linear along time between pilot symbols; symbols outside the first/last
// pilot symbol take the nearest profile.
ChannelEstimate interpolate_channel(const std::vector<PilotEstimate>& pilots, int n_subcarriers, int n_symbols);

RsrpSample compute_rsrp(const std::vector<PilotObservation>& obs, double calibration_offset_db = 0.0);

// Not-a-knot cubic spline through strictly increasing knots, evaluated at
// `at`; outside the knot span the end polynomials are continued. With two or
// three knots it degrades to the interpolating polynomial of that degree.
std::vector<double> cubic_spline(const std::vector<double>& knots, const std::vector<double>& values,
                                 const std::vector<double>& at);

}  // namespace a2g::chest
