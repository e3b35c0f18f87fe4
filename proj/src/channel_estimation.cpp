#include "a2g/channel_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "a2g/errors.hpp"

namespace a2g::chest {

std::vector<PilotObservation> extract_crs(const ResourceGrid& grid, const CellIdentity& cell, int symbols_per_slot) {
  const auto id = CellIdentity::from_ids(cell.n_id2, cell.n_id1);
  const int n_rb = grid.n_subcarriers() / 12;
  std::vector<PilotObservation> obs;
  for (int sym = 0; sym < grid.n_symbols(); ++sym) {
    const int l = sym % symbols_per_slot;
    if (!lte::is_crs_symbol(l, symbols_per_slot)) continue;
    const int slot = grid.slot_of(sym, symbols_per_slot);
    for (const auto& p : lte::gen_crs(id.pci(), slot, l, n_rb))
      obs.push_back(PilotObservation{p.subcarrier, sym, grid.at(p.subcarrier, sym), p.value});
  }
  return obs;
}

std::vector<PilotEstimate> ls_estimate(const std::vector<PilotObservation>& obs) {
  std::vector<PilotEstimate> out;
  out.reserve(obs.size());
  for (const auto& o : obs) {
    if (o.reference == cplx{}) throw DomainError("ls_estimate: zero reference value");
    out.push_back(PilotEstimate{o.subcarrier, o.symbol, o.received / o.reference});
  }
  return out;
}

std::vector<double> cubic_spline(const std::vector<double>& knots, const std::vector<double>& values,
                                 const std::vector<double>& at) {
  const std::size_t n = knots.size();
  if (n == 0 || values.size() != n) throw DomainError("cubic_spline: knots/values mismatch");
  for (std::size_t i = 1; i < n; ++i)
    if (!(knots[i] > knots[i - 1])) throw DomainError("cubic_spline: knots must increase");

  std::vector<double> out(at.size());
  if (n == 1) {
    std::fill(out.begin(), out.end(), values[0]);
    return out;
  }
  if (n <= 3) {
    // Lagrange form of the unique polynomial through the points.
    for (std::size_t q = 0; q < at.size(); ++q) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double w = values[i];
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) w *= (at[q] - knots[j]) / (knots[i] - knots[j]);
        acc += w;
      }
      out[q] = acc;
    }
    return out;
  }

  // Solve for second derivatives M_i with not-a-knot end conditions (third
  // derivative continuous across the second and penultimate knots).
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = knots[i + 1] - knots[i];
  // Dense-banded system of size n; small n so a straightforward solver is fine.
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  a[0][0] = h[1];
  a[0][1] = -(h[0] + h[1]);
  a[0][2] = h[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a[i][i - 1] = h[i - 1];
    a[i][i] = 2.0 * (h[i - 1] + h[i]);
    a[i][i + 1] = h[i];
    rhs[i] = 6.0 * ((values[i + 1] - values[i]) / h[i] - (values[i] - values[i - 1]) / h[i - 1]);
  }
  a[n - 1][n - 3] = h[n - 2];
  a[n - 1][n - 2] = -(h[n - 3] + h[n - 2]);
  a[n - 1][n - 1] = h[n - 3];

  // Gaussian elimination with partial pivoting.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> m(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * m[k];
    m[i] = s / a[i][i];
  }

  for (std::size_t q = 0; q < at.size(); ++q) {
    const double t = at[q];
    std::size_t i = 0;
    if (t >= knots[n - 1]) {
      i = n - 2;
    } else if (t > knots[0]) {
      i = static_cast<std::size_t>(std::upper_bound(knots.begin(), knots.end(), t) - knots.begin()) - 1;
    }
    const double hi = h[i];
    const double u = knots[i + 1] - t;
    const double v = t - knots[i];
    out[q] = m[i] * u * u * u / (6.0 * hi) + m[i + 1] * v * v * v / (6.0 * hi) +
             (values[i] / hi - m[i] * hi / 6.0) * u + (values[i + 1] / hi - m[i + 1] * hi / 6.0) * v;
  }
  return out;
}

namespace {

std::vector<double> linear_interp(const std::vector<double>& knots, const std::vector<double>& values,
                                  const std::vector<double>& at) {
  std::vector<double> out(at.size());
  const std::size_t n = knots.size();
  for (std::size_t q = 0; q < at.size(); ++q) {
    if (n == 1) {
      out[q] = values[0];
      continue;
    }
    std::size_t i = 0;
    if (at[q] >= knots[n - 1]) {
      i = n - 2;
    } else if (at[q] > knots[0]) {
      i = static_cast<std::size_t>(std::upper_bound(knots.begin(), knots.end(), at[q]) - knots.begin()) - 1;
    }
    const double w = (at[q] - knots[i]) / (knots[i + 1] - knots[i]);
    out[q] = values[i] + w * (values[i + 1] - values[i]);
  }
  return out;
}

}  // namespace

ChannelEstimate interpolate_channel(const std::vector<PilotEstimate>& pilots, int n_subcarriers, int n_symbols) {
  if (pilots.empty()) throw DomainError("interpolate_channel: no pilots");
  ChannelEstimate est{ResourceGrid(n_subcarriers, n_symbols), {}, 0.0, false};
  est.pilot_mask.assign(static_cast<std::size_t>(n_subcarriers) * static_cast<std::size_t>(n_symbols), false);

  std::map<int, std::map<int, cplx>> by_symbol;
  for (const auto& p : pilots) {
    if (p.symbol < 0 || p.symbol >= n_symbols || p.subcarrier < 0 || p.subcarrier >= n_subcarriers)
      throw DomainError("interpolate_channel: pilot outside grid");
    by_symbol[p.symbol][p.subcarrier] = p.h;
  }

  std::vector<double> all_k(static_cast<std::size_t>(n_subcarriers));
  for (int k = 0; k < n_subcarriers; ++k) all_k[static_cast<std::size_t>(k)] = k;

  std::vector<int> pilot_symbols;
  std::vector<std::vector<cplx>> profiles;
  for (const auto& [sym, row] : by_symbol) {
    std::vector<double> knots, re, im;
    for (const auto& [k, h] : row) {
      knots.push_back(k);
      re.push_back(h.real());
      im.push_back(h.imag());
      est.pilot_mask[static_cast<std::size_t>(sym) * static_cast<std::size_t>(n_subcarriers) +
                     static_cast<std::size_t>(k)] = true;
    }
    std::vector<double> pr, pi;
    if (knots.size() >= 4) {
      pr = cubic_spline(knots, re, all_k);
      pi = cubic_spline(knots, im, all_k);
    } else {
      est.linear_fallback = true;
      pr = linear_interp(knots, re, all_k);
      pi = linear_interp(knots, im, all_k);
    }
    std::vector<cplx> prof(static_cast<std::size_t>(n_subcarriers));
    for (std::size_t k = 0; k < prof.size(); ++k) prof[k] = {pr[k], pi[k]};
    // Measured values are kept verbatim at pilot positions.
    for (const auto& [k, h] : row) prof[static_cast<std::size_t>(k)] = h;
    pilot_symbols.push_back(sym);
    profiles.push_back(std::move(prof));
  }

  for (int sym = 0; sym < n_symbols; ++sym) {
    auto col = est.h.column(sym);
    const auto it = std::lower_bound(pilot_symbols.begin(), pilot_symbols.end(), sym);
    if (it != pilot_symbols.end() && *it == sym) {
      const auto& prof = profiles[static_cast<std::size_t>(it - pilot_symbols.begin())];
      std::copy(prof.begin(), prof.end(), col.begin());
    } else if (it == pilot_symbols.begin()) {
      std::copy(profiles.front().begin(), profiles.front().end(), col.begin());
    } else if (it == pilot_symbols.end()) {
      std::copy(profiles.back().begin(), profiles.back().end(), col.begin());
    } else {
      const auto hi = static_cast<std::size_t>(it - pilot_symbols.begin());
      const auto lo = hi - 1;
      const double w = static_cast<double>(sym - pilot_symbols[lo]) / (pilot_symbols[hi] - pilot_symbols[lo]);
      for (std::size_t k = 0; k < col.size(); ++k) col[k] = (1.0 - w) * profiles[lo][k] + w * profiles[hi][k];
    }
  }
  return est;
}

RsrpSample compute_rsrp(const std::vector<PilotObservation>& obs, double calibration_offset_db) {
  if (obs.empty()) throw DomainError("compute_rsrp: no observations");
  double acc = 0.0;
  for (const auto& o : obs) acc += std::norm(o.received);
  RsrpSample s;
  s.rsrp_linear = acc / static_cast<double>(obs.size());
  s.rsrp_dbm = 10.0 * std::log10(s.rsrp_linear) + calibration_offset_db;
  return s;
}

}  // namespace a2g::chest
