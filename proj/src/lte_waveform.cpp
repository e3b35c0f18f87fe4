#include "a2g/lte_waveform.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "a2g/dft.hpp"
#include "a2g/errors.hpp"

namespace a2g::lte {

namespace {

using std::numbers::pi;

// Length-31 m-sequence in +-1 form. `feedback` holds the tap offsets t of the
// recursion x(i+5) = sum x(i+t) mod 2, with x(0..4) = 0 0 0 0 1.
std::array<int, 31> msequence(std::initializer_list<int> feedback) {
  std::array<int, 31> bits{};
  bits[4] = 1;
  for (int i = 0; i + 5 < 31; ++i) {
    int acc = 0;
    for (int t : feedback) acc ^= bits[static_cast<std::size_t>(i + t)];
    bits[static_cast<std::size_t>(i + 5)] = acc;
  }
  std::array<int, 31> out{};
  for (std::size_t i = 0; i < 31; ++i) out[i] = 1 - 2 * bits[i];
  return out;
}

const std::array<int, 31>& s_tilde() {
  static const auto s = msequence({2, 0});
  return s;
}
const std::array<int, 31>& c_tilde() {
  static const auto c = msequence({3, 0});
  return c;
}
const std::array<int, 31>& z_tilde() {
  static const auto z = msequence({4, 2, 1, 0});
  return z;
}

// Length-31 Gold sequence c(n) of the pseudo-random generator, Nc = 1600.
std::vector<std::uint8_t> gold_sequence(std::uint32_t c_init, std::size_t length) {
  constexpr std::size_t kNc = 1600;
  std::uint32_t x1 = 1;
  std::uint32_t x2 = c_init & 0x7fffffffu;
  auto step = [&] {
    const std::uint32_t b1 = ((x1 >> 3) ^ x1) & 1u;
    const std::uint32_t b2 = ((x2 >> 3) ^ (x2 >> 2) ^ (x2 >> 1) ^ x2) & 1u;
    x1 = (x1 >> 1) | (b1 << 30);
    x2 = (x2 >> 1) | (b2 << 30);
  };
  for (std::size_t i = 0; i < kNc; ++i) step();
  std::vector<std::uint8_t> c(length);
  for (std::size_t n = 0; n < length; ++n) {
    c[n] = static_cast<std::uint8_t>((x1 ^ x2) & 1u);
    step();
  }
  return c;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// OfdmParams

void OfdmParams::validate() const {
  require(n_fft > 0, "n_fft must be positive");
  require(n_subcarriers_used > 0 && n_subcarriers_used <= n_fft - 1,
          "n_subcarriers_used must be in (0, n_fft)");
  require(n_subcarriers_used % 12 == 0, "n_subcarriers_used must be whole resource blocks");
  require(symbols_per_slot == static_cast<int>(cp_lengths.size()), "one CP length per symbol");
  require(std::abs(sample_rate - n_fft * subcarrier_spacing) < 1e-6,
          "sample_rate must equal n_fft * subcarrier_spacing");
  const double slot_seconds = slot_length() / sample_rate;
  require(std::abs(slot_seconds - 0.5e-3) < 1e-12, "slot must last 0.5 ms");
  for (int cp : cp_lengths) require(cp > 0 && cp < n_fft, "cp length out of range");
}

int OfdmParams::slot_length() const {
  return std::accumulate(cp_lengths.begin(), cp_lengths.end(), 0) + symbols_per_slot * n_fft;
}

int OfdmParams::symbol_start(int l) const {
  int start = 0;
  for (int i = 0; i < l; ++i) start += symbol_length(i);
  return start;
}

int OfdmParams::fft_bin(int k) const {
  const int half = n_subcarriers_used / 2;
  return k < half ? n_fft - half + k : k - half + 1;
}

int OfdmParams::signed_subcarrier(int k) const {
  const int half = n_subcarriers_used / 2;
  return k < half ? k - half : k - half + 1;
}

// ---------------------------------------------------------------------------
// CellIdentity

CellIdentity CellIdentity::from_ids(int n_id2, int n_id1) {
  require(n_id2 >= 0 && n_id2 <= 2, "n_id2 must be in 0..2");
  require(n_id1 >= 0 && n_id1 <= 167, "n_id1 must be in 0..167");
  return CellIdentity{n_id2, n_id1};
}

CellIdentity CellIdentity::from_pci(int pci) {
  require(pci >= 0 && pci < kNumCellIds, "pci must be in 0..503");
  return CellIdentity{pci % 3, pci / 3};
}

// ---------------------------------------------------------------------------
// Synchronization sequences

int pss_root(int n_id2) {
  require(n_id2 >= 0 && n_id2 <= 2, "n_id2 must be in 0..2");
  static constexpr std::array<int, 3> kRoots{25, 29, 34};
  return kRoots[static_cast<std::size_t>(n_id2)];
}

SyncSequence gen_pss(int n_id2) {
  const int u = pss_root(n_id2);
  SyncSequence seq;
  seq.kind = SyncKind::Pss;
  seq.n_id2 = n_id2;
  seq.samples.resize(kSyncLength);
  for (int n = 0; n < kSyncLength; ++n) {
    // The DC-punctured ZC sequence of length 63 skips element 31.
    const long m = n < 31 ? n : n + 1;
    const long phase = (static_cast<long>(u) * m * (m + 1)) % 126;
    seq.samples[static_cast<std::size_t>(n)] = std::polar(1.0, -pi * static_cast<double>(phase) / 63.0);
  }
  return seq;
}

SyncSequence gen_sss(int n_id1, int n_id2, int subframe) {
  require(n_id1 >= 0 && n_id1 <= 167, "n_id1 must be in 0..167");
  require(n_id2 >= 0 && n_id2 <= 2, "n_id2 must be in 0..2");
  require(subframe == 0 || subframe == 5, "SSS exists only in subframes 0 and 5");

  const int q_prime = n_id1 / 30;
  const int q = (n_id1 + q_prime * (q_prime + 1) / 2) / 30;
  const int m_prime = n_id1 + q * (q + 1) / 2;
  const int m0 = m_prime % 31;
  const int m1 = (m0 + m_prime / 31 + 1) % 31;

  const auto& s = s_tilde();
  const auto& c = c_tilde();
  const auto& z = z_tilde();
  auto at = [](const std::array<int, 31>& seq, int i) { return seq[static_cast<std::size_t>(i % 31)]; };

  SyncSequence seq;
  seq.kind = subframe == 0 ? SyncKind::SssSubframe0 : SyncKind::SssSubframe5;
  seq.n_id1 = n_id1;
  seq.n_id2 = n_id2;
  seq.samples.resize(kSyncLength);
  for (int n = 0; n < 31; ++n) {
    const int s0 = at(s, n + m0);
    const int s1 = at(s, n + m1);
    const int c0 = at(c, n + n_id2);
    const int c1 = at(c, n + n_id2 + 3);
    const int z_m0 = at(z, n + m0 % 8);
    const int z_m1 = at(z, n + m1 % 8);
    const int even = subframe == 0 ? s0 * c0 : s1 * c0;
    const int odd = subframe == 0 ? s1 * c1 * z_m0 : s0 * c1 * z_m1;
    seq.samples[static_cast<std::size_t>(2 * n)] = even;
    seq.samples[static_cast<std::size_t>(2 * n + 1)] = odd;
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Cell-specific reference signals

bool is_crs_symbol(int symbol_in_slot, int symbols_per_slot) {
  return symbol_in_slot == 0 || symbol_in_slot == symbols_per_slot - 3;
}

std::vector<Pilot> gen_crs(int pci, int slot, int symbol, int n_rb) {
  require(pci >= 0 && pci < kNumCellIds, "pci must be in 0..503");
  require(n_rb >= 1 && n_rb <= kMaxResourceBlocks, "n_rb out of range");
  require(is_crs_symbol(symbol), "symbol does not carry port-0 CRS");
  require(slot >= 0, "slot must be nonnegative");
  const int ns = slot % kSlotsPerFrame;

  constexpr std::uint32_t kNormalCp = 1;
  const auto c_init = static_cast<std::uint32_t>(
      (1u << 10) * static_cast<std::uint32_t>(7 * (ns + 1) + symbol + 1) * static_cast<std::uint32_t>(2 * pci + 1) +
      static_cast<std::uint32_t>(2 * pci) + kNormalCp);
  const auto c = gold_sequence(c_init, 4 * kMaxResourceBlocks);

  const int v = symbol == 0 ? 0 : 3;
  const int shift = pci % 6;
  const double a = 1.0 / std::numbers::sqrt2;
  std::vector<Pilot> pilots;
  pilots.reserve(static_cast<std::size_t>(2 * n_rb));
  for (int m = 0; m < 2 * n_rb; ++m) {
    const auto mp = static_cast<std::size_t>(m + kMaxResourceBlocks - n_rb);
    const cplx value{a * (1 - 2 * c[2 * mp]), a * (1 - 2 * c[2 * mp + 1])};
    pilots.push_back(Pilot{6 * m + (v + shift) % 6, symbol, value});
  }
  return pilots;
}

// ---------------------------------------------------------------------------
// ResourceGrid

ResourceGrid::ResourceGrid(int n_subcarriers, int n_symbols, int subframe_index_origin)
    : n_sc_(n_subcarriers), n_sym_(n_symbols), origin_(subframe_index_origin) {
  require(n_subcarriers > 0 && n_symbols >= 0, "invalid grid dimensions");
  data_.assign(static_cast<std::size_t>(n_subcarriers) * static_cast<std::size_t>(n_symbols), cplx{});
}

std::size_t ResourceGrid::index(int k, int symbol) const {
  return static_cast<std::size_t>(symbol) * static_cast<std::size_t>(n_sc_) + static_cast<std::size_t>(k);
}

std::span<cplx> ResourceGrid::column(int symbol) {
  return std::span<cplx>(data_).subspan(index(0, symbol), static_cast<std::size_t>(n_sc_));
}

std::span<const cplx> ResourceGrid::column(int symbol) const {
  return std::span<const cplx>(data_).subspan(index(0, symbol), static_cast<std::size_t>(n_sc_));
}

int ResourceGrid::slot_of(int symbol, int symbols_per_slot) const {
  return (2 * origin_ + symbol / symbols_per_slot) % kSlotsPerFrame;
}

ResourceGrid map_frame(const CellIdentity& cell, const OfdmParams& params, int n_subframes) {
  params.validate();
  require(n_subframes >= 1, "n_subframes must be >= 1");
  const CellIdentity id = CellIdentity::from_ids(cell.n_id2, cell.n_id1);
  ResourceGrid grid(params.n_subcarriers_used, n_subframes * params.symbols_per_subframe());

  const auto pss = gen_pss(id.n_id2);
  const auto sss0 = gen_sss(id.n_id1, id.n_id2, 0);
  const auto sss5 = gen_sss(id.n_id1, id.n_id2, 5);
  const int first = params.sync_first_subcarrier();

  for (int sym = 0; sym < grid.n_symbols(); ++sym) {
    const int l = sym % params.symbols_per_slot;
    const int slot = grid.slot_of(sym, params.symbols_per_slot);
    if (is_crs_symbol(l, params.symbols_per_slot)) {
      for (const auto& p : gen_crs(id.pci(), slot, l, params.n_rb())) grid.at(p.subcarrier, sym) = p.value;
    }
    if (slot == 0 || slot == 10) {
      if (l == params.pss_symbol()) {
        for (int n = 0; n < kSyncLength; ++n) grid.at(first + n, sym) = pss.samples[static_cast<std::size_t>(n)];
      } else if (l == params.sss_symbol()) {
        const auto& sss = slot == 0 ? sss0 : sss5;
        for (int n = 0; n < kSyncLength; ++n) grid.at(first + n, sym) = sss.samples[static_cast<std::size_t>(n)];
      }
    }
  }
  return grid;
}

// ---------------------------------------------------------------------------
// OFDM

std::vector<cplx> symbol_waveform(std::span<const cplx> used, int symbol_in_slot, const OfdmParams& params) {
  require(static_cast<int>(used.size()) == params.n_subcarriers_used, "symbol_waveform: wrong subcarrier count");
  std::vector<cplx> bins(static_cast<std::size_t>(params.n_fft));
  for (int k = 0; k < params.n_subcarriers_used; ++k)
    bins[static_cast<std::size_t>(params.fft_bin(k))] = used[static_cast<std::size_t>(k)];
  Dft idft(static_cast<std::size_t>(params.n_fft), Dft::Direction::Inverse);
  const auto body = idft(bins);
  const int cp = params.cp_lengths[static_cast<std::size_t>(symbol_in_slot)];
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(cp + params.n_fft));
  out.insert(out.end(), body.end() - cp, body.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

IqSegment ofdm_modulate(const ResourceGrid& grid, const OfdmParams& params) {
  params.validate();
  require(grid.n_subcarriers() == params.n_subcarriers_used, "grid does not match numerology");
  const auto n = static_cast<std::size_t>(params.n_fft);

  std::size_t total = 0;
  for (int sym = 0; sym < grid.n_symbols(); ++sym)
    total += static_cast<std::size_t>(params.symbol_length(sym % params.symbols_per_slot));

  IqSegment out;
  out.sample_rate = params.sample_rate;
  out.samples.reserve(total);

  Dft idft(n, Dft::Direction::Inverse);
  std::vector<cplx> bins(n);
  std::vector<cplx> body(n);
  for (int sym = 0; sym < grid.n_symbols(); ++sym) {
    std::fill(bins.begin(), bins.end(), cplx{});
    const auto col = grid.column(sym);
    for (int k = 0; k < params.n_subcarriers_used; ++k)
      bins[static_cast<std::size_t>(params.fft_bin(k))] = col[static_cast<std::size_t>(k)];
    idft.execute(bins, body);
    const auto cp = static_cast<std::size_t>(params.cp_lengths[static_cast<std::size_t>(sym % params.symbols_per_slot)]);
    out.samples.insert(out.samples.end(), body.end() - static_cast<std::ptrdiff_t>(cp), body.end());
    out.samples.insert(out.samples.end(), body.begin(), body.end());
  }
  return out;
}

ResourceGrid ofdm_demodulate(const IqSegment& x, std::size_t timing, const OfdmParams& params, int n_symbols,
                             int subframe_index_origin) {
  params.validate();
  require(n_symbols >= 0, "n_symbols must be nonnegative");
  std::size_t needed = 0;
  for (int sym = 0; sym < n_symbols; ++sym)
    needed += static_cast<std::size_t>(params.symbol_length(sym % params.symbols_per_slot));
  if (timing > x.size() || x.size() - timing < needed)
    throw TruncationError("ofdm_demodulate: need " + std::to_string(needed) + " samples from offset " +
                          std::to_string(timing) + ", segment has " + std::to_string(x.size()));

  const auto n = static_cast<std::size_t>(params.n_fft);
  ResourceGrid grid(params.n_subcarriers_used, n_symbols, subframe_index_origin);
  Dft dft(n, Dft::Direction::Forward);
  std::vector<cplx> bins(n);
  std::size_t pos = timing;
  for (int sym = 0; sym < n_symbols; ++sym) {
    const auto cp = static_cast<std::size_t>(params.cp_lengths[static_cast<std::size_t>(sym % params.symbols_per_slot)]);
    dft.execute(std::span<const cplx>(x.samples).subspan(pos + cp, n), bins);
    auto col = grid.column(sym);
    for (int k = 0; k < params.n_subcarriers_used; ++k)
      col[static_cast<std::size_t>(k)] = bins[static_cast<std::size_t>(params.fft_bin(k))];
    pos += cp + n;
  }
  return grid;
}

}  // namespace a2g::lte

namespace a2g {

double mean_nonzero_power(const std::vector<cplx>& x) {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& v : x) {
    const double p = std::norm(v);
    if (p > 0.0) {
      acc += p;
      ++count;
    }
  }
  return count == 0 ? 0.0 : acc / static_cast<double>(count);
}

}  // namespace a2g
