#pragma once

// LTE downlink signal model: synchronization sequences, cell-specific
// reference signals, resource-grid mapping and CP-OFDM (de)modulation.

#include <optional>
#include <span>
#include <vector>

#include "a2g/iq_segment.hpp"

namespace a2g::lte {

inline constexpr int kSyncLength = 62;
inline constexpr int kNumCellIds = 504;
inline constexpr int kSlotsPerFrame = 20;
inline constexpr int kMaxResourceBlocks = 110;

// CP-OFDM numerology. Defaults are the 1.4 MHz configuration.
struct OfdmParams {
  int n_fft = 128;
  int n_subcarriers_used = 72;
  double subcarrier_spacing = 15000.0;
  std::vector<int> cp_lengths{10, 9, 9, 9, 9, 9, 9};
  double sample_rate = 1.92e6;
  int symbols_per_slot = 7;

  // Throws DomainError when an invariant does not hold.
  void validate() const;

  int n_rb() const { return n_subcarriers_used / 12; }
  int symbols_per_subframe() const { return 2 * symbols_per_slot; }
  int slot_length() const;
  int frame_length() const { return kSlotsPerFrame * slot_length(); }
  int half_frame_length() const { return frame_length() / 2; }
  // Sample offset of the CP start of symbol `l` within its slot.
  int symbol_start(int l) const;
  int symbol_length(int l) const { return cp_lengths[static_cast<std::size_t>(l)] + n_fft; }
  // Sample offset of symbol (slot, l) from the frame start.
  int frame_offset(int slot, int l) const { return slot * slot_length() + symbol_start(l); }

  // Used-subcarrier index k in [0, n_subcarriers_used) -> FFT bin. The DC bin
  // is skipped: the lower half maps to negative frequencies.
  int fft_bin(int k) const;
  // Signed subcarrier number (…, -2, -1, +1, +2, …) of used index k.
  int signed_subcarrier(int k) const;
  double subcarrier_frequency(int k) const { return signed_subcarrier(k) * subcarrier_spacing; }

  int pss_symbol() const { return symbols_per_slot - 1; }
  int sss_symbol() const { return symbols_per_slot - 2; }
  // First used subcarrier carrying PSS/SSS (62 central subcarriers).
  int sync_first_subcarrier() const { return n_subcarriers_used / 2 - kSyncLength / 2; }
};

struct CellIdentity {
  int n_id2 = 0;  // 0..2, from the PSS
  int n_id1 = 0;  // 0..167, from the SSS

  int pci() const { return n_id2 + 3 * n_id1; }
  int crs_shift() const { return pci() % 6; }

  static CellIdentity from_ids(int n_id2, int n_id1);
  static CellIdentity from_pci(int pci);

  friend bool operator==(const CellIdentity&, const CellIdentity&) = default;
};

enum class SyncKind { Pss, SssSubframe0, SssSubframe5 };

struct SyncSequence {
  std::vector<cplx> samples;  // kSyncLength subcarrier values
  SyncKind kind = SyncKind::Pss;
  int n_id2 = 0;
  std::optional<int> n_id1;  // absent for PSS
};

// Zadoff-Chu root for a PSS identity (25, 29, 34).
int pss_root(int n_id2);
SyncSequence gen_pss(int n_id2);
// subframe must be 0 or 5.
SyncSequence gen_sss(int n_id1, int n_id2, int subframe);

struct Pilot {
  int subcarrier = 0;  // used-subcarrier index
  int symbol = 0;      // symbol index within the slot
  cplx value;
};

// Antenna port 0 with normal CP: CRS sits on symbols 0 and symbols_per_slot-3.
bool is_crs_symbol(int symbol_in_slot, int symbols_per_slot = 7);
// Port-0 CRS pilots of one OFDM symbol. `slot` is taken modulo 20.
std::vector<Pilot> gen_crs(int pci, int slot, int symbol, int n_rb);

// Subcarrier x OFDM-symbol matrix, stored symbol-major.
class ResourceGrid {
 public:
  ResourceGrid() = default;
  ResourceGrid(int n_subcarriers, int n_symbols, int subframe_index_origin = 0);

  int n_subcarriers() const { return n_sc_; }
  int n_symbols() const { return n_sym_; }
  int subframe_index_origin() const { return origin_; }

  cplx& at(int k, int symbol) { return data_[index(k, symbol)]; }
  const cplx& at(int k, int symbol) const { return data_[index(k, symbol)]; }
  std::span<cplx> column(int symbol);
  std::span<const cplx> column(int symbol) const;
  std::span<const cplx> elements() const { return data_; }
  std::span<cplx> elements() { return data_; }

  // Slot number (0..19) of a grid column, given symbols per slot.
  int slot_of(int symbol, int symbols_per_slot = 7) const;

 private:
  std::size_t index(int k, int symbol) const;

  int n_sc_ = 0;
  int n_sym_ = 0;
  int origin_ = 0;
  std::vector<cplx> data_;
};

// PSS/SSS in subframes 0 and 5, port-0 CRS everywhere, all other REs zero.
ResourceGrid map_frame(const CellIdentity& cell, const OfdmParams& params, int n_subframes);

// Grid column 0 must be the first symbol of a slot.
IqSegment ofdm_modulate(const ResourceGrid& grid, const OfdmParams& params);
// `timing` is the first CP sample of a slot; demodulates n_symbols symbols.
ResourceGrid ofdm_demodulate(const IqSegment& x, std::size_t timing, const OfdmParams& params,
                             int n_symbols, int subframe_index_origin = 0);

// Time-domain waveform (CP included) of one symbol carrying `used` on the
// used subcarriers.
std::vector<cplx> symbol_waveform(std::span<const cplx> used, int symbol_in_slot,
                                  const OfdmParams& params);

}  // namespace a2g::lte
