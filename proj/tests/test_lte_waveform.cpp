#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "a2g/dft.hpp"
#include "a2g/errors.hpp"
#include "a2g/impairments.hpp"
#include "a2g/lte_waveform.hpp"
#include "frozen_sequences.hpp"
#include "support.hpp"

using namespace a2g;
using namespace a2g::lte;

TEST_CASE("numerology") {
  OfdmParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.slot_length() == 960);
  CHECK(p.frame_length() == 19200);
  // one slot lasts exactly half a millisecond
  CHECK(static_cast<double>(p.slot_length()) / p.sample_rate == doctest::Approx(0.5e-3).epsilon(1e-15));
  CHECK(p.symbol_start(0) == 0);
  CHECK(p.symbol_start(1) == 138);
  CHECK(p.symbol_start(6) == 823);

  OfdmParams bad = p;
  bad.sample_rate = 2e6;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.n_subcarriers_used = 71;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = p;
  bad.cp_lengths = {10, 9, 9, 9, 9, 9, 10};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("subcarrier mapping skips DC") {
  OfdmParams p;
  std::set<int> bins;
  for (int k = 0; k < p.n_subcarriers_used; ++k) bins.insert(p.fft_bin(k));
  CHECK(bins.size() == 72u);
  CHECK(bins.count(0) == 0u);
  CHECK(p.signed_subcarrier(35) == -1);
  CHECK(p.signed_subcarrier(36) == 1);
  CHECK(p.fft_bin(35) == 127);
  CHECK(p.fft_bin(36) == 1);
}

TEST_CASE("cell identity") {
  CHECK(CellIdentity::from_ids(1, 12).pci() == 37);
  CHECK(CellIdentity::from_pci(503) == CellIdentity{2, 167});
  CHECK_THROWS_AS(CellIdentity::from_pci(504), DomainError);
  CHECK_THROWS_AS(CellIdentity::from_ids(3, 0), DomainError);
  CHECK_THROWS_AS(CellIdentity::from_ids(0, 168), DomainError);
}

TEST_CASE("PSS matches frozen oracle") {
  CHECK(pss_root(0) == 25);
  CHECK(pss_root(1) == 29);
  CHECK(pss_root(2) == 34);
  const auto s = gen_pss(0);
  REQUIRE(s.samples.size() == 62u);
  for (std::size_t n = 0; n < 62; ++n) {
    CHECK(std::abs(s.samples[n] - frozen::kPssRoot25[n]) < 1e-12);
    CHECK(std::abs(s.samples[n]) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gen_pss(3), DomainError);
}

TEST_CASE("PSS roots have low cross-correlation") {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const auto x = gen_pss(a).samples;
      const auto y = gen_pss(b).samples;
      cplx c{};
      for (std::size_t n = 0; n < x.size(); ++n) c += x[n] * std::conj(y[n]);
      if (a == b)
        CHECK(std::abs(c) == doctest::Approx(62.0));
      else
        CHECK(std::abs(c) < 0.4 * 62.0);
    }
}

TEST_CASE("SSS matches frozen oracle") {
  auto check = [](int id1, int id2, int sf, const std::array<int, 62>& ref) {
    const auto s = gen_sss(id1, id2, sf);
    REQUIRE(s.samples.size() == 62u);
    for (std::size_t n = 0; n < 62; ++n) CHECK(s.samples[n] == cplx(ref[n], 0.0));
  };
  check(0, 0, 0, frozen::kSss_0_0_0);
  check(0, 0, 5, frozen::kSss_0_0_5);
  check(12, 1, 0, frozen::kSss_12_1_0);
  check(167, 2, 5, frozen::kSss_167_2_5);
  CHECK_THROWS_AS(gen_sss(0, 0, 3), DomainError);
}

TEST_CASE("SSS subframe 0 and 5 differ for every group") {
  for (int id1 = 0; id1 < 168; ++id1) CHECK(gen_sss(id1, 0, 0).samples != gen_sss(id1, 0, 5).samples);
}

TEST_CASE("CRS matches frozen oracle") {
  const auto pilots = gen_crs(37, 0, 0, 6);
  REQUIRE(pilots.size() == 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(pilots[i].subcarrier == frozen::kCrs37Subcarriers[i]);
    CHECK(std::abs(pilots[i].value - frozen::kCrs37Values[i]) < 1e-12);
  }
}

TEST_CASE("CRS positions follow the cell shift") {
  for (int pci : {0, 1, 5, 6, 37, 503}) {
    for (int l : {0, 4}) {
      const auto pilots = gen_crs(pci, 3, l, 6);
      CHECK(pilots.size() == 12u);
      const int v = l == 0 ? 0 : 3;
      for (std::size_t i = 0; i < pilots.size(); ++i) {
        CHECK(pilots[i].subcarrier == 6 * static_cast<int>(i) + (v + pci % 6) % 6);
        CHECK(std::norm(pilots[i].value) == doctest::Approx(1.0));
      }
    }
  }
  CHECK(is_crs_symbol(0));
  CHECK(is_crs_symbol(4));
  CHECK_FALSE(is_crs_symbol(1));
}

TEST_CASE("frame grid layout") {
  OfdmParams p;
  const auto cell = CellIdentity::from_pci(37);
  const auto g = map_frame(cell, p, 10);
  CHECK(g.n_subcarriers() == 72);
  CHECK(g.n_symbols() == 140);
  const auto pss = gen_pss(1).samples;
  const auto sss0 = gen_sss(12, 1, 0).samples;
  const auto sss5 = gen_sss(12, 1, 5).samples;
  for (int n = 0; n < 62; ++n) {
    CHECK(g.at(5 + n, 6) == pss[static_cast<std::size_t>(n)]);
    CHECK(g.at(5 + n, 76) == pss[static_cast<std::size_t>(n)]);
    CHECK(g.at(5 + n, 5) == sss0[static_cast<std::size_t>(n)]);
    CHECK(g.at(5 + n, 75) == sss5[static_cast<std::size_t>(n)]);
  }
  // 48 CRS per subframe, nothing else on non-sync symbols
  int nonzero = 0;
  for (int sym = 14; sym < 28; ++sym)
    for (int k = 0; k < 72; ++k) nonzero += g.at(k, sym) != cplx{};
  CHECK(nonzero == 48);
  CHECK(g.slot_of(0) == 0);
  CHECK(g.slot_of(139) == 19);
}

TEST_CASE("OFDM modulation places the PSS where expected") {
  OfdmParams p;
  const auto x = testsupport::frames(100, 1, p);
  CHECK(x.size() == 19200u);
  // The PSS symbol body equals the inverse DFT of its subcarrier vector.
  const auto grid = map_frame(CellIdentity::from_pci(100), p, 10);
  std::vector<cplx> bins(128);
  for (int k = 0; k < 72; ++k) bins[static_cast<std::size_t>(p.fft_bin(k))] = grid.at(k, 6);
  Dft inv(128, Dft::Direction::Inverse);
  const auto body = inv(bins);
  const std::size_t start = 823 + 9;
  for (std::size_t n = 0; n < 128; ++n) CHECK(std::abs(x.samples[start + n] - body[n]) < 1e-12);
  // cyclic prefix is a copy of the body's tail
  for (std::size_t n = 0; n < 9; ++n) CHECK(std::abs(x.samples[823 + n] - body[119 + n]) < 1e-12);
}

TEST_CASE("modulate/demodulate round trip on random grids") {
  OfdmParams p;
  impair::GaussianSource g(11);
  for (int trial = 0; trial < 20; ++trial) {
    ResourceGrid grid(72, 84);
    for (auto& v : grid.elements()) v = {g.next(), g.next()};
    const auto x = ofdm_modulate(grid, p);
    CHECK(x.size() == 6u * 1920u);
    const auto back = ofdm_demodulate(x, 0, p, 84);
    std::vector<cplx> a(back.elements().begin(), back.elements().end());
    std::vector<cplx> b(grid.elements().begin(), grid.elements().end());
    CHECK(testsupport::rel_rms(a, b) < 1e-9);
  }
}

TEST_CASE("demodulate rejects truncated input") {
  OfdmParams p;
  const auto x = testsupport::frames(0, 1, p);
  CHECK_THROWS_AS(ofdm_demodulate(x, 100, p, 140), TruncationError);
}

TEST_CASE("Parseval holds for the unitary DFT") {
  impair::GaussianSource g(3);
  std::vector<cplx> v(128);
  for (auto& s : v) s = {g.next(), g.next()};
  Dft fwd(128, Dft::Direction::Forward);
  const auto f = fwd(v);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    e1 += std::norm(v[i]);
    e2 += std::norm(f[i]);
  }
  CHECK(e1 == doctest::Approx(e2).epsilon(1e-12));
  CHECK(next_fast_size(7) == 8u);
  CHECK(next_fast_size(19337) >= 19337u);
}
