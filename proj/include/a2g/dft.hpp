#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <fftw3.h>

namespace a2g {

// Unitary DFT of a fixed size backed by FFTW. Plan creation is serialized
// internally; execute() may be called concurrently on distinct Dft objects.
class Dft {
 public:
  enum class Direction { Forward, Inverse };

  Dft(std::size_t n, Direction dir);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;
  Dft(Dft&& other) noexcept;
  Dft& operator=(Dft&& other) noexcept;

  std::size_t size() const { return n_; }

  // out = (1/sqrt(n)) * sum_t in[t] e^{-+j 2 pi k t / n}
  void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  std::vector<std::complex<double>> operator()(std::span<const std::complex<double>> in);

 private:
  void release();

  std::size_t n_ = 0;
  double scale_ = 1.0;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

// Smallest m >= n whose only prime factors are 2, 3 and 5.
std::size_t next_fast_size(std::size_t n);

}  // namespace a2g
