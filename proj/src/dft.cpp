#include "a2g/dft.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace a2g {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Dft::Dft(std::size_t n, Direction dir) : n_(n), scale_(1.0 / std::sqrt(static_cast<double>(n))) {
  if (n == 0) throw std::invalid_argument("Dft: size must be positive");
  std::lock_guard lock(planner_mutex());
  in_ = fftw_alloc_complex(n);
  out_ = fftw_alloc_complex(n);
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_,
                           dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::runtime_error("Dft: FFTW planning failed");
  }
}

Dft::~Dft() { release(); }

Dft::Dft(Dft&& other) noexcept
    : n_(other.n_), scale_(other.scale_), in_(other.in_), out_(other.out_), plan_(other.plan_) {
  other.in_ = other.out_ = nullptr;
  other.plan_ = nullptr;
}

Dft& Dft::operator=(Dft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = other.n_;
    scale_ = other.scale_;
    in_ = other.in_;
    out_ = other.out_;
    plan_ = other.plan_;
    other.in_ = other.out_ = nullptr;
    other.plan_ = nullptr;
  }
  return *this;
}

void Dft::release() {
  if (!plan_) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan_);
  fftw_free(in_);
  fftw_free(out_);
  plan_ = nullptr;
}

void Dft::execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("Dft: size mismatch");
  std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double>*>(in_));
  fftw_execute(plan_);
  const auto* res = reinterpret_cast<const std::complex<double>*>(out_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = res[i] * scale_;
}

std::vector<std::complex<double>> Dft::operator()(std::span<const std::complex<double>> in) {
  std::vector<std::complex<double>> out(n_);
  execute(in, out);
  return out;
}

std::size_t next_fast_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace a2g
