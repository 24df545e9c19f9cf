#include "twist/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "twist/errors.hpp"

namespace twist {

namespace {

// The FFTW planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::vector<std::complex<double>>& v) {
  return reinterpret_cast<fftw_complex*>(v.data());
}

}  // namespace

struct Fft2D::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

Fft2D::Fft2D(int nx, int ny) : nx_(nx), ny_(ny), plans_(std::make_unique<Plans>()) {
  if (nx < 1 || ny < 1) throw DomainError("FFT size must be positive");
  std::vector<std::complex<double>> scratch(static_cast<size_t>(nx) * ny);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->fwd = fftw_plan_dft_2d(ny, nx, as_fftw(scratch), as_fftw(scratch), FFTW_FORWARD, flags);
  plans_->inv = fftw_plan_dft_2d(ny, nx, as_fftw(scratch), as_fftw(scratch), FFTW_BACKWARD, flags);
}

Fft2D::~Fft2D() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->fwd);
  fftw_destroy_plan(plans_->inv);
}

void Fft2D::forward(std::vector<std::complex<double>>& data) const {
  if (data.size() != static_cast<size_t>(nx_) * ny_) throw DomainError("FFT buffer size mismatch");
  fftw_execute_dft(plans_->fwd, as_fftw(data), as_fftw(data));
}

void Fft2D::inverse(std::vector<std::complex<double>>& data) const {
  if (data.size() != static_cast<size_t>(nx_) * ny_) throw DomainError("FFT buffer size mismatch");
  fftw_execute_dft(plans_->inv, as_fftw(data), as_fftw(data));
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace twist
