#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace twist {

/// In-place 2-D complex DFT of an ny x nx row-major array (FFTW backend).
/// Forward uses exp(-i...), inverse is unnormalized.
class Fft2D {
 public:
  Fft2D(int nx, int ny);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  void forward(std::vector<std::complex<double>>& data) const;
  void inverse(std::vector<std::complex<double>>& data) const;

 private:
  int nx_, ny_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

bool is_power_of_two(int n);
int next_power_of_two(int n);

}  // namespace twist
