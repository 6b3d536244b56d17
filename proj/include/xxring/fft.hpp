#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace xxring::fft {

using Complex = std::complex<double>;

bool is_power_of_two(std::size_t n);

// Complex DFT of a fixed size N >= 1. Power-of-two sizes run an iterative
// radix-2 transform; everything else is reduced to a padded power-of-two
// transform with Bluestein's chirp-z identity, so mixed sizes (40, 100,
// 1000, ...) cost O(N log N) as well. Plans are cheap to build and carry
// their own scratch space; use one plan per thread.
class DftPlan {
 public:
  explicit DftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  // X_k = sum_n x_n exp(-2 pi i n k / N), unnormalized.
  void forward(std::span<const Complex> in, std::span<Complex> out);

  // x_n = (1/N) sum_k X_k exp(+2 pi i n k / N).
  void inverse_scaled(std::span<const Complex> in, std::span<Complex> out);

 private:
  void pow2_forward(std::vector<Complex>& data);

  std::size_t n_ = 0;
  std::size_t m_ = 0;  // power-of-two transform length (== n_ when n_ is 2^k)
  std::vector<std::size_t> bit_reverse_;
  std::vector<Complex> twiddle_;      // exp(-2 pi i j / m_), j < m_/2
  std::vector<Complex> chirp_;        // exp(-i pi n^2 / N), Bluestein only
  std::vector<Complex> kernel_fft_;   // forward FFT of the wrapped chirp kernel
  std::vector<Complex> work_;
  std::vector<Complex> flipped_;
};

}  // namespace xxring::fft
